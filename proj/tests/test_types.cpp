// Copyright 2026 The wfbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "wfbench/types.hpp"

using namespace wfbench;

TEST_CASE("make_grid shape checks") {
  const auto g = make_grid(1, 1, {0.5});
  CHECK(g.rows() == 1);
  CHECK(g(0, 0) == 0.5);
  const auto b = make_grid(2, 2, {0, 1, 1, 0});
  CHECK(b(0, 1) == 1.0);
  CHECK(b(1, 1) == 0.0);
  CHECK_THROWS_AS(make_grid(2, 2, {0, 1, 1}), Error);
  CHECK_THROWS_AS(make_grid(0, 2, {}), Error);
  CHECK_THROWS_AS(make_grid(1, 2, {0.2, 1.2}), Error);
  CHECK_THROWS_AS(make_grid(1, 2, {0.2, std::nan("")}), Error);
}

TEST_CASE("binarize uses >= threshold") {
  const auto g = make_grid(1, 3, {0.2, 0.58, 0.9});
  const auto b = binarize(g, 0.58);
  CHECK_FALSE(b(0, 0));
  CHECK(b(0, 1));
  CHECK(b(0, 2));
  CHECK(binarize(g, 0.0).material_count() == 3);
  CHECK(binarize(g, 1.0).material_count() == 0);
  const auto one = make_grid(1, 2, {1.0, 0.9});
  CHECK(binarize(one, 1.0).material_count() == 1);
}

TEST_CASE("binarize is monotone in the threshold") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> cells(30);
    for (auto& c : cells) c = u(gen);
    const auto g = make_grid(5, 6, cells);
    double lo = u(gen), hi = u(gen);
    if (lo > hi) std::swap(lo, hi);
    const auto a = binarize(g, lo), b = binarize(g, hi);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 6; ++c) CHECK((!b(r, c) || a(r, c)));
  }
}

TEST_CASE("mean_density") {
  CHECK(mean_density(make_grid(2, 2, {0, 1, 1, 0})) == 0.5);
  CHECK(mean_density(make_grid(2, 2, {0.35, 0.35, 0.35, 0.35})) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(mean_density(make_grid(2, 2, {0.1, 0.2, 0.3, 0.4})) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("mean_density is permutation invariant up to rounding") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cells(64);
  for (auto& c : cells) c = u(gen);
  const double m = mean_density(make_grid(8, 8, cells));
  std::shuffle(cells.begin(), cells.end(), gen);
  CHECK(mean_density(make_grid(8, 8, cells)) == doctest::Approx(m).epsilon(1e-14));
}

TEST_CASE("params validation") {
  CHECK_NOTHROW(DesignParams{0.4, 0.65, 4.0, 1}.validate());
  CHECK_THROWS_AS((DesignParams{0.0, 0.5, 2.0, 1}.validate()), Error);
  CHECK_THROWS_AS((DesignParams{0.4, 1.5, 2.0, 1}.validate()), Error);
  CHECK_THROWS_AS((DesignParams{0.4, 0.5, 0.0, 1}.validate()), Error);
  CHECK_NOTHROW((ExportParams{0.58, true, 2.47, 17.9}.validate()));
  CHECK_THROWS_AS((ExportParams{1.5, true, 2.47, 17.9}.validate()), Error);
  CHECK_THROWS_AS((ExportParams{0.5, true, -1.0, 17.9}.validate()), Error);
}

TEST_CASE("tool names round-trip") {
  CHECK(all_tools().size() == 11);
  for (Tool t : all_tools()) CHECK(parse_tool(tool_name(t)) == t);
  CHECK(tool_name(Tool::kConvertDesignToStl) == "convert_design_to_stl");
  CHECK_THROWS_AS(parse_tool("print_part"), Error);
}

namespace {
Trace small_trace() {
  Trace t;
  t.artifacts.emplace("design_0", make_grid(1, 2, {0.25, 0.75}));
  t.artifacts.emplace("mesh_0", MeshRef{"design_0", 12});
  t.artifacts.emplace("p", ParamMap{{"volfrac", 0.4}});
  t.calls.push_back({0, Tool::kCreateProblem, Json{{"problem_id", "beams2d"}}, true, Json()});
  t.calls.push_back({1, Tool::kOptimizeDesign, Json{{"volfrac", 0.4}}, true,
                     Json{{"design", "design_0"}}});
  t.calls.push_back({2, Tool::kConvertDesignToStl, Json{{"design", "design_0"}}, false,
                     Json{{"mesh", "mesh_0"}}});
  return t;
}
}  // namespace

TEST_CASE("trace JSONL round-trip") {
  const Trace t = small_trace();
  CHECK_NOTHROW(t.validate());
  const Trace back = trace_from_jsonl(trace_to_jsonl(t), artifacts_to_json(t));
  CHECK(trace_to_jsonl(back) == trace_to_jsonl(t));
  CHECK(artifacts_to_json(back) == artifacts_to_json(t));
  REQUIRE(back.grid("design_0") != nullptr);
  CHECK(*back.grid("design_0") == make_grid(1, 2, {0.25, 0.75}));
  CHECK(back.grid("mesh_0") == nullptr);
  CHECK_FALSE(back.calls[2].ok);
}

TEST_CASE("trace validation errors") {
  Trace t = small_trace();
  t.calls[1].index = 0;
  CHECK_THROWS_AS(t.validate(), Error);
  Trace u = small_trace();
  u.calls[1].result = Json{{"design", "design_9"}};
  CHECK_THROWS_AS(u.validate(), Error);
  Trace v = small_trace();
  v.artifacts["mesh_1"] = MeshRef{"nowhere", 3};
  CHECK_THROWS_AS(v.validate(), Error);
}

TEST_CASE("trace parse errors name the line") {
  const std::string jsonl =
      "{\"index\":0,\"tool\":\"create_problem\",\"args\":{},\"ok\":true}\n"
      "{\"index\":1,\"tool\":\"optimize_design\",\n";
  try {
    trace_from_jsonl(jsonl, Json::object());
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(
      trace_from_jsonl("{\"index\":0,\"tool\":\"fly\",\"ok\":true}\n", Json::object()),
      doctest::Contains("line 1"), Error);
}

TEST_CASE("artifacts path") {
  CHECK(artifacts_path_for("runs/a.jsonl") == "runs/a.artifacts.json");
  CHECK(artifacts_path_for("trace") == "trace.artifacts.json");
}

TEST_CASE("format_number keeps a decimal") {
  CHECK(format_number(4.0) == "4.0");
  CHECK(format_number(0.58) == "0.58");
  CHECK(format_number(254.8) == "254.8");
  CHECK(format_number(17.9) == "17.9");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
}

TEST_CASE("json round-trips of params") {
  const DesignParams d{0.4, 0.65, 4.0, 7};
  CHECK(design_params_from_json(to_json(d)) == d);
  const ExportParams e{0.58, true, 2.47, 17.9};
  CHECK(export_params_from_json(to_json(e)) == e);
  const auto g = make_grid(2, 2, {0, 0.5, 0.25, 1});
  CHECK(grid_from_json(to_json(g)) == g);
}
