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

#include <cmath>
#include <random>

#include "reference_rows.hpp"
#include "wfbench/oracles.hpp"
#include "wfbench/scoring.hpp"

using namespace wfbench;

namespace {
BinaryGrid bits(int rows, int cols, std::vector<bool> cells) {
  return BinaryGrid(rows, cols, cells);
}
}  // namespace

TEST_CASE("iou") {
  const auto a = bits(2, 2, {true, true, false, false});
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, bits(2, 2, {false, false, true, true})) == 0.0);
  CHECK(iou(bits(1, 2, {true, false}), bits(1, 2, {true, true})) == 0.5);
  CHECK(iou(bits(1, 2, {false, false}), bits(1, 2, {false, false})) == 1.0);
  CHECK_THROWS_AS(iou(a, bits(1, 2, {true, true})), Error);
}

TEST_CASE("pixel accuracy") {
  const auto a = bits(2, 2, {true, true, false, false});
  CHECK(pixel_accuracy(a, a) == 1.0);
  CHECK(pixel_accuracy(a, bits(2, 2, {false, false, true, true})) == 0.0);
  CHECK(pixel_accuracy(a, bits(2, 2, {true, true, false, true})) == 0.75);
}

TEST_CASE("iou and pixel accuracy are symmetric and bounded") {
  std::mt19937_64 gen(31);
  std::bernoulli_distribution b(0.4);
  for (int t = 0; t < 100; ++t) {
    std::vector<bool> x(20), y(20);
    for (std::size_t i = 0; i < 20; ++i) x[i] = b(gen), y[i] = b(gen);
    const auto gx = bits(4, 5, x), gy = bits(4, 5, y);
    CHECK(iou(gx, gy) == iou(gy, gx));
    CHECK(pixel_accuracy(gx, gy) == pixel_accuracy(gy, gx));
    CHECK(iou(gx, gy) >= 0.0);
    CHECK(iou(gx, gy) <= pixel_accuracy(gx, gy) + 1.0);
  }
}

TEST_CASE("constraint and objective scores") {
  CHECK(constraint_score(0.4, 0.4, 0.05) == 1.0);
  CHECK(constraint_score(0.45, 0.40, 0.05) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(constraint_score(0.30, 0.40, 0.05) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(objective_score(200.0, 200.0) == 1.0);
  CHECK(objective_score(220.0, 200.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(objective_score(160.0, 200.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  double prev = 2.0;
  for (double d = 0.0; d < 0.5; d += 0.01) {
    const double s = constraint_score(0.4 + d, 0.4, 0.05);
    CHECK(s > 0.0);
    CHECK(s <= 1.0);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("design quality and composite") {
  CHECK(design_quality(1, 1, 1, 1, 1, 1) == 1.0);
  CHECK(design_quality(0, 0, 0, 0, 0, 0) == 0.0);
  // 0.124 + 0.1387 + 0.078 + 0.12 + 0.0804, reported as 0.54.
  const double dq = design_quality(0.40, 0.73, 0.52, 1.00, 0.67, 0.00);
  CHECK(dq == doctest::Approx(0.5411).epsilon(1e-12));
  CHECK(std::abs(dq - 0.54) < 0.005);
  CHECK(combined_overall(0.54, 0.72, 1.0) == doctest::Approx(0.645).epsilon(1e-12));
  CHECK(combined_overall(0.54, 0.98, 0.93) == doctest::Approx(0.6865).epsilon(1e-12));
  CHECK(combined_overall(0.0, 1.0, 1.0, true) == 1.0);
  CHECK(combined_overall(0.3, 0.5, 1.0, true) == 0.65 + 0.1 + 0.15);
}

TEST_CASE("weight closure") {
  const ScoringConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.design.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cfg.workflow.sum() == doctest::Approx(1.0).epsilon(1e-15));
  for (const auto& [id, w] : cfg.rag) CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-15));
  ScoringConfig bad;
  bad.workflow.tool = 0.3;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("scoring config JSON overrides") {
  const auto cfg = scoring_config_from_json(
      Json{{"workflow", {{"design", 0.5}, {"tool", 0.3}, {"completion", 0.2}}}});
  CHECK(cfg.workflow.tool == 0.3);
  CHECK(cfg.design.iou == 0.31);
  CHECK_THROWS_AS(scoring_config_from_json(Json{{"workflow", {{"design", 0.9}}}}), Error);
  const auto back = scoring_config_from_json(to_json(ScoringConfig{}));
  CHECK(to_json(back) == to_json(ScoringConfig{}));
}

TEST_CASE("reference composites reconcile") {
  for (const auto& row : kReferenceRows) {
    CAPTURE(row.model);
    CAPTURE(row.style);
    const double co = combined_overall(row.dq, row.tool_eff, row.tc);
    // Natural rows mix abstained runs; their DQ column is not the effective DQ.
    if (std::string(row.style) == "Natural") continue;
    CHECK(std::abs(co - row.co) <= 0.01 + 1e-12);
  }
}

TEST_CASE("extra calls lower the composite with DQ fixed") {
  double prev = 2.0;
  for (int extra = 0; extra < 6; ++extra) {
    const double te = 4.0 / (4.0 + extra);
    const double co = combined_overall(0.7, te, 1.0);
    CHECK(co < prev);
    prev = co;
  }
}

TEST_CASE("retrieval scoring") {
  RagOutcome p0{RagPromptId::kP0, {{RagParam::kVolfrac, 0.35}}, true};
  CHECK(rag_score(p0) == 1.0);
  p0.rag_called = false;
  CHECK(rag_score(p0) == 0.0);

  RagOutcome p3{RagPromptId::kP3,
                {{RagParam::kVolfrac, 0.70}, {RagParam::kForcedist, 0.30}, {RagParam::kRmin, 6.4}},
                true};
  CHECK(rag_score(p3) == 1.0);
  p3.extracted[RagParam::kRmin] = 6.5;
  CHECK(rag_score(p3) == 1.0);
  p3.extracted[RagParam::kRmin] = 6.51;
  CHECK(rag_score(p3) == doctest::Approx(0.7).epsilon(1e-12));
  const auto detail = rag_score_detail(p3);
  CHECK(detail.accuracy.at(RagParam::kRmin) == 0);
  CHECK(detail.effective.at(RagParam::kVolfrac) == 1);

  RagOutcome wrong{RagPromptId::kP1, {{RagParam::kVolfrac, 0.5}, {RagParam::kForcedist, 0.3}},
                   true};
  CHECK(rag_score(wrong) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rag_outcome_from_json(to_json(wrong)).extracted == wrong.extracted);
  CHECK_THROWS_AS(rag_outcome_from_json(Json{{"prompt_id", "P0"},
                                             {"rag_called", true},
                                             {"extracted", {{"rmin", 3.0}}}}),
                  Error);
}

TEST_CASE("retrieval gating ignores extracted values") {
  std::mt19937_64 gen(37);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (auto id : {RagPromptId::kP0, RagPromptId::kP1, RagPromptId::kP2, RagPromptId::kP3}) {
    for (int t = 0; t < 20; ++t) {
      RagOutcome o{id, {}, false};
      for (const auto& [p, v] : rag_target(id).values) o.extracted[p] = t == 0 ? v : u(gen);
      CHECK(rag_score(o) == 0.0);
    }
  }
}

TEST_CASE("HPC scoring examples") {
  HpcRunRecord all;
  all.steps_completed = {HpcStep::kGenerate, HpcStep::kSubmit, HpcStep::kMonitor,
                         HpcStep::kEvaluate};
  all.config_matches = true;
  all.config_step_called = true;
  all.eval_step_called = true;
  all.metrics_extracted = 6;
  CHECK(hpc_score(all) == 1.0);
  all.metrics_extracted = 3;
  CHECK(hpc_score(all) == doctest::Approx(0.925).epsilon(1e-12));

  HpcRunRecord no_eval = all;
  no_eval.steps_completed.erase(HpcStep::kEvaluate);
  no_eval.eval_step_called = false;
  no_eval.metrics_extracted = 0;
  CHECK(hpc_score(no_eval) == doctest::Approx(0.7875).epsilon(1e-12));
  CHECK(hpc_record_from_json(to_json(no_eval)).steps_completed == no_eval.steps_completed);

  HpcRunRecord bad = all;
  bad.metrics_extracted = 7;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("effective HPC weights always close") {
  for (int flags = 0; flags < 4; ++flags) {
    HpcRunRecord r;
    r.config_step_called = flags & 1;
    r.eval_step_called = flags & 2;
    const auto w = effective_hpc_weights(r);
    CHECK(w.step + w.config + w.eval == doctest::Approx(1.0).epsilon(1e-15));
    CHECK((w.config == 0.0) == !r.config_step_called);
    CHECK((w.eval == 0.0) == !r.eval_step_called);
  }
}

TEST_CASE("HPC dropper schedules") {
  int explicit_eval = 0, natural_eval = 0, natural_submit = 0, natural_monitor = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    const auto e = run_hpc_oracle(OracleKind::kHpcEvalDropper,
                                  HpcPrompt{HpcPromptStyle::kExplicit, seed});
    const auto n = run_hpc_oracle(OracleKind::kHpcEvalDropper,
                                  HpcPrompt{HpcPromptStyle::kNatural, seed});
    explicit_eval += e.steps_completed.contains(HpcStep::kEvaluate);
    natural_eval += n.steps_completed.contains(HpcStep::kEvaluate);
    natural_submit += n.steps_completed.contains(HpcStep::kSubmit);
    natural_monitor += n.steps_completed.contains(HpcStep::kMonitor);
    CHECK_NOTHROW(e.validate());
    CHECK(hpc_score(run_hpc_oracle(OracleKind::kHpcPerfect,
                                   HpcPrompt{HpcPromptStyle::kNatural, seed})) == 1.0);
  }
  CHECK(explicit_eval == 7);
  CHECK(natural_eval == 5);
  CHECK(natural_submit == 9);
  CHECK(natural_monitor == 8);
}

TEST_CASE("score_run on oracle traces") {
  const SyntheticBackend backend;
  for (Style s : all_styles()) {
    const auto in = sample_instance(s, ProblemId::kBeams2d, 42, 0);
    const Trace t = run_oracle(OracleKind::kPerfect, in, backend);
    const auto v = validate_trace(in, t);
    const auto r = score_run(in, t, v, backend);
    if (s == Style::kNatural) {
      CHECK(r.abstained);
      CHECK(r.design_quality == 1.0);
      CHECK(r.combined_overall == 1.0);
      continue;
    }
    CHECK(r.iou == 1.0);
    CHECK(r.pixel_accuracy == 1.0);
    CHECK(r.objective_score == 1.0);
    CHECK(r.connectivity == 1.0);
    CHECK(r.combined_overall == doctest::Approx(0.65 * r.design_quality + 0.35).epsilon(1e-12));
    if (s == Style::kFull) CHECK(r.watertight == 0.0);
  }
}
