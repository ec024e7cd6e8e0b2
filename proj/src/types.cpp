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

#include "wfbench/types.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wfbench {

namespace {

void check_shape(int rows, int cols, std::size_t n) {
  if (rows < 1 || cols < 1) {
    throw Error("grid dimensions must be positive");
  }
  if (n != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw Error("grid has " + std::to_string(n) + " cells, expected " +
                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void check_cells(const RowMajorArray<double>& cells) {
  if (cells.rows() < 1 || cells.cols() < 1) {
    throw Error("grid dimensions must be positive");
  }
  if (!cells.isFinite().all()) throw Error("grid contains a non-finite value");
  if ((cells < 0.0).any() || (cells > 1.0).any()) {
    throw Error("grid density outside [0,1]");
  }
}

const std::array<std::string_view, 11> kToolNames = {
    "create_problem",
    "optimize_design",
    "simulate_design",
    "render_design",
    "convert_design_to_stl",
    "ask_human_for_clarification",
    "search_documents",
    "generate_training_command",
    "submit_job",
    "monitor_job",
    "evaluate_model",
};

bool is_reference_key(const std::string& key) {
  return key == "design" || key == "mesh";
}

void check_refs(const Json& obj, const Trace& trace, int index) {
  if (!obj.is_object()) return;
  for (const auto& [key, value] : obj.items()) {
    if (is_reference_key(key) && value.is_string() &&
        !trace.artifacts.contains(value.get<std::string>())) {
      throw Error("call " + std::to_string(index) +
                  " references missing artifact '" +
                  value.get<std::string>() + "'");
    }
  }
}

}  // namespace

DesignGrid::DesignGrid(int rows, int cols, std::vector<double> cells) {
  check_shape(rows, cols, cells.size());
  cells_ = Eigen::Map<const RowMajorArray<double>>(cells.data(), rows, cols);
  check_cells(cells_);
}

DesignGrid::DesignGrid(RowMajorArray<double> cells) : cells_(std::move(cells)) {
  check_cells(cells_);
}

std::vector<double> DesignGrid::to_vector() const {
  return {cells_.data(), cells_.data() + cells_.size()};
}

bool DesignGrid::operator==(const DesignGrid& other) const {
  return rows() == other.rows() && cols() == other.cols() &&
         (cells_ == other.cells_).all();
}

DesignGrid make_grid(int rows, int cols, std::vector<double> cells) {
  return DesignGrid(rows, cols, std::move(cells));
}

BinaryGrid::BinaryGrid(int rows, int cols, const std::vector<bool>& cells) {
  check_shape(rows, cols, cells.size());
  cells_.resize(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      cells_(r, c) = cells[static_cast<std::size_t>(r) * cols + c];
    }
  }
}

bool BinaryGrid::operator==(const BinaryGrid& other) const {
  return rows() == other.rows() && cols() == other.cols() &&
         (cells_ == other.cells_).all();
}

BinaryGrid binarize(const DesignGrid& grid, double threshold) {
  if (!std::isfinite(threshold) || threshold < 0.0 || threshold > 1.0) {
    throw Error("binarization threshold outside [0,1]");
  }
  return BinaryGrid(RowMajorArray<bool>(grid.array() >= threshold));
}

double mean_density(const DesignGrid& grid) {
  // Fixed-order summation keeps the result independent of Eigen's
  // vectorization path.
  const double* p = grid.array().data();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) sum += p[i];
  return sum / static_cast<double>(grid.size());
}

void DesignParams::validate() const {
  if (!std::isfinite(volfrac) || volfrac <= 0.0 || volfrac >= 1.0) {
    throw Error("volfrac must lie strictly inside (0,1)");
  }
  if (!std::isfinite(forcedist) || forcedist < 0.0 || forcedist > 1.0) {
    throw Error("forcedist must lie in [0,1]");
  }
  if (!std::isfinite(rmin) || rmin <= 0.0) throw Error("rmin must be > 0");
}

void ExportParams::validate() const {
  if (!std::isfinite(threshold) || threshold < 0.0 || threshold > 1.0) {
    throw Error("export threshold must lie in [0,1]");
  }
  if (!std::isfinite(scale_xy) || scale_xy <= 0.0) {
    throw Error("scale_xy must be > 0");
  }
  if (!std::isfinite(scale_z) || scale_z <= 0.0) {
    throw Error("scale_z must be > 0");
  }
}

std::string_view tool_name(Tool tool) {
  return kToolNames[static_cast<std::size_t>(tool)];
}

Tool parse_tool(std::string_view name) {
  for (std::size_t i = 0; i < kToolNames.size(); ++i) {
    if (kToolNames[i] == name) return static_cast<Tool>(i);
  }
  throw Error("unknown tool '" + std::string(name) + "'");
}

const std::vector<Tool>& all_tools() {
  static const std::vector<Tool> tools = [] {
    std::vector<Tool> t;
    for (std::size_t i = 0; i < kToolNames.size(); ++i) {
      t.push_back(static_cast<Tool>(i));
    }
    return t;
  }();
  return tools;
}

void Trace::validate() const {
  for (std::size_t i = 0; i < calls.size(); ++i) {
    if (i > 0 && calls[i].index <= calls[i - 1].index) {
      throw Error("trace indices must be strictly increasing (call " +
                  std::to_string(calls[i].index) + ")");
    }
    check_refs(calls[i].args, *this, calls[i].index);
    check_refs(calls[i].result, *this, calls[i].index);
  }
  for (const auto& [id, artifact] : artifacts) {
    if (const auto* mesh = std::get_if<MeshRef>(&artifact)) {
      if (!artifacts.contains(mesh->design_id)) {
        throw Error("mesh '" + id + "' references missing design '" +
                    mesh->design_id + "'");
      }
    }
  }
}

const DesignGrid* Trace::grid(const std::string& id) const {
  auto it = artifacts.find(id);
  if (it == artifacts.end()) return nullptr;
  return std::get_if<DesignGrid>(&it->second);
}

Json to_json(const DesignGrid& grid) {
  return Json{{"rows", grid.rows()},
              {"cols", grid.cols()},
              {"cells", grid.to_vector()}};
}

DesignGrid grid_from_json(const Json& j) {
  try {
    return DesignGrid(j.at("rows").get<int>(), j.at("cols").get<int>(),
                      j.at("cells").get<std::vector<double>>());
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed grid JSON: ") + e.what());
  }
}

Json to_json(const DesignParams& p) {
  return Json{{"volfrac", p.volfrac},
              {"forcedist", p.forcedist},
              {"rmin", p.rmin},
              {"seed", p.seed}};
}

DesignParams design_params_from_json(const Json& j) {
  DesignParams p;
  p.volfrac = j.at("volfrac").get<double>();
  p.forcedist = j.at("forcedist").get<double>();
  p.rmin = j.at("rmin").get<double>();
  p.seed = j.value("seed", std::uint64_t{0});
  p.validate();
  return p;
}

Json to_json(const ExportParams& p) {
  return Json{{"threshold", p.threshold},
              {"mirror_y", p.mirror_y},
              {"scale_xy", p.scale_xy},
              {"scale_z", p.scale_z}};
}

ExportParams export_params_from_json(const Json& j) {
  ExportParams p;
  p.threshold = j.at("threshold").get<double>();
  p.mirror_y = j.at("mirror_y").get<bool>();
  p.scale_xy = j.at("scale_xy").get<double>();
  p.scale_z = j.at("scale_z").get<double>();
  p.validate();
  return p;
}

Json to_json(const ToolCall& call) {
  return Json{{"index", call.index},
              {"tool", std::string(tool_name(call.tool))},
              {"args", call.args},
              {"ok", call.ok},
              {"result", call.result}};
}

ToolCall tool_call_from_json(const Json& j) {
  if (!j.is_object()) throw Error("tool call must be a JSON object");
  ToolCall call;
  call.index = j.at("index").get<int>();
  call.tool = parse_tool(j.at("tool").get<std::string>());
  call.args = j.value("args", Json::object());
  call.ok = j.at("ok").get<bool>();
  call.result = j.contains("result") ? j.at("result") : Json();
  return call;
}

Json to_json(const Artifact& artifact) {
  return std::visit(
      [](const auto& a) -> Json {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, DesignGrid>) {
          Json j{{"kind", "grid"}};
          j.update(to_json(a));
          return j;
        } else if constexpr (std::is_same_v<T, MeshRef>) {
          return Json{{"kind", "mesh"},
                      {"design", a.design_id},
                      {"triangles", a.triangles}};
        } else {
          Json values = Json::object();
          for (const auto& [k, v] : a) values[k] = v;
          return Json{{"kind", "params"}, {"values", values}};
        }
      },
      artifact);
}

Artifact artifact_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "grid") return grid_from_json(j);
  if (kind == "mesh") {
    return MeshRef{j.at("design").get<std::string>(),
                   j.at("triangles").get<std::int64_t>()};
  }
  if (kind == "params") {
    ParamMap values;
    for (const auto& [k, v] : j.at("values").items()) {
      values[k] = v.get<double>();
    }
    return values;
  }
  throw Error("unknown artifact kind '" + kind + "'");
}

Json to_json(const ScoreReport& r) {
  return Json{{"iou", r.iou},
              {"pixel_accuracy", r.pixel_accuracy},
              {"objective_score", r.objective_score},
              {"constraint_score", r.constraint_score},
              {"connectivity", r.connectivity},
              {"watertight", r.watertight},
              {"tool_efficiency", r.tool_efficiency},
              {"task_completion", r.task_completion},
              {"design_quality", r.design_quality},
              {"combined_overall", r.combined_overall},
              {"abstained", r.abstained}};
}

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  for (const auto& call : trace.calls) {
    out += to_json(call).dump();
    out += '\n';
  }
  return out;
}

Json artifacts_to_json(const Trace& trace) {
  Json j = Json::object();
  for (const auto& [id, artifact] : trace.artifacts) j[id] = to_json(artifact);
  return j;
}

Trace trace_from_jsonl(std::string_view jsonl, const Json& artifacts) {
  Trace trace;
  if (artifacts.is_object()) {
    for (const auto& [id, value] : artifacts.items()) {
      try {
        trace.artifacts.emplace(id, artifact_from_json(value));
      } catch (const std::exception& e) {
        throw Error("artifact '" + id + "': " + e.what());
      }
    }
  }
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      trace.calls.push_back(tool_call_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw Error("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  trace.validate();
  return trace;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string artifacts_path_for(const std::string& trace_path) {
  const std::string ext = ".jsonl";
  if (trace_path.size() > ext.size() &&
      trace_path.compare(trace_path.size() - ext.size(), ext.size(), ext) ==
          0) {
    return trace_path.substr(0, trace_path.size() - ext.size()) +
           ".artifacts.json";
  }
  return trace_path + ".artifacts.json";
}

Trace load_trace(const std::string& trace_path) {
  const std::string text = read_file(trace_path);
  Json artifacts = Json::object();
  const std::string apath = artifacts_path_for(trace_path);
  if (std::ifstream(apath).good()) {
    try {
      artifacts = Json::parse(read_file(apath));
    } catch (const Json::exception& e) {
      throw Error("artifacts file '" + apath + "': " + e.what());
    }
  }
  return trace_from_jsonl(text, artifacts);
}

void save_trace(const Trace& trace, const std::string& trace_path) {
  write_file(trace_path, trace_to_jsonl(trace));
  write_file(artifacts_path_for(trace_path), artifacts_to_json(trace).dump());
}

std::string format_number(double value) {
  char buf[64];
  for (int digits = 1; digits <= 15; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace wfbench
