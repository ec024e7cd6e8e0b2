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

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace wfbench {

using Json = nlohmann::ordered_json;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
using RowMajorArray =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Continuous density field with every cell in [0,1]. Row 0 is the top row,
/// column 0 the left column.
class DesignGrid {
 public:
  DesignGrid() = default;
  /// Validates shape, finiteness and range.
  DesignGrid(int rows, int cols, std::vector<double> cells);
  explicit DesignGrid(RowMajorArray<double> cells);

  int rows() const { return static_cast<int>(cells_.rows()); }
  int cols() const { return static_cast<int>(cells_.cols()); }
  Eigen::Index size() const { return cells_.size(); }
  double operator()(int r, int c) const { return cells_(r, c); }
  const RowMajorArray<double>& array() const { return cells_; }
  std::vector<double> to_vector() const;

  bool operator==(const DesignGrid& other) const;

 private:
  RowMajorArray<double> cells_;
};

DesignGrid make_grid(int rows, int cols, std::vector<double> cells);

class BinaryGrid {
 public:
  BinaryGrid() = default;
  BinaryGrid(int rows, int cols, const std::vector<bool>& cells);
  explicit BinaryGrid(RowMajorArray<bool> cells) : cells_(std::move(cells)) {}

  int rows() const { return static_cast<int>(cells_.rows()); }
  int cols() const { return static_cast<int>(cells_.cols()); }
  Eigen::Index size() const { return cells_.size(); }
  bool operator()(int r, int c) const { return cells_(r, c); }
  const RowMajorArray<bool>& array() const { return cells_; }
  Eigen::Index material_count() const { return cells_.count(); }

  bool operator==(const BinaryGrid& other) const;

 private:
  RowMajorArray<bool> cells_;
};

/// Material iff density >= threshold.
BinaryGrid binarize(const DesignGrid& grid, double threshold);
double mean_density(const DesignGrid& grid);

struct DesignParams {
  double volfrac = 0.5;
  double forcedist = 0.0;
  double rmin = 2.0;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const DesignParams&) const = default;
};

struct ExportParams {
  double threshold = 0.5;
  bool mirror_y = false;
  double scale_xy = 1.0;
  double scale_z = 1.0;

  void validate() const;
  bool operator==(const ExportParams&) const = default;
};

enum class Tool {
  kCreateProblem,
  kOptimizeDesign,
  kSimulateDesign,
  kRenderDesign,
  kConvertDesignToStl,
  kAskHumanForClarification,
  kSearchDocuments,
  kGenerateTrainingCommand,
  kSubmitJob,
  kMonitorJob,
  kEvaluateModel,
};

std::string_view tool_name(Tool tool);
Tool parse_tool(std::string_view name);
const std::vector<Tool>& all_tools();

struct ToolCall {
  int index = 0;
  Tool tool = Tool::kCreateProblem;
  Json args = Json::object();
  bool ok = true;
  Json result;  // null when absent
};

/// Mesh artifacts are stored by reference: the design they were cut from and
/// the triangle count of the exported solid.
struct MeshRef {
  std::string design_id;
  std::int64_t triangles = 0;
  bool operator==(const MeshRef&) const = default;
};

using ParamMap = std::map<std::string, double>;
using Artifact = std::variant<DesignGrid, MeshRef, ParamMap>;

struct Trace {
  std::vector<ToolCall> calls;
  std::map<std::string, Artifact> artifacts;

  /// Checks index ordering and that every referenced artifact exists.
  void validate() const;
  const DesignGrid* grid(const std::string& id) const;
};

struct ScoreReport {
  double iou = 0.0;
  double pixel_accuracy = 0.0;
  double objective_score = 0.0;
  double constraint_score = 0.0;
  double connectivity = 0.0;
  double watertight = 0.0;
  double tool_efficiency = 0.0;
  int task_completion = 0;
  // Effective value: 1.0 for an abstained run, otherwise the weighted sum.
  double design_quality = 0.0;
  double combined_overall = 0.0;
  bool abstained = false;
};

// JSON

Json to_json(const DesignGrid& grid);
DesignGrid grid_from_json(const Json& j);
Json to_json(const DesignParams& p);
DesignParams design_params_from_json(const Json& j);
Json to_json(const ExportParams& p);
ExportParams export_params_from_json(const Json& j);
Json to_json(const ToolCall& call);
ToolCall tool_call_from_json(const Json& j);
Json to_json(const Artifact& artifact);
Artifact artifact_from_json(const Json& j);
Json to_json(const ScoreReport& r);

/// One ToolCall per line.
std::string trace_to_jsonl(const Trace& trace);
Json artifacts_to_json(const Trace& trace);
/// Parse errors carry the 1-based line number.
Trace trace_from_jsonl(std::string_view jsonl, const Json& artifacts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
/// `foo.jsonl` -> `foo.artifacts.json`.
std::string artifacts_path_for(const std::string& trace_path);
Trace load_trace(const std::string& trace_path);
void save_trace(const Trace& trace, const std::string& trace_path);

/// Shortest decimal form that keeps at least one fractional digit
/// (4 -> "4.0", 0.58 -> "0.58").
std::string format_number(double value);

}  // namespace wfbench
