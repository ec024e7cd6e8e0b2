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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wfbench/backend.hpp"
#include "wfbench/prompts.hpp"
#include "wfbench/types.hpp"

namespace wfbench {

/// Absolute tolerance for float export parameters.
inline constexpr double kParamTolerance = 0.05;

struct ParamCheck {
  Json expected;
  Json actual;  // null when the call omitted the field
  bool pass = false;
};

/// Keyed by parameter name (threshold, mirror_y, scale_xy, scale_z).
using ParamMatch = std::map<std::string, ParamCheck>;

ParamMatch match_params(const ExportParams& expected, const Json& actual_args);
ParamMatch match_params(const ExportParams& expected, const ExportParams& actual);
bool all_pass(const ParamMatch& m);

enum class Branch { kHigh, kLow };
std::string_view branch_name(Branch b);

/// branch_high iff objective > pivot.
Branch select_branch(const ExportExpectation& expect, double objective);
ExportParams resolve_conditional(const ExportExpectation& expect,
                                 std::optional<double> objective);

/// Longest in-order match of successful calls against the plan, over
/// max(plan length, number of calls made). Failed calls count toward the
/// denominator.
double tool_efficiency(const std::vector<Tool>& expected, const Trace& trace);
int matched_calls(const std::vector<Tool>& expected, const Trace& trace);

struct ValidationReport {
  Style style = Style::kFull;
  int task_completion = 0;
  double tool_efficiency = 0.0;
  ParamMatch per_param;
  std::optional<Branch> branch_taken;
  std::optional<Branch> branch_expected;
  bool branch_inverted = false;
  bool abstained = false;
  bool clarification_asked = false;
  bool distractor_selected = false;
  int expected_calls = 0;
  int total_calls = 0;
  int matched_calls = 0;
  std::map<std::string, int> call_counts;  // every tool, including zeros
  std::vector<std::string> reasons;
};

Json to_json(const ValidationReport& r);

/// Objective reported by the last successful simulate_design call.
std::optional<double> trace_objective(const Trace& trace);

ValidationReport validate_trace(const PromptInstance& instance, const Trace& trace,
                                const ProblemBackend& backend = SyntheticBackend{});

inline int task_completion(const PromptInstance& instance, const Trace& trace,
                           const ProblemBackend& backend = SyntheticBackend{}) {
  return validate_trace(instance, trace, backend).task_completion;
}

/// Tags: branch_inversion, render_omission, clarification_skip, over_calling,
/// distractor_selected.
std::set<std::string> classify_failure(const ValidationReport& report);

}  // namespace wfbench
