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

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "wfbench/backend.hpp"
#include "wfbench/prompts.hpp"
#include "wfbench/validate.hpp"
#include "wfbench/types.hpp"

namespace wfbench {

struct DesignWeights {
  double iou = 0.31;
  double pixel_accuracy = 0.19;
  double objective = 0.15;
  double constraint = 0.12;
  double connectivity = 0.12;
  double watertight = 0.11;
  double sum() const {
    return iou + pixel_accuracy + objective + constraint + connectivity + watertight;
  }
};

struct WorkflowWeights {
  double design = 0.65;
  double tool = 0.20;
  double completion = 0.15;
  double sum() const { return design + tool + completion; }
};

/// Absent parameters have no weight entry.
struct RagWeights {
  std::optional<double> w_vol;
  std::optional<double> w_force;
  std::optional<double> w_rmin;
  double w_rag = 0.0;
  double sum() const {
    return w_vol.value_or(0) + w_force.value_or(0) + w_rmin.value_or(0) + w_rag;
  }
};

struct HpcWeights {
  double step = 0.70;
  double config = 0.15;
  double eval = 0.15;
};

struct ScoringConfig {
  DesignWeights design;
  WorkflowWeights workflow;
  std::map<RagPromptId, RagWeights> rag = default_rag_weights();
  HpcWeights hpc;
  double constraint_tau = 0.05;

  static std::map<RagPromptId, RagWeights> default_rag_weights();
  /// Throws unless every weight group closes to 1.
  void validate() const;
};

Json to_json(const ScoringConfig& config);
/// Any subset of the keys written by to_json overrides the defaults.
ScoringConfig scoring_config_from_json(const Json& j);

double iou(const BinaryGrid& a, const BinaryGrid& b);
double pixel_accuracy(const BinaryGrid& a, const BinaryGrid& b);
/// exp(-|actual - target| / tau)
double constraint_score(double actual, double target, double tau);
/// exp(-|agent - truth| / (0.1 truth))
double objective_score(double agent_objective, double truth_objective);

double design_quality(double iou, double pa, double obj, double constr,
                      double conn, double wt, const DesignWeights& w = {});
/// An abstained run scores design quality 1.0 before weighting.
double combined_overall(double dq, double tool_efficiency, double task_completion,
                        bool abstained = false, const WorkflowWeights& w = {});

// Retrieval scoring.
enum class RagParam { kVolfrac, kForcedist, kRmin };
std::string_view rag_param_name(RagParam p);

struct RagTarget {
  std::map<RagParam, double> values;
};
/// Target values of each prompt.
const RagTarget& rag_target(RagPromptId id);
/// 0.05 for volfrac and forcedist, 0.5 for rmin.
double rag_tolerance(RagParam p);

struct RagOutcome {
  RagPromptId prompt_id = RagPromptId::kP0;
  std::map<RagParam, double> extracted;
  bool rag_called = false;
};

Json to_json(const RagOutcome& o);
RagOutcome rag_outcome_from_json(const Json& j);

struct RagScore {
  double score = 0.0;
  std::map<RagParam, int> accuracy;       // raw a_i
  std::map<RagParam, int> effective;      // gated
};

RagScore rag_score_detail(const RagOutcome& outcome, const ScoringConfig& config = {});
double rag_score(const RagOutcome& outcome, const ScoringConfig& config = {});

// HPC orchestration scoring.
enum class HpcStep { kGenerate, kSubmit, kMonitor, kEvaluate };
std::string_view hpc_step_name(HpcStep s);

struct HpcRunRecord {
  std::set<HpcStep> steps_completed;
  bool config_matches = false;
  int metrics_extracted = 0;
  bool config_step_called = false;
  bool eval_step_called = false;

  void validate() const;
};

Json to_json(const HpcRunRecord& r);
HpcRunRecord hpc_record_from_json(const Json& j);

/// Effective weights after moving uncalled secondary weight onto step.
HpcWeights effective_hpc_weights(const HpcRunRecord& record,
                                 const HpcWeights& base = {});
double hpc_score(const HpcRunRecord& record, const ScoringConfig& config = {});

/// Design-quality sub-scores and composites of one validated workflow run.
/// The agent design is the output of the last successful optimize_design
/// call; WT comes from the first STL export; the ground truth is regenerated
/// from the backend.
ScoreReport score_run(const PromptInstance& instance, const Trace& trace,
                      const ValidationReport& validation,
                      const ProblemBackend& backend = SyntheticBackend{},
                      const ScoringConfig& config = {});

}  // namespace wfbench
