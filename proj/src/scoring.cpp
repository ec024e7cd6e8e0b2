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

#include "wfbench/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "wfbench/geometry.hpp"

namespace wfbench {

namespace {

// Neumaier-compensated sum of w_i * x_i. Weights such as 0.3 + 0.3 + 0.3 +
// 0.1 then close to exactly 1.0 instead of one ulp below.
class WeightedSum {
 public:
  WeightedSum& add(double w, double x) {
    const double term = w * x;
    const double t = sum_ + term;
    comp_ += std::abs(sum_) >= std::abs(term) ? (sum_ - t) + term : (term - t) + sum_;
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void check_unit(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw Error(std::string(name) + " must lie in [0,1]");
  }
}

void check_same_shape(const BinaryGrid& a, const BinaryGrid& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("grids differ in dimensions");
  }
}

void check_closure(double sum, const char* what) {
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(std::string(what) + " weights must sum to 1");
  }
}

}  // namespace

std::map<RagPromptId, RagWeights> ScoringConfig::default_rag_weights() {
  return {
      {RagPromptId::kP0, {0.60, std::nullopt, std::nullopt, 0.40}},
      {RagPromptId::kP1, {0.40, 0.40, std::nullopt, 0.20}},
      {RagPromptId::kP2, {0.40, std::nullopt, 0.40, 0.20}},
      {RagPromptId::kP3, {0.30, 0.30, 0.30, 0.10}},
  };
}

void ScoringConfig::validate() const {
  check_closure(design.sum(), "design quality");
  check_closure(workflow.sum(), "workflow");
  check_closure(hpc.step + hpc.config + hpc.eval, "HPC");
  for (const auto& [id, w] : rag) check_closure(w.sum(), "RAG");
  if (!(constraint_tau > 0.0)) throw Error("constraint tau must be > 0");
}

Json to_json(const ScoringConfig& c) {
  Json rag = Json::object();
  for (const auto& [id, w] : c.rag) {
    Json row = Json::object();
    if (w.w_vol) row["w_vol"] = *w.w_vol;
    if (w.w_force) row["w_force"] = *w.w_force;
    if (w.w_rmin) row["w_rmin"] = *w.w_rmin;
    row["w_rag"] = w.w_rag;
    rag[std::string(rag_prompt_name(id))] = row;
  }
  return Json{
      {"design",
       {{"iou", c.design.iou},
        {"pixel_accuracy", c.design.pixel_accuracy},
        {"objective", c.design.objective},
        {"constraint", c.design.constraint},
        {"connectivity", c.design.connectivity},
        {"watertight", c.design.watertight}}},
      {"workflow",
       {{"design", c.workflow.design},
        {"tool", c.workflow.tool},
        {"completion", c.workflow.completion}}},
      {"rag", rag},
      {"hpc", {{"step", c.hpc.step}, {"config", c.hpc.config}, {"eval", c.hpc.eval}}},
      {"constraint_tau", c.constraint_tau}};
}

ScoringConfig scoring_config_from_json(const Json& j) {
  ScoringConfig c;
  auto read = [](const Json& obj, const char* key, double& into) {
    if (obj.contains(key)) into = obj.at(key).get<double>();
  };
  if (j.contains("design")) {
    const auto& d = j.at("design");
    read(d, "iou", c.design.iou);
    read(d, "pixel_accuracy", c.design.pixel_accuracy);
    read(d, "objective", c.design.objective);
    read(d, "constraint", c.design.constraint);
    read(d, "connectivity", c.design.connectivity);
    read(d, "watertight", c.design.watertight);
  }
  if (j.contains("workflow")) {
    const auto& w = j.at("workflow");
    read(w, "design", c.workflow.design);
    read(w, "tool", c.workflow.tool);
    read(w, "completion", c.workflow.completion);
  }
  if (j.contains("hpc")) {
    const auto& h = j.at("hpc");
    read(h, "step", c.hpc.step);
    read(h, "config", c.hpc.config);
    read(h, "eval", c.hpc.eval);
  }
  if (j.contains("rag")) {
    for (const auto& [name, row] : j.at("rag").items()) {
      RagWeights w;
      if (row.contains("w_vol")) w.w_vol = row.at("w_vol").get<double>();
      if (row.contains("w_force")) w.w_force = row.at("w_force").get<double>();
      if (row.contains("w_rmin")) w.w_rmin = row.at("w_rmin").get<double>();
      w.w_rag = row.value("w_rag", 0.0);
      c.rag[parse_rag_prompt(name)] = w;
    }
  }
  read(j, "constraint_tau", c.constraint_tau);
  c.validate();
  return c;
}

double iou(const BinaryGrid& a, const BinaryGrid& b) {
  check_same_shape(a, b);
  const auto inter = (a.array() && b.array()).count();
  const auto uni = (a.array() || b.array()).count();
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double pixel_accuracy(const BinaryGrid& a, const BinaryGrid& b) {
  check_same_shape(a, b);
  const auto same = (a.array() == b.array()).count();
  return static_cast<double>(same) / static_cast<double>(a.size());
}

double constraint_score(double actual, double target, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error("tau must be > 0");
  return std::exp(-std::abs(actual - target) / tau);
}

double objective_score(double agent_objective, double truth_objective) {
  if (!(truth_objective > 0.0)) {
    throw Error("ground-truth objective must be > 0");
  }
  return std::exp(-std::abs(agent_objective - truth_objective) /
                  (0.1 * truth_objective));
}

double design_quality(double iou_v, double pa, double obj, double constr,
                      double conn, double wt, const DesignWeights& w) {
  check_unit(iou_v, "IoU");
  check_unit(pa, "pixel accuracy");
  check_unit(obj, "objective score");
  check_unit(constr, "constraint score");
  check_unit(conn, "connectivity");
  check_unit(wt, "watertightness");
  return WeightedSum()
      .add(w.iou, iou_v)
      .add(w.pixel_accuracy, pa)
      .add(w.objective, obj)
      .add(w.constraint, constr)
      .add(w.connectivity, conn)
      .add(w.watertight, wt)
      .value();
}

double combined_overall(double dq, double tool_efficiency, double task_completion,
                        bool abstained, const WorkflowWeights& w) {
  check_unit(dq, "design quality");
  check_unit(tool_efficiency, "tool efficiency");
  check_unit(task_completion, "task completion");
  const double design = abstained ? 1.0 : dq;
  return WeightedSum()
      .add(w.design, design)
      .add(w.tool, tool_efficiency)
      .add(w.completion, task_completion)
      .value();
}

std::string_view rag_param_name(RagParam p) {
  switch (p) {
    case RagParam::kVolfrac: return "volfrac";
    case RagParam::kForcedist: return "forcedist";
    case RagParam::kRmin: return "rmin";
  }
  return "?";
}

namespace {
RagParam parse_rag_param(std::string_view name) {
  if (name == "volfrac") return RagParam::kVolfrac;
  if (name == "forcedist") return RagParam::kForcedist;
  if (name == "rmin") return RagParam::kRmin;
  throw Error("unknown RAG parameter '" + std::string(name) + "'");
}
}  // namespace

const RagTarget& rag_target(RagPromptId id) {
  static const std::map<RagPromptId, RagTarget> targets = {
      {RagPromptId::kP0, {{{RagParam::kVolfrac, 0.35}}}},
      {RagPromptId::kP1, {{{RagParam::kVolfrac, 0.70}, {RagParam::kForcedist, 0.30}}}},
      {RagPromptId::kP2, {{{RagParam::kVolfrac, 0.40}, {RagParam::kRmin, 6.0}}}},
      {RagPromptId::kP3,
       {{{RagParam::kVolfrac, 0.70}, {RagParam::kForcedist, 0.30}, {RagParam::kRmin, 6.0}}}},
  };
  return targets.at(id);
}

double rag_tolerance(RagParam p) { return p == RagParam::kRmin ? 0.5 : 0.05; }

Json to_json(const RagOutcome& o) {
  Json extracted = Json::object();
  for (const auto& [p, v] : o.extracted) extracted[std::string(rag_param_name(p))] = v;
  return Json{{"prompt_id", std::string(rag_prompt_name(o.prompt_id))},
              {"extracted", extracted},
              {"rag_called", o.rag_called}};
}

RagOutcome rag_outcome_from_json(const Json& j) {
  RagOutcome o;
  o.prompt_id = parse_rag_prompt(j.at("prompt_id").get<std::string>());
  o.rag_called = j.at("rag_called").get<bool>();
  const auto& target = rag_target(o.prompt_id);
  if (j.contains("extracted")) {
    for (const auto& [k, v] : j.at("extracted").items()) {
      const RagParam p = parse_rag_param(k);
      if (!target.values.contains(p)) {
        throw Error("parameter '" + k + "' is not a target of " +
                    std::string(rag_prompt_name(o.prompt_id)));
      }
      o.extracted[p] = v.get<double>();
    }
  }
  return o;
}

RagScore rag_score_detail(const RagOutcome& outcome, const ScoringConfig& config) {
  const auto wit = config.rag.find(outcome.prompt_id);
  if (wit == config.rag.end()) throw Error("no RAG weights for prompt");
  const RagWeights& w = wit->second;
  const RagTarget& target = rag_target(outcome.prompt_id);

  RagScore s;
  WeightedSum total;
  for (const auto& [param, expected] : target.values) {
    const auto it = outcome.extracted.find(param);
    // Bounds are on the decimal values; the slack absorbs representation
    // error in |a - b| so a boundary hit like 6.5 vs 6.0 counts as within.
    const int a = it != outcome.extracted.end() && std::isfinite(it->second) &&
                  std::abs(it->second - expected) <= rag_tolerance(param) + 1e-9;
    s.accuracy[param] = a;
    s.effective[param] = outcome.rag_called ? a : 0;
    const std::optional<double>& weight = param == RagParam::kVolfrac   ? w.w_vol
                                          : param == RagParam::kForcedist ? w.w_force
                                                                          : w.w_rmin;
    total.add(weight.value_or(0.0), s.effective[param]);
  }
  total.add(w.w_rag, outcome.rag_called ? 1.0 : 0.0);
  s.score = total.value();
  return s;
}

double rag_score(const RagOutcome& outcome, const ScoringConfig& config) {
  return rag_score_detail(outcome, config).score;
}

std::string_view hpc_step_name(HpcStep s) {
  switch (s) {
    case HpcStep::kGenerate: return "generate";
    case HpcStep::kSubmit: return "submit";
    case HpcStep::kMonitor: return "monitor";
    case HpcStep::kEvaluate: return "evaluate";
  }
  return "?";
}

void HpcRunRecord::validate() const {
  if (metrics_extracted < 0 || metrics_extracted > 6) {
    throw Error("metrics_extracted must lie in 0..6");
  }
}

Json to_json(const HpcRunRecord& r) {
  Json steps = Json::array();
  for (auto s : r.steps_completed) steps.push_back(std::string(hpc_step_name(s)));
  return Json{{"steps_completed", steps},
              {"config_matches", r.config_matches},
              {"metrics_extracted", r.metrics_extracted},
              {"config_step_called", r.config_step_called},
              {"eval_step_called", r.eval_step_called}};
}

HpcRunRecord hpc_record_from_json(const Json& j) {
  HpcRunRecord r;
  for (const auto& s : j.at("steps_completed")) {
    const auto name = s.get<std::string>();
    if (name == "generate") r.steps_completed.insert(HpcStep::kGenerate);
    else if (name == "submit") r.steps_completed.insert(HpcStep::kSubmit);
    else if (name == "monitor") r.steps_completed.insert(HpcStep::kMonitor);
    else if (name == "evaluate") r.steps_completed.insert(HpcStep::kEvaluate);
    else throw Error("unknown HPC step '" + name + "'");
  }
  r.config_matches = j.value("config_matches", false);
  r.metrics_extracted = j.value("metrics_extracted", 0);
  r.config_step_called =
      j.value("config_step_called", r.steps_completed.contains(HpcStep::kGenerate));
  r.eval_step_called =
      j.value("eval_step_called", r.steps_completed.contains(HpcStep::kEvaluate));
  r.validate();
  return r;
}

HpcWeights effective_hpc_weights(const HpcRunRecord& record, const HpcWeights& base) {
  HpcWeights w;
  w.config = record.config_step_called ? base.config : 0.0;
  w.eval = record.eval_step_called ? base.eval : 0.0;
  w.step = 1.0 - w.config - w.eval;
  return w;
}

double hpc_score(const HpcRunRecord& record, const ScoringConfig& config) {
  record.validate();
  const HpcWeights w = effective_hpc_weights(record, config.hpc);
  const double steps = static_cast<double>(record.steps_completed.size()) / 4.0;
  const double metrics = std::min(1.0, record.metrics_extracted / 6.0);
  return WeightedSum()
      .add(w.step, steps)
      .add(w.config, record.config_matches ? 1.0 : 0.0)
      .add(w.eval, metrics)
      .value();
}

}  // namespace wfbench

namespace wfbench {

namespace {

const DesignGrid* agent_design(const Trace& trace, const ToolCall** call_out) {
  const DesignGrid* grid = nullptr;
  for (const auto& c : trace.calls) {
    if (!c.ok || c.tool != Tool::kOptimizeDesign || !c.result.is_object()) continue;
    const auto it = c.result.find("design");
    if (it == c.result.end() || !it->is_string()) continue;
    if (const auto* g = trace.grid(it->get<std::string>())) {
      grid = g;
      *call_out = &c;
    }
  }
  return grid;
}

DesignParams agent_params(const ToolCall& call, const DesignParams& fallback) {
  try {
    DesignParams p = design_params_from_json(call.args);
    if (!call.args.contains("seed")) p.seed = fallback.seed;
    return p;
  } catch (const std::exception&) {
    return fallback;
  }
}

double watertight_score(const Trace& trace, const DesignGrid& design) {
  for (const auto& c : trace.calls) {
    if (!c.ok || c.tool != Tool::kConvertDesignToStl) continue;
    const DesignGrid* source = &design;
    if (c.args.contains("design") && c.args.at("design").is_string()) {
      if (const auto* g = trace.grid(c.args.at("design").get<std::string>())) source = g;
    }
    try {
      const TriangleMesh mesh = export_mesh(*source, export_params_from_json(c.args));
      return is_watertight(mesh).watertight ? 1.0 : 0.0;
    } catch (const std::exception&) {
      return 0.0;
    }
  }
  return 0.0;
}

}  // namespace

ScoreReport score_run(const PromptInstance& in, const Trace& trace,
                      const ValidationReport& v, const ProblemBackend& backend,
                      const ScoringConfig& config) {
  ScoreReport s;
  s.tool_efficiency = v.tool_efficiency;
  s.task_completion = v.task_completion;
  s.abstained = v.abstained;

  const ToolCall* opt_call = nullptr;
  const DesignGrid* design = v.abstained ? nullptr : agent_design(trace, &opt_call);
  if (design && design->rows() == in.spec.rows && design->cols() == in.spec.cols) {
    const DesignGrid truth = backend.optimize(in.spec, in.params);
    const double truth_obj = backend.simulate(in.spec, truth, in.params).objective_value;
    const BinaryGrid agent_bin = binarize(*design, 0.5);
    const BinaryGrid truth_bin = binarize(truth, 0.5);

    std::optional<double> agent_obj = trace_objective(trace);
    if (!agent_obj && mean_density(*design) > 0.0) {
      agent_obj = backend.simulate(in.spec, *design, agent_params(*opt_call, in.params))
                      .objective_value;
    }
    s.iou = iou(agent_bin, truth_bin);
    s.pixel_accuracy = pixel_accuracy(agent_bin, truth_bin);
    s.objective_score = agent_obj ? objective_score(*agent_obj, truth_obj) : 0.0;
    s.constraint_score =
        constraint_score(mean_density(*design), in.params.volfrac, config.constraint_tau);
    s.connectivity = connectivity_2d(agent_bin);
    s.watertight = watertight_score(trace, *design);
  }
  const double raw = design_quality(s.iou, s.pixel_accuracy, s.objective_score,
                                    s.constraint_score, s.connectivity, s.watertight,
                                    config.design);
  s.design_quality = s.abstained ? 1.0 : raw;
  s.combined_overall = combined_overall(raw, s.tool_efficiency, s.task_completion,
                                        s.abstained, config.workflow);
  return s;
}

}  // namespace wfbench
