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

#include "wfbench/validate.hpp"

#include <algorithm>
#include <cmath>

namespace wfbench {

namespace {

// Decimal inputs such as 0.63 - 0.58 land a hair above 0.05 in binary.
constexpr double kToleranceSlack = 1e-9;

ParamCheck check_float(double expected, const Json& args, const char* key) {
  ParamCheck c;
  c.expected = expected;
  if (args.is_object() && args.contains(key) && args.at(key).is_number()) {
    const double actual = args.at(key).get<double>();
    c.actual = actual;
    c.pass = std::isfinite(actual) &&
             std::abs(actual - expected) <= kParamTolerance + kToleranceSlack;
  }
  return c;
}

ParamCheck check_bool(bool expected, const Json& args, const char* key) {
  ParamCheck c;
  c.expected = expected;
  if (args.is_object() && args.contains(key) && args.at(key).is_boolean()) {
    c.actual = args.at(key).get<bool>();
    c.pass = c.actual.get<bool>() == expected;
  }
  return c;
}

std::vector<const ToolCall*> successful(const Trace& trace, Tool tool) {
  std::vector<const ToolCall*> out;
  for (const auto& c : trace.calls) {
    if (c.ok && c.tool == tool) out.push_back(&c);
  }
  return out;
}

void add_missing_reasons(const std::vector<Tool>& plan, const Trace& trace,
                         std::vector<std::string>& reasons) {
  std::vector<Tool> seen;
  for (Tool t : plan) {
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) continue;
    seen.push_back(t);
    const auto need = std::count(plan.begin(), plan.end(), t);
    const auto have = static_cast<long>(successful(trace, t).size());
    if (have < need) {
      reasons.push_back("missing " + std::string(tool_name(t)) +
                        (need > 1 ? " (need " + std::to_string(need) + ", got " +
                                        std::to_string(have) + ")"
                                  : ""));
    }
  }
}

// Plan family a bare tool sequence corresponds to, for mismatch hints.
std::string plan_family(const std::vector<Tool>& plan) {
  if (plan == expected_plan(Style::kFull)) return "Full";
  if (plan == expected_plan(Style::kNatural)) return "Natural";
  if (plan == expected_plan(Style::kWMulti)) return "W-Multi";
  if (plan == expected_plan(Style::kWRand)) return "W-Rand/W-Derived/W-Distract/W-Cond";
  return "";
}

void prefix_merge(ParamMatch& into, const ParamMatch& from, const std::string& prefix) {
  for (const auto& [k, v] : from) into[prefix + k] = v;
}

void add_param_reasons(const ParamMatch& m, std::vector<std::string>& reasons) {
  for (const auto& [k, v] : m) {
    if (v.pass) continue;
    if (v.actual.is_null()) {
      reasons.push_back("parameter " + k + " missing");
    } else {
      reasons.push_back("parameter " + k + " expected " + v.expected.dump() +
                        ", got " + v.actual.dump());
    }
  }
}

}  // namespace

ParamMatch match_params(const ExportParams& expected, const Json& actual_args) {
  ParamMatch m;
  m["threshold"] = check_float(expected.threshold, actual_args, "threshold");
  m["mirror_y"] = check_bool(expected.mirror_y, actual_args, "mirror_y");
  m["scale_xy"] = check_float(expected.scale_xy, actual_args, "scale_xy");
  m["scale_z"] = check_float(expected.scale_z, actual_args, "scale_z");
  return m;
}

ParamMatch match_params(const ExportParams& expected, const ExportParams& actual) {
  return match_params(expected, to_json(actual));
}

bool all_pass(const ParamMatch& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second.pass; });
}

std::string_view branch_name(Branch b) { return b == Branch::kHigh ? "high" : "low"; }

Branch select_branch(const ExportExpectation& expect, double objective) {
  if (expect.kind != ExpectKind::kConditional || !expect.pivot) {
    throw Error("expectation is not conditional");
  }
  return objective > *expect.pivot ? Branch::kHigh : Branch::kLow;
}

ExportParams resolve_conditional(const ExportExpectation& expect,
                                 std::optional<double> objective) {
  if (!objective || !std::isfinite(*objective)) {
    throw Error("conditional export needs an objective value");
  }
  return select_branch(expect, *objective) == Branch::kHigh ? *expect.branch_high
                                                            : *expect.branch_low;
}

int matched_calls(const std::vector<Tool>& expected, const Trace& trace) {
  std::vector<Tool> actual;
  for (const auto& c : trace.calls) {
    if (c.ok) actual.push_back(c.tool);
  }
  // Longest common subsequence.
  const std::size_t n = expected.size();
  const std::size_t m = actual.size();
  std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = expected[i - 1] == actual[j - 1] ? prev[j - 1] + 1
                                                : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double tool_efficiency(const std::vector<Tool>& expected, const Trace& trace) {
  if (expected.empty()) throw Error("expected plan must not be empty");
  if (trace.calls.empty()) return 0.0;
  const auto denom = std::max(expected.size(), trace.calls.size());
  return static_cast<double>(matched_calls(expected, trace)) /
         static_cast<double>(denom);
}

std::optional<double> trace_objective(const Trace& trace) {
  std::optional<double> out;
  for (const auto* c : successful(trace, Tool::kSimulateDesign)) {
    if (c->result.is_object() && c->result.contains("objective") &&
        c->result.at("objective").is_number()) {
      out = c->result.at("objective").get<double>();
    }
  }
  return out;
}

ValidationReport validate_trace(const PromptInstance& in, const Trace& trace,
                                const ProblemBackend& backend) {
  ValidationReport r;
  r.style = in.style;
  const auto plan = expected_plan(in);
  r.expected_calls = static_cast<int>(plan.size());
  r.total_calls = static_cast<int>(trace.calls.size());
  r.matched_calls = matched_calls(plan, trace);
  r.tool_efficiency = tool_efficiency(plan, trace);
  for (Tool t : all_tools()) r.call_counts[std::string(tool_name(t))] = 0;
  for (const auto& c : trace.calls) r.call_counts[std::string(tool_name(c.tool))] += 1;

  const bool chain_complete = r.matched_calls == r.expected_calls;
  if (!chain_complete) add_missing_reasons(plan, trace, r.reasons);

  std::vector<Tool> ok_names;
  for (const auto& c : trace.calls) {
    if (c.ok) ok_names.push_back(c.tool);
  }
  const std::string family = plan_family(ok_names);
  if (!family.empty() && ok_names != plan) {
    r.reasons.push_back("style mismatch: trace follows the " + family +
                        " plan, instance is " + std::string(style_name(in.style)));
  }

  const auto optimizes = successful(trace, Tool::kOptimizeDesign);
  const auto exports = successful(trace, Tool::kConvertDesignToStl);

  switch (in.style) {
    case Style::kFull:
      r.task_completion = chain_complete ? 1 : 0;
      break;

    case Style::kNatural: {
      int first_ask = -1;
      int first_design = -1;
      for (const auto& c : trace.calls) {
        if (!c.ok) continue;
        if (c.tool == Tool::kAskHumanForClarification && first_ask < 0) first_ask = c.index;
        if (c.tool == Tool::kOptimizeDesign && first_design < 0) first_design = c.index;
      }
      r.clarification_asked = first_ask >= 0;
      const bool asked_first =
          first_ask >= 0 && (first_design < 0 || first_ask < first_design);
      r.task_completion = asked_first ? 1 : 0;
      r.abstained = asked_first && optimizes.empty();
      if (!asked_first) {
        r.reasons.push_back(first_ask < 0
                                ? "clarification_skip: no clarification requested"
                                : "clarification_skip: design produced before clarification");
      }
      break;
    }

    case Style::kWRand:
    case Style::kWDerived:
    case Style::kWDistract: {
      const ExportParams& want = *in.export_expect->fixed;
      if (!exports.empty()) {
        r.per_param = match_params(want, exports.back()->args);
        add_param_reasons(r.per_param, r.reasons);
        if (in.distractors) {
          const auto d = match_params(*in.distractors, exports.back()->args);
          r.distractor_selected =
              (d.at("threshold").pass && !r.per_param.at("threshold").pass) ||
              (d.at("scale_xy").pass && !r.per_param.at("scale_xy").pass);
        }
      }
      r.task_completion = chain_complete && !exports.empty() && all_pass(r.per_param);
      break;
    }

    case Style::kWCond: {
      const auto& x = *in.export_expect;
      std::optional<double> objective = trace_objective(trace);
      if (!objective) {
        const DesignGrid truth = backend.optimize(in.spec, in.params);
        objective = backend.simulate(in.spec, truth, in.params).objective_value;
      }
      const Branch want = select_branch(x, *objective);
      r.branch_expected = want;
      const ExportParams correct = resolve_conditional(x, objective);
      if (!exports.empty()) {
        const Json& args = exports.back()->args;
        r.per_param = match_params(correct, args);
        add_param_reasons(r.per_param, r.reasons);
        if (all_pass(match_params(*x.branch_high, args))) {
          r.branch_taken = Branch::kHigh;
        } else if (all_pass(match_params(*x.branch_low, args))) {
          r.branch_taken = Branch::kLow;
        }
        r.branch_inverted = r.branch_taken && *r.branch_taken != want;
        if (r.branch_inverted) {
          r.reasons.push_back("branch inverted: expected " +
                              std::string(branch_name(want)) + " branch");
        }
      }
      r.task_completion = chain_complete && !exports.empty() && all_pass(r.per_param);
      break;
    }

    case Style::kWMulti: {
      const auto& ex = *in.export_expect->exports;
      if (exports.size() >= 1) {
        prefix_merge(r.per_param, match_params(ex[0], exports[0]->args), "A.");
      }
      if (exports.size() >= 2) {
        prefix_merge(r.per_param, match_params(ex[1], exports[1]->args), "B.");
      }
      add_param_reasons(r.per_param, r.reasons);
      if (exports.size() != 2) {
        r.reasons.push_back("expected exactly 2 STL exports, got " +
                            std::to_string(exports.size()));
      }
      r.task_completion = chain_complete && exports.size() == 2 && all_pass(r.per_param);
      break;
    }
  }
  return r;
}

Json to_json(const ValidationReport& r) {
  Json per_param = Json::object();
  for (const auto& [k, v] : r.per_param) {
    per_param[k] = Json{{"expected", v.expected}, {"actual", v.actual}, {"pass", v.pass}};
  }
  Json counts = Json::object();
  for (const auto& [k, v] : r.call_counts) counts[k] = v;
  return Json{{"style", std::string(style_name(r.style))},
              {"task_completion", r.task_completion},
              {"tool_efficiency", r.tool_efficiency},
              {"per_param", per_param},
              {"branch_taken", r.branch_taken ? Json(std::string(branch_name(*r.branch_taken)))
                                              : Json()},
              {"branch_expected", r.branch_expected
                                      ? Json(std::string(branch_name(*r.branch_expected)))
                                      : Json()},
              {"branch_inverted", r.branch_inverted},
              {"abstained", r.abstained},
              {"clarification_asked", r.clarification_asked},
              {"distractor_selected", r.distractor_selected},
              {"expected_calls", r.expected_calls},
              {"total_calls", r.total_calls},
              {"matched_calls", r.matched_calls},
              {"call_counts", counts},
              {"reasons", r.reasons}};
}

std::set<std::string> classify_failure(const ValidationReport& r) {
  std::set<std::string> tags;
  if (r.branch_inverted) tags.insert("branch_inversion");
  if (r.style == Style::kFull && r.call_counts.at("render_design") == 0) {
    tags.insert("render_omission");
  }
  if (r.style == Style::kNatural && r.task_completion == 0) {
    tags.insert("clarification_skip");
  }
  if (r.matched_calls == r.expected_calls && r.total_calls > r.expected_calls) {
    tags.insert("over_calling");
  }
  if (r.distractor_selected) tags.insert("distractor_selected");
  return tags;
}

}  // namespace wfbench
