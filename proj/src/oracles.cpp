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

#include "wfbench/oracles.hpp"

#include <array>

#include "wfbench/geometry.hpp"
#include "wfbench/validate.hpp"

namespace wfbench {

namespace {

constexpr std::array<std::pair<OracleKind, std::string_view>, 8> kOracleNames{{
    {OracleKind::kPerfect, "perfect"},
    {OracleKind::kBranchInverter, "branch_inverter"},
    {OracleKind::kOverCaller, "over_caller"},
    {OracleKind::kRenderOmitter, "render_omitter"},
    {OracleKind::kClarificationBlind, "clarification_blind"},
    {OracleKind::kDistractConfused, "distract_confused"},
    {OracleKind::kHpcPerfect, "hpc_perfect"},
    {OracleKind::kHpcEvalDropper, "hpc_eval_dropper"},
}};

class TraceBuilder {
 public:
  TraceBuilder(const PromptInstance& in, const ProblemBackend& backend)
      : in_(in), backend_(backend) {}

  void create_problem() {
    add(Tool::kCreateProblem, Json{{"problem_id", problem_name(in_.spec.problem_id)}},
        Json{{"problem_id", problem_name(in_.spec.problem_id)},
             {"rows", in_.spec.rows},
             {"cols", in_.spec.cols}});
  }

  void optimize(const DesignParams& p) {
    params_ = p;
    design_id_ = "design_" + std::to_string(designs_++);
    design_ = backend_.optimize(in_.spec, p);
    trace_.artifacts.emplace(design_id_, design_);
    add(Tool::kOptimizeDesign, to_json(p), Json{{"design", design_id_}});
  }

  double simulate() {
    const auto sim = backend_.simulate(in_.spec, design_, params_);
    add(Tool::kSimulateDesign, Json{{"design", design_id_}},
        Json{{"objective", sim.objective_value},
             {"objective_name", in_.spec.objective_name},
             {"volfrac", sim.achieved_volfrac}});
    return sim.objective_value;
  }

  void render() {
    add(Tool::kRenderDesign, Json{{"design", design_id_}},
        Json{{"format", "pgm"}, {"bytes", to_pgm(design_).size()}});
  }

  void export_stl(const ExportParams& p) {
    const std::string mesh_id = "mesh_" + std::to_string(meshes_++);
    const TriangleMesh mesh = export_mesh(design_, p);
    const auto triangles = static_cast<std::int64_t>(mesh.triangles.size());
    trace_.artifacts.emplace(mesh_id, MeshRef{design_id_, triangles});
    Json args{{"design", design_id_}};
    const Json fields = to_json(p);
    for (const auto& [k, v] : fields.items()) args[k] = v;
    add(Tool::kConvertDesignToStl, args,
        Json{{"mesh", mesh_id}, {"triangles", triangles}});
  }

  void ask() {
    add(Tool::kAskHumanForClarification,
        Json{{"question",
              "Please give the exact volume fraction, force distribution and filter "
              "radius."}},
        Json{{"answer", nullptr}});
  }

  Trace finish() { return std::move(trace_); }

 private:
  void add(Tool tool, Json args, Json result) {
    ToolCall c;
    c.index = static_cast<int>(trace_.calls.size());
    c.tool = tool;
    c.args = std::move(args);
    c.ok = true;
    c.result = std::move(result);
    trace_.calls.push_back(std::move(c));
  }

  const PromptInstance& in_;
  const ProblemBackend& backend_;
  Trace trace_;
  DesignParams params_;
  DesignGrid design_;
  std::string design_id_;
  int designs_ = 0;
  int meshes_ = 0;
};

ExportParams export_for(OracleKind kind, const PromptInstance& in, double objective) {
  const auto& x = *in.export_expect;
  switch (in.style) {
    case Style::kWCond: {
      const Branch want = select_branch(x, objective);
      const bool high = (want == Branch::kHigh) != (kind == OracleKind::kBranchInverter);
      return high ? *x.branch_high : *x.branch_low;
    }
    case Style::kWDistract:
      return kind == OracleKind::kDistractConfused ? *in.distractors : *x.fixed;
    default:
      return *x.fixed;
  }
}

}  // namespace

std::string_view oracle_name(OracleKind kind) {
  for (const auto& [k, n] : kOracleNames) {
    if (k == kind) return n;
  }
  throw Error("unknown oracle kind");
}

OracleKind parse_oracle(std::string_view name) {
  for (const auto& [k, n] : kOracleNames) {
    if (n == name) return k;
  }
  throw Error("unknown oracle '" + std::string(name) + "'");
}

const std::vector<OracleKind>& workflow_oracles() {
  static const std::vector<OracleKind> kinds{
      OracleKind::kPerfect,       OracleKind::kBranchInverter,
      OracleKind::kOverCaller,    OracleKind::kRenderOmitter,
      OracleKind::kClarificationBlind, OracleKind::kDistractConfused};
  return kinds;
}

bool is_hpc_oracle(OracleKind kind) {
  return kind == OracleKind::kHpcPerfect || kind == OracleKind::kHpcEvalDropper;
}

bool oracle_applies(OracleKind kind, Style style) {
  switch (kind) {
    case OracleKind::kPerfect:
      return true;
    case OracleKind::kOverCaller:
      return style != Style::kNatural;
    case OracleKind::kBranchInverter:
      return style == Style::kWCond;
    case OracleKind::kRenderOmitter:
      return style == Style::kFull;
    case OracleKind::kClarificationBlind:
      return style == Style::kNatural;
    case OracleKind::kDistractConfused:
      return style == Style::kWDistract;
    case OracleKind::kHpcPerfect:
    case OracleKind::kHpcEvalDropper:
      return false;
  }
  return false;
}

Trace run_oracle(OracleKind kind, const PromptInstance& in, const ProblemBackend& backend,
                 const OracleOptions& options) {
  if (!oracle_applies(kind, in.style)) {
    throw Error("oracle " + std::string(oracle_name(kind)) + " does not apply to style " +
                std::string(style_name(in.style)));
  }
  if (options.redundant_simulations < 0) {
    throw Error("redundant simulation count must be >= 0");
  }
  TraceBuilder b(in, backend);

  if (in.style == Style::kNatural) {
    if (kind == OracleKind::kPerfect) {
      b.ask();
    } else {
      DesignParams p = options.blind_defaults;
      p.seed = in.params.seed;
      b.create_problem();
      b.optimize(p);
      b.simulate();
      b.render();
    }
    return b.finish();
  }

  b.create_problem();
  b.optimize(in.params);
  const double objective = b.simulate();
  if (kind == OracleKind::kOverCaller) {
    for (int i = 0; i < options.redundant_simulations; ++i) b.simulate();
  }

  if (in.style == Style::kFull) {
    if (kind != OracleKind::kRenderOmitter) b.render();
  } else if (in.style == Style::kWMulti) {
    const auto& ex = *in.export_expect->exports;
    b.export_stl(ex[0]);
    b.export_stl(ex[1]);
  } else {
    b.export_stl(export_for(kind, in, objective));
  }
  return b.finish();
}

HpcRunRecord run_hpc_oracle(OracleKind kind, const HpcPrompt& prompt) {
  if (!is_hpc_oracle(kind)) {
    throw Error("oracle " + std::string(oracle_name(kind)) + " is not an HPC oracle");
  }
  const std::array<HpcStep, 4> order{HpcStep::kGenerate, HpcStep::kSubmit,
                                     HpcStep::kMonitor, HpcStep::kEvaluate};
  int steps = 4;
  if (kind == OracleKind::kHpcEvalDropper) {
    const int s = ((prompt.seed - 1) % 10 + 10) % 10 + 1;
    if (prompt.style == HpcPromptStyle::kExplicit) {
      if (s >= 8) steps = 3;
    } else {
      if (s == 10) steps = 1;
      else if (s == 9) steps = 2;
      else if (s >= 6) steps = 3;
    }
  }
  HpcRunRecord r;
  for (int i = 0; i < steps; ++i) r.steps_completed.insert(order[i]);
  r.config_step_called = true;
  r.config_matches = true;
  r.eval_step_called = steps == 4;
  r.metrics_extracted = steps == 4 ? 6 : 0;
  return r;
}

}  // namespace wfbench
