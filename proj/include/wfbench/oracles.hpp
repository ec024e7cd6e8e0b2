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

#include <string_view>
#include <vector>

#include "wfbench/backend.hpp"
#include "wfbench/prompts.hpp"
#include "wfbench/scoring.hpp"
#include "wfbench/types.hpp"

namespace wfbench {

enum class OracleKind {
  kPerfect,
  kBranchInverter,
  kOverCaller,
  kRenderOmitter,
  kClarificationBlind,
  kDistractConfused,
  kHpcPerfect,
  kHpcEvalDropper,
};

std::string_view oracle_name(OracleKind kind);
OracleKind parse_oracle(std::string_view name);
/// The six workflow oracles, in report order.
const std::vector<OracleKind>& workflow_oracles();
bool is_hpc_oracle(OracleKind kind);
bool oracle_applies(OracleKind kind, Style style);

struct OracleOptions {
  int redundant_simulations = 1;  // over_caller N
  /// Parameters clarification_blind assumes when it never asks.
  DesignParams blind_defaults{0.5, 0.5, 2.0, 0};
};

Trace run_oracle(OracleKind kind, const PromptInstance& instance,
                 const ProblemBackend& backend = SyntheticBackend{},
                 const OracleOptions& options = {});

/// Step-completion record of a scripted HPC run. The dropper follows fixed
/// per-seed schedules: explicit prompts skip evaluate on seeds 8-10; natural
/// prompts stop after generate on seed 10, after submit on seed 9 and after
/// monitor on seeds 6-8. Seeds are taken modulo 10 onto 1..10.
HpcRunRecord run_hpc_oracle(OracleKind kind, const HpcPrompt& prompt);

}  // namespace wfbench
