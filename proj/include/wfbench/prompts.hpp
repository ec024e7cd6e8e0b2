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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfbench/backend.hpp"
#include "wfbench/types.hpp"

namespace wfbench {

enum class Style { kFull, kNatural, kWRand, kWDerived, kWDistract, kWCond, kWMulti };

std::string_view style_name(Style style);
Style parse_style(std::string_view name);
const std::vector<Style>& all_styles();
/// Styles that end in an STL export.
bool is_export_style(Style style);

enum class ExpectKind { kFixed, kDerived, kConditional, kMulti };

struct ExportExpectation {
  ExpectKind kind = ExpectKind::kFixed;
  std::optional<ExportParams> fixed;  // fixed and derived
  std::optional<double> pivot;        // conditional
  std::optional<ExportParams> branch_high;
  std::optional<ExportParams> branch_low;
  std::optional<std::array<ExportParams, 2>> exports;  // multi, A then B

  void validate() const;
};

struct PromptInstance {
  Style style = Style::kFull;
  ProblemSpec spec;
  DesignParams params;
  std::optional<ExportExpectation> export_expect;
  std::optional<ExportParams> distractors;  // W-Distract preview values
  std::uint64_t seed = 0;
  int sample = 0;
  std::string prompt_text;

  void validate() const;
};

// Sampling intervals for randomized export parameters.
inline constexpr double kThresholdMin = 0.30, kThresholdMax = 0.70;
inline constexpr double kScaleXyMin = 0.5, kScaleXyMax = 4.0;
inline constexpr double kScaleZMin = 5.0, kScaleZMax = 25.0;

/// Problem parameters of a dataset sample; identical across styles and seeds.
DesignParams sample_design_params(ProblemId problem, int sample);

/// W-Derived rules: threshold = volfrac, mirror = volfrac > 0.4,
/// scale_xy = 2 rmin, scale_z = 40 threshold.
ExportParams derive_export(const DesignParams& params);

PromptInstance sample_instance(Style style, ProblemId problem, std::uint64_t seed,
                               int sample,
                               const ProblemBackend& backend = SyntheticBackend{});

std::string render_prompt(const PromptInstance& instance);

/// Qualitative phrasing used by the Natural style, and its inverse bands.
std::string volfrac_phrase(double volfrac);
std::string forcedist_phrase(double forcedist);
struct Band {
  double lo, hi;  // [lo, hi)
};
Band volfrac_band(std::string_view phrase);
Band forcedist_band(std::string_view phrase);

std::vector<Tool> expected_plan(Style style);
inline std::vector<Tool> expected_plan(const PromptInstance& instance) {
  return expected_plan(instance.style);
}

Json to_json(const ExportExpectation& e);
ExportExpectation export_expectation_from_json(const Json& j);
Json to_json(const PromptInstance& instance);
PromptInstance prompt_instance_from_json(const Json& j);

// HPC training and retrieval prompts are fixed texts.
enum class HpcPromptStyle { kExplicit, kNatural };
struct HpcPrompt {
  HpcPromptStyle style = HpcPromptStyle::kExplicit;
  int seed = 1;
  int epochs = 100;
  std::string algorithm = "cgan_cnn_2d";
  std::string problem_id = "beams2d";
};
std::string render_hpc_prompt(const HpcPrompt& prompt);

enum class RagPromptId { kP0, kP1, kP2, kP3 };
std::string_view rag_prompt_name(RagPromptId id);
RagPromptId parse_rag_prompt(std::string_view name);
std::string render_rag_prompt(RagPromptId id);

}  // namespace wfbench
