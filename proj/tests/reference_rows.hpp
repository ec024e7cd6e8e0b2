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
#include <string_view>

// Reported per-cell means (IoU, PA, Obj, Constr, Conn, WT, ToolEff, TC, DQ, CO);
// a dash in the WT column is recorded as 0.00.
struct ReferenceRow {
  std::string_view problem;
  std::string_view style;
  std::string_view model;
  double iou, pa, obj, constr, conn, wt, tool_eff, tc, dq, co;
};

inline constexpr std::array<ReferenceRow, 40> kReferenceRows{{
    {"beams2d", "Full", "GPT-5-mini", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.72, 1.00, 0.54, 0.65},
    {"beams2d", "Full", "Gemini-3-Flash", 0.39, 0.72, 0.49, 1.00, 0.73, 0.00, 0.98, 0.93, 0.54, 0.69},
    {"beams2d", "Full", "Qwen3-4B", 0.40, 0.73, 0.16, 1.00, 0.67, 0.00, 0.67, 0.00, 0.49, 0.45},
    {"beams2d", "Full", "Qwen3.5-4B", 0.40, 0.73, 0.37, 1.00, 0.67, 0.00, 0.72, 0.73, 0.52, 0.59},
    {"beams2d", "Natural", "GPT-5-mini", 0.39, 0.73, 0.04, 0.09, 0.75, 0.00, 0.75, 0.87, 0.37, 0.82},
    {"beams2d", "Natural", "Gemini-3-Flash", 0.34, 0.69, 0.10, 0.13, 0.67, 0.00, 0.81, 1.00, 0.35, 0.88},
    {"beams2d", "Natural", "Qwen3-4B", 0.46, 0.72, 0.24, 0.05, 1.00, 0.00, 0.00, 0.00, 0.44, 0.29},
    {"beams2d", "Natural", "Qwen3.5-4B", 0.47, 0.74, 0.13, 0.06, 0.91, 0.00, 0.28, 0.33, 0.42, 0.48},
    {"beams2d", "W-Rand", "GPT-5-mini", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.77, 1.00, 0.54, 0.66},
    {"beams2d", "W-Rand", "Gemini-3-Flash", 0.40, 0.73, 0.35, 1.00, 0.73, 0.00, 0.80, 1.00, 0.52, 0.65},
    {"beams2d", "W-Rand", "Qwen3-4B", 0.39, 0.72, 0.48, 1.00, 0.87, 0.00, 0.63, 1.00, 0.55, 0.64},
    {"beams2d", "W-Rand", "Qwen3.5-4B", 0.40, 0.73, 0.38, 1.00, 0.71, 0.00, 1.00, 1.00, 0.53, 0.69},
    {"beams2d", "W-Derived", "GPT-5-mini", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.76, 1.00, 0.54, 0.65},
    {"beams2d", "W-Derived", "Gemini-3-Flash", 0.41, 0.74, 0.36, 0.93, 0.53, 0.00, 0.81, 1.00, 0.50, 0.64},
    {"beams2d", "W-Derived", "Qwen3-4B", 0.40, 0.73, 0.28, 1.00, 0.73, 0.00, 0.64, 0.47, 0.51, 0.53},
    {"beams2d", "W-Derived", "Qwen3.5-4B", 0.41, 0.73, 0.43, 1.00, 0.62, 0.00, 0.95, 0.85, 0.52, 0.66},
    {"beams2d", "W-Distract", "GPT-5-mini", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.63, 1.00, 0.54, 0.63},
    {"beams2d", "W-Distract", "Gemini-3-Flash", 0.41, 0.74, 0.40, 1.00, 0.53, 0.00, 0.72, 1.00, 0.51, 0.63},
    {"beams2d", "W-Distract", "Qwen3-4B", 0.39, 0.73, 0.41, 1.00, 0.73, 0.00, 0.60, 1.00, 0.53, 0.61},
    {"beams2d", "W-Distract", "Qwen3.5-4B", 0.40, 0.73, 0.42, 1.00, 0.67, 0.00, 0.88, 0.93, 0.53, 0.66},
    {"beams2d", "W-Cond", "GPT-5-mini", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.84, 0.93, 0.54, 0.66},
    {"beams2d", "W-Cond", "Gemini-3-Flash", 0.40, 0.73, 0.40, 0.93, 0.87, 0.00, 0.86, 0.87, 0.54, 0.65},
    {"beams2d", "W-Cond", "Qwen3-4B", 0.39, 0.72, 0.48, 1.00, 0.87, 0.00, 0.76, 0.40, 0.55, 0.57},
    {"beams2d", "W-Cond", "Qwen3.5-4B", 0.40, 0.73, 0.33, 1.00, 0.67, 0.00, 1.00, 0.60, 0.51, 0.62},
    {"beams2d", "W-Multi", "GPT-5-mini", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.87, 0.93, 0.54, 0.66},
    {"beams2d", "W-Multi", "Gemini-3-Flash", 0.40, 0.73, 0.52, 1.00, 0.67, 0.00, 0.99, 1.00, 0.54, 0.70},
    {"beams2d", "W-Multi", "Qwen3-4B", 0.40, 0.73, 0.34, 1.00, 0.80, 0.00, 0.78, 1.00, 0.53, 0.65},
    {"beams2d", "W-Multi", "Qwen3.5-4B", 0.42, 0.74, 0.42, 1.00, 0.64, 0.00, 1.00, 1.00, 0.53, 0.69},
    {"photonics2d", "W-Rand", "GPT-5-mini", 0.32, 0.89, 0.00, 1.00, 0.00, 0.00, 0.63, 1.00, 0.39, 0.53},
    {"photonics2d", "W-Rand", "Gemini-3-Flash", 0.31, 0.89, 0.01, 1.00, 0.00, 0.00, 0.97, 1.00, 0.39, 0.60},
    {"photonics2d", "W-Rand", "Qwen3-4B", 0.31, 0.89, 0.04, 1.00, 0.00, 0.00, 0.75, 1.00, 0.39, 0.56},
    {"photonics2d", "W-Rand", "Qwen3.5-4B", 0.31, 0.89, 0.03, 1.00, 0.00, 0.00, 0.73, 1.00, 0.39, 0.55},
    {"photonics2d", "W-Distract", "GPT-5-mini", 0.31, 0.89, 0.02, 1.00, 0.00, 0.00, 0.59, 1.00, 0.39, 0.52},
    {"photonics2d", "W-Distract", "Gemini-3-Flash", 0.32, 0.89, 0.05, 1.00, 0.00, 0.00, 0.72, 1.00, 0.40, 0.55},
    {"photonics2d", "W-Distract", "Qwen3-4B", 0.31, 0.89, 0.04, 1.00, 0.00, 0.00, 0.58, 1.00, 0.39, 0.52},
    {"photonics2d", "W-Distract", "Qwen3.5-4B", 0.32, 0.89, 0.05, 1.00, 0.00, 0.00, 0.82, 1.00, 0.40, 0.57},
    {"photonics2d", "W-Cond", "GPT-5-mini", 0.32, 0.89, 0.06, 1.00, 0.00, 0.00, 0.78, 0.40, 0.40, 0.47},
    {"photonics2d", "W-Cond", "Gemini-3-Flash", 0.31, 0.89, 0.08, 1.00, 0.00, 0.00, 1.00, 0.53, 0.40, 0.54},
    {"photonics2d", "W-Cond", "Qwen3-4B", 0.31, 0.89, 0.04, 1.00, 0.00, 0.00, 0.70, 0.20, 0.39, 0.43},
    {"photonics2d", "W-Cond", "Qwen3.5-4B", 0.32, 0.89, 0.04, 1.00, 0.00, 0.00, 0.82, 0.47, 0.39, 0.49},
}};
