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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wfbench/types.hpp"

namespace wfbench {

enum class ProblemId { kBeams2d, kPhotonics2d };
enum class ObjectiveSense { kMinimize, kMaximize };

std::string_view problem_name(ProblemId id);
ProblemId parse_problem(std::string_view name);

struct ProblemSpec {
  ProblemId problem_id = ProblemId::kBeams2d;
  int rows = 50;
  int cols = 100;
  std::string objective_name = "compliance";
  ObjectiveSense objective_sense = ObjectiveSense::kMinimize;

  /// beams2d: 50x100 compliance (minimize); photonics2d: 120x120
  /// total_overlap (maximize).
  static ProblemSpec for_problem(ProblemId id);
  void validate() const;
  bool operator==(const ProblemSpec&) const = default;
};

Json to_json(const ProblemSpec& spec);
ProblemSpec problem_spec_from_json(const Json& j);

struct SimulationResult {
  double objective_value = 0.0;
  double achieved_volfrac = 0.0;
  bool operator==(const SimulationResult&) const = default;
};

/// Physics stand-in. Implementations must be pure: equal inputs give equal
/// outputs.
class ProblemBackend {
 public:
  virtual ~ProblemBackend() = default;
  virtual DesignGrid optimize(const ProblemSpec& spec,
                              const DesignParams& params) const = 0;
  virtual SimulationResult simulate(const ProblemSpec& spec,
                                    const DesignGrid& grid,
                                    const DesignParams& params) const = 0;
};

class SyntheticBackend final : public ProblemBackend {
 public:
  DesignGrid optimize(const ProblemSpec& spec,
                      const DesignParams& params) const override;
  SimulationResult simulate(const ProblemSpec& spec, const DesignGrid& grid,
                            const DesignParams& params) const override;
};

/// Smooth seeded field, force ramp, box filter of radius round(rmin), then a
/// sigmoid level shift solved so the mean density equals volfrac.
DesignGrid synth_optimize(const ProblemSpec& spec, const DesignParams& params);

/// C0 / mean_density * (1 + 0.5 forcedist) * (1 + 0.1 u), C0 = 100.
SimulationResult synth_simulate(const ProblemSpec& spec, const DesignGrid& grid,
                                const DesignParams& params);

/// The hash-derived u in [0,1) used by synth_simulate.
double simulate_jitter(ProblemId id, std::uint64_t seed);

/// 8-bit grayscale, one pixel per cell, row-major: round(255 * (1 - v)).
std::vector<std::uint8_t> render_design(const DesignGrid& grid);

/// Binary PGM (P5) of render_design.
std::string to_pgm(const DesignGrid& grid);

}  // namespace wfbench
