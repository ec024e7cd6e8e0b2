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

#include "wfbench/backend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wfbench/rng.hpp"

namespace wfbench {

namespace {

constexpr int kModes = 8;
constexpr double kSharpness = 10.0;
constexpr int kBraces = 2;
constexpr double kSkeletonSlope = 20.0;
constexpr double kNoiseWeight = 0.25;

double segment_distance(double px, double py, double x0, double y0, double x1,
                        double y1) {
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - x0) * dx + (py - y0) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (x0 + t * dx), py - (y0 + t * dy));
}

// Separable box filter with clamped borders; radius 0 is the identity.
RowMajorArray<double> box_filter(const RowMajorArray<double>& in, int radius) {
  if (radius <= 0) return in;
  const Eigen::Index rows = in.rows();
  const Eigen::Index cols = in.cols();
  RowMajorArray<double> tmp(rows, cols);
  RowMajorArray<double> out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double sum = 0.0;
      int n = 0;
      for (Eigen::Index k = std::max<Eigen::Index>(0, c - radius);
           k <= std::min<Eigen::Index>(cols - 1, c + radius); ++k) {
        sum += in(r, k);
        ++n;
      }
      tmp(r, c) = sum / n;
    }
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double sum = 0.0;
      int n = 0;
      for (Eigen::Index k = std::max<Eigen::Index>(0, r - radius);
           k <= std::min<Eigen::Index>(rows - 1, r + radius); ++k) {
        sum += tmp(k, c);
        ++n;
      }
      out(r, c) = sum / n;
    }
  }
  return out;
}

double sigmoid_mean(const RowMajorArray<double>& z, double shift) {
  double sum = 0.0;
  const double* p = z.data();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    sum += 1.0 / (1.0 + std::exp(-kSharpness * (p[i] - shift)));
  }
  return sum / static_cast<double>(z.size());
}

}  // namespace

std::string_view problem_name(ProblemId id) {
  return id == ProblemId::kBeams2d ? "beams2d" : "photonics2d";
}

ProblemId parse_problem(std::string_view name) {
  if (name == "beams2d") return ProblemId::kBeams2d;
  if (name == "photonics2d") return ProblemId::kPhotonics2d;
  throw Error("unknown problem '" + std::string(name) + "'");
}

ProblemSpec ProblemSpec::for_problem(ProblemId id) {
  if (id == ProblemId::kBeams2d) {
    return {id, 50, 100, "compliance", ObjectiveSense::kMinimize};
  }
  return {id, 120, 120, "total_overlap", ObjectiveSense::kMaximize};
}

void ProblemSpec::validate() const {
  if (!(*this == for_problem(problem_id))) {
    throw Error("problem spec does not match the fixed definition of " +
                std::string(problem_name(problem_id)));
  }
}

Json to_json(const ProblemSpec& spec) {
  return Json{{"problem_id", std::string(problem_name(spec.problem_id))},
              {"rows", spec.rows},
              {"cols", spec.cols},
              {"objective_name", spec.objective_name},
              {"objective_sense", spec.objective_sense == ObjectiveSense::kMinimize
                                      ? "minimize"
                                      : "maximize"}};
}

ProblemSpec problem_spec_from_json(const Json& j) {
  const auto id = parse_problem(j.at("problem_id").get<std::string>());
  ProblemSpec spec = ProblemSpec::for_problem(id);
  if (j.contains("rows")) spec.rows = j.at("rows").get<int>();
  if (j.contains("cols")) spec.cols = j.at("cols").get<int>();
  spec.validate();
  return spec;
}

DesignGrid synth_optimize(const ProblemSpec& spec, const DesignParams& params) {
  params.validate();
  const int rows = spec.rows;
  const int cols = spec.cols;
  SplitMix64 rng(hash_combine(
      {hash_string(problem_name(spec.problem_id)), params.seed}));

  struct Mode {
    double fx, fy, phase, amp;
  };
  std::vector<Mode> modes;
  for (int k = 0; k < kModes; ++k) {
    Mode m;
    m.fx = 0.5 + 2.5 * rng.uniform();
    m.fy = 0.5 + 2.5 * rng.uniform();
    m.phase = 2.0 * std::numbers::pi * rng.uniform();
    m.amp = 0.5 + rng.uniform();
    modes.push_back(m);
  }

  // Load path: a seeded tree of segments from the support to the load point.
  // Distance to it dominates the field, so every level set is one connected
  // tube and the modes only roughen its boundary.
  struct Segment {
    double x0, y0, x1, y1;
  };
  const double support_y = 0.2 + 0.6 * rng.uniform();
  const double load_y = 0.5 - 0.4 * (params.forcedist - 0.5);
  std::vector<Segment> skeleton{{0.0, support_y, 1.0, load_y}};
  for (int k = 0; k < kBraces; ++k) {
    const double t = 0.15 + 0.7 * rng.uniform();
    const double bx = t;
    const double by = support_y + t * (load_y - support_y);
    const double ex = rng.uniform();
    const double ey = rng.coin() ? 0.0 : 1.0;
    skeleton.push_back({bx, by, ex, ey});
  }
  double amp_sum = 0.0;
  for (const auto& m : modes) amp_sum += m.amp;

  // rmin also nudges the phases so sub-integer changes stay visible.
  const double rmin_phase = 0.35 * params.rmin;
  RowMajorArray<double> field(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const double y = rows > 1 ? static_cast<double>(r) / (rows - 1) : 0.0;
    for (int c = 0; c < cols; ++c) {
      const double x = cols > 1 ? static_cast<double>(c) / (cols - 1) : 0.0;
      double noise = 0.0;
      for (const auto& m : modes) {
        noise += m.amp * std::cos(2.0 * std::numbers::pi * (m.fx * x + m.fy * y) +
                                  m.phase + rmin_phase);
      }
      double d = std::numeric_limits<double>::infinity();
      for (const auto& s : skeleton) d = std::min(d, segment_distance(x, y, s.x0, s.y0, s.x1, s.y1));
      double v = -kSkeletonSlope * d + kNoiseWeight * noise / amp_sum;
      // Force ramp: material gathers toward the loaded side as forcedist grows.
      v += 0.5 * params.forcedist * (x - 0.5);
      field(r, c) = v;
    }
  }

  RowMajorArray<double> smooth =
      box_filter(field, static_cast<int>(std::lround(params.rmin)));
  const double lo = smooth.minCoeff();
  const double hi = smooth.maxCoeff();
  const double span = hi > lo ? hi - lo : 1.0;
  smooth = (smooth - lo) / span;

  // sigmoid_mean is strictly decreasing in the shift.
  double a = -6.0;
  double b = 7.0;
  for (int it = 0; it < 200 && b - a > 0.0; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    if (sigmoid_mean(smooth, mid) > params.volfrac) {
      a = mid;
    } else {
      b = mid;
    }
  }
  const double shift = 0.5 * (a + b);
  RowMajorArray<double> cells(rows, cols);
  for (Eigen::Index i = 0; i < cells.size(); ++i) {
    cells.data()[i] =
        1.0 / (1.0 + std::exp(-kSharpness * (smooth.data()[i] - shift)));
  }
  return DesignGrid(std::move(cells));
}

double simulate_jitter(ProblemId id, std::uint64_t seed) {
  return hash_fraction(hash_combine({hash_string("simulate"), seed,
                                     hash_string(problem_name(id))}));
}

SimulationResult synth_simulate(const ProblemSpec& spec, const DesignGrid& grid,
                                const DesignParams& params) {
  if (grid.rows() != spec.rows || grid.cols() != spec.cols) {
    throw Error("design is " + std::to_string(grid.rows()) + "x" +
                std::to_string(grid.cols()) + ", problem expects " +
                std::to_string(spec.rows) + "x" + std::to_string(spec.cols));
  }
  const double density = mean_density(grid);
  if (density <= 0.0) throw Error("cannot simulate an empty design");
  constexpr double kC0 = 100.0;
  const double u = simulate_jitter(spec.problem_id, params.seed);
  SimulationResult result;
  result.objective_value =
      kC0 * (1.0 / density) * (1.0 + 0.5 * params.forcedist) * (1.0 + 0.1 * u);
  result.achieved_volfrac = density;
  return result;
}

DesignGrid SyntheticBackend::optimize(const ProblemSpec& spec,
                                      const DesignParams& params) const {
  return synth_optimize(spec, params);
}

SimulationResult SyntheticBackend::simulate(const ProblemSpec& spec,
                                            const DesignGrid& grid,
                                            const DesignParams& params) const {
  return synth_simulate(spec, grid, params);
}

std::vector<std::uint8_t> render_design(const DesignGrid& grid) {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(grid.size()));
  const double* p = grid.array().data();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - p[i])));
  }
  return pixels;
}

std::string to_pgm(const DesignGrid& grid) {
  std::string out = "P5\n" + std::to_string(grid.cols()) + " " +
                    std::to_string(grid.rows()) + "\n255\n";
  const auto pixels = render_design(grid);
  out.append(pixels.begin(), pixels.end());
  return out;
}

}  // namespace wfbench
