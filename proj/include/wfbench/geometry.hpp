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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wfbench/types.hpp"

namespace wfbench {

struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<std::int64_t, 3>> triangles;  // outward CCW winding

  /// Index range and non-zero area.
  void validate() const;
};

/// Reverses column order in every row.
BinaryGrid mirror_y(const BinaryGrid& grid);

/// Naive per-cell extrusion: each material cell becomes a
/// scale_xy x scale_xy x scale_z box on a shared vertex lattice. Faces
/// between edge-adjacent material cells are dropped; diagonal-only neighbours
/// end up sharing a single vertical edge, which is non-manifold.
TriangleMesh extrude_to_mesh(const BinaryGrid& grid, double scale_xy,
                             double scale_z);

/// threshold -> optional mirror -> extrude, as the export tool applies it.
TriangleMesh export_mesh(const DesignGrid& design, const ExportParams& params);

/// Binary STL, little-endian, normals recomputed from winding.
std::string write_stl(const TriangleMesh& mesh);

struct StlTriangle {
  std::array<float, 3> normal;
  std::array<std::array<float, 3>, 3> vertices;
  std::uint16_t attribute = 0;
};

std::vector<StlTriangle> read_stl(std::string_view bytes);

struct WatertightReport {
  bool watertight = false;
  // Undirected edges (vertex index pairs, smaller first) that are not shared
  // by exactly one triangle in each direction.
  std::vector<std::array<std::int64_t, 2>> bad_edges;
};

WatertightReport is_watertight(const TriangleMesh& mesh);

/// 1 if every material cell lies in one 8-connected component, else 0 (also
/// 0 for an empty design).
int connectivity_2d(const BinaryGrid& grid);

}  // namespace wfbench
