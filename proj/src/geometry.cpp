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

#include "wfbench/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <tuple>

#include <Eigen/Geometry>

namespace wfbench {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(std::string_view bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
  }
  return v;
}

float get_f32(std::string_view bytes, std::size_t at) {
  return std::bit_cast<float>(get_u32(bytes, at));
}

class LatticeBuilder {
 public:
  LatticeBuilder(int rows, int cols, double pitch, double height)
      : rows_(rows), cols_(cols), pitch_(pitch), height_(height),
        ids_(static_cast<std::size_t>(rows + 1) * (cols + 1) * 2, -1) {}

  // Lattice point (i along x, j along y, k in {0,1} along z).
  std::int64_t vertex(int i, int j, int k) {
    auto& id = ids_[(static_cast<std::size_t>(j) * (cols_ + 1) + i) * 2 + k];
    if (id < 0) {
      id = static_cast<std::int64_t>(mesh_.vertices.size());
      mesh_.vertices.emplace_back(i * pitch_, j * pitch_, k * height_);
    }
    return id;
  }

  // Quad given CCW as seen from outside.
  void quad(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    mesh_.triangles.push_back({a, b, c});
    mesh_.triangles.push_back({a, c, d});
  }

  TriangleMesh take() { return std::move(mesh_); }
  int rows() const { return rows_; }

 private:
  int rows_, cols_;
  double pitch_, height_;
  std::vector<std::int64_t> ids_;
  TriangleMesh mesh_;
};

}  // namespace

void TriangleMesh::validate() const {
  const auto n = static_cast<std::int64_t>(vertices.size());
  for (const auto& t : triangles) {
    for (auto v : t) {
      if (v < 0 || v >= n) throw Error("triangle vertex index out of range");
    }
    const Eigen::Vector3d e1 = vertices[t[1]] - vertices[t[0]];
    const Eigen::Vector3d e2 = vertices[t[2]] - vertices[t[0]];
    if (e1.cross(e2).norm() == 0.0) throw Error("degenerate triangle");
  }
}

BinaryGrid mirror_y(const BinaryGrid& grid) {
  return BinaryGrid(RowMajorArray<bool>(grid.array().rowwise().reverse()));
}

TriangleMesh extrude_to_mesh(const BinaryGrid& grid, double scale_xy,
                             double scale_z) {
  if (!std::isfinite(scale_xy) || scale_xy <= 0.0 || !std::isfinite(scale_z) ||
      scale_z <= 0.0) {
    throw Error("extrusion scales must be positive");
  }
  if (grid.material_count() == 0) throw Error("cannot extrude an empty design");

  const int rows = grid.rows();
  const int cols = grid.cols();
  auto material = [&](int r, int c) {
    return r >= 0 && r < rows && c >= 0 && c < cols && grid(r, c);
  };

  LatticeBuilder b(rows, cols, scale_xy, scale_z);
  for (int r = 0; r < rows; ++r) {
    // Row 0 is the top of the design, so it sits at the largest y.
    const int j0 = rows - 1 - r;
    const int j1 = j0 + 1;
    for (int c = 0; c < cols; ++c) {
      if (!grid(r, c)) continue;
      const int i0 = c;
      const int i1 = c + 1;
      b.quad(b.vertex(i0, j0, 1), b.vertex(i1, j0, 1), b.vertex(i1, j1, 1),
             b.vertex(i0, j1, 1));
      b.quad(b.vertex(i0, j0, 0), b.vertex(i0, j1, 0), b.vertex(i1, j1, 0),
             b.vertex(i1, j0, 0));
      if (!material(r, c + 1)) {
        b.quad(b.vertex(i1, j0, 0), b.vertex(i1, j1, 0), b.vertex(i1, j1, 1),
               b.vertex(i1, j0, 1));
      }
      if (!material(r, c - 1)) {
        b.quad(b.vertex(i0, j0, 0), b.vertex(i0, j0, 1), b.vertex(i0, j1, 1),
               b.vertex(i0, j1, 0));
      }
      if (!material(r - 1, c)) {
        b.quad(b.vertex(i0, j1, 0), b.vertex(i0, j1, 1), b.vertex(i1, j1, 1),
               b.vertex(i1, j1, 0));
      }
      if (!material(r + 1, c)) {
        b.quad(b.vertex(i0, j0, 0), b.vertex(i1, j0, 0), b.vertex(i1, j0, 1),
               b.vertex(i0, j0, 1));
      }
    }
  }
  return b.take();
}

TriangleMesh export_mesh(const DesignGrid& design, const ExportParams& params) {
  params.validate();
  BinaryGrid bin = binarize(design, params.threshold);
  if (params.mirror_y) bin = mirror_y(bin);
  return extrude_to_mesh(bin, params.scale_xy, params.scale_z);
}

std::string write_stl(const TriangleMesh& mesh) {
  if (mesh.triangles.empty()) throw Error("cannot write an STL with no triangles");
  if (mesh.triangles.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("triangle count exceeds the 32-bit STL limit");
  }
  mesh.validate();
  std::string out(80, '\0');
  const char tag[] = "wfbench binary STL";
  std::memcpy(out.data(), tag, sizeof tag - 1);
  out.reserve(84 + 50 * mesh.triangles.size());
  put_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const auto& t : mesh.triangles) {
    const Eigen::Vector3d& a = mesh.vertices[t[0]];
    const Eigen::Vector3d& b = mesh.vertices[t[1]];
    const Eigen::Vector3d& c = mesh.vertices[t[2]];
    const Eigen::Vector3d n = (b - a).cross(c - a).normalized();
    for (int k = 0; k < 3; ++k) put_f32(out, static_cast<float>(n[k]));
    for (const auto* v : {&a, &b, &c}) {
      for (int k = 0; k < 3; ++k) put_f32(out, static_cast<float>((*v)[k]));
    }
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

std::vector<StlTriangle> read_stl(std::string_view bytes) {
  if (bytes.size() < 84) throw Error("STL shorter than its 84-byte preamble");
  const std::uint32_t count = get_u32(bytes, 80);
  if (bytes.size() != 84 + 50ull * count) {
    throw Error("STL length does not match its triangle count");
  }
  std::vector<StlTriangle> tris(count);
  std::size_t at = 84;
  for (auto& t : tris) {
    for (int k = 0; k < 3; ++k) t.normal[k] = get_f32(bytes, at + 4 * k);
    at += 12;
    for (auto& v : t.vertices) {
      for (int k = 0; k < 3; ++k) v[k] = get_f32(bytes, at + 4 * k);
      at += 12;
    }
    t.attribute = static_cast<std::uint16_t>(
        static_cast<unsigned char>(bytes[at]) |
        (static_cast<unsigned char>(bytes[at + 1]) << 8));
    at += 2;
  }
  return tris;
}

WatertightReport is_watertight(const TriangleMesh& mesh) {
  // (lo, hi, forward) for every directed edge; sorted so each undirected edge
  // forms a contiguous run.
  std::vector<std::tuple<std::int64_t, std::int64_t, bool>> edges;
  edges.reserve(mesh.triangles.size() * 3);
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const auto a = t[k];
      const auto b = t[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b), a < b);
    }
  }
  std::sort(edges.begin(), edges.end());

  WatertightReport report;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    int forward = 0;
    int backward = 0;
    while (j < edges.size() && std::get<0>(edges[j]) == std::get<0>(edges[i]) &&
           std::get<1>(edges[j]) == std::get<1>(edges[i])) {
      (std::get<2>(edges[j]) ? forward : backward) += 1;
      ++j;
    }
    if (forward != 1 || backward != 1) {
      report.bad_edges.push_back({std::get<0>(edges[i]), std::get<1>(edges[i])});
    }
    i = j;
  }
  report.watertight = !mesh.triangles.empty() && report.bad_edges.empty();
  return report;
}

int connectivity_2d(const BinaryGrid& grid) {
  const int rows = grid.rows();
  const int cols = grid.cols();
  const auto total = grid.material_count();
  if (total == 0) return 0;

  std::vector<char> seen(static_cast<std::size_t>(rows) * cols, 0);
  std::vector<int> stack;
  int start = -1;
  for (int i = 0; i < rows * cols && start < 0; ++i) {
    if (grid(i / cols, i % cols)) start = i;
  }
  stack.push_back(start);
  seen[start] = 1;
  Eigen::Index reached = 0;
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    ++reached;
    const int r = cur / cols;
    const int c = cur % cols;
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const int nr = r + dr;
        const int nc = c + dc;
        if ((dr == 0 && dc == 0) || nr < 0 || nr >= rows || nc < 0 || nc >= cols) {
          continue;
        }
        const int idx = nr * cols + nc;
        if (!seen[idx] && grid(nr, nc)) {
          seen[idx] = 1;
          stack.push_back(idx);
        }
      }
    }
  }
  return reached == total ? 1 : 0;
}

}  // namespace wfbench
