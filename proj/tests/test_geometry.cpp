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

#include <doctest.h>

#include <queue>
#include <random>

#include "wfbench/geometry.hpp"

using namespace wfbench;

namespace {

BinaryGrid bits(int rows, int cols, std::vector<bool> cells) {
  return BinaryGrid(rows, cols, cells);
}

BinaryGrid random_bits(std::mt19937_64& gen, int rows, int cols, double p) {
  std::bernoulli_distribution b(p);
  std::vector<bool> cells(static_cast<std::size_t>(rows * cols));
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = b(gen);
  return BinaryGrid(rows, cols, cells);
}

// Reference: 2 triangles per top and bottom face, 2 per exposed side.
std::size_t expected_triangles(const BinaryGrid& g) {
  std::size_t n = 0;
  auto at = [&](int r, int c) {
    return r >= 0 && c >= 0 && r < g.rows() && c < g.cols() && g(r, c);
  };
  for (int r = 0; r < g.rows(); ++r) {
    for (int c = 0; c < g.cols(); ++c) {
      if (!g(r, c)) continue;
      n += 4;
      n += 2 * (!at(r - 1, c) + !at(r + 1, c) + !at(r, c - 1) + !at(r, c + 1));
    }
  }
  return n;
}

bool has_diagonal_only_contact(const BinaryGrid& g) {
  for (int r = 0; r + 1 < g.rows(); ++r) {
    for (int c = 0; c + 1 < g.cols(); ++c) {
      const bool a = g(r, c), b = g(r, c + 1), d = g(r + 1, c), e = g(r + 1, c + 1);
      if ((a && e && !b && !d) || (b && d && !a && !e)) return true;
    }
  }
  return false;
}

// Reference: BFS over 8-neighbours.
int reference_connectivity(const BinaryGrid& g) {
  int total = 0, sr = -1, sc = -1;
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g(r, c)) {
        ++total;
        if (sr < 0) sr = r, sc = c;
      }
  if (total == 0) return 0;
  std::vector<char> seen(static_cast<std::size_t>(g.rows() * g.cols()), 0);
  std::queue<std::pair<int, int>> q;
  q.push({sr, sc});
  seen[static_cast<std::size_t>(sr * g.cols() + sc)] = 1;
  int reached = 0;
  while (!q.empty()) {
    auto [r, c] = q.front();
    q.pop();
    ++reached;
    for (int dr = -1; dr <= 1; ++dr)
      for (int dc = -1; dc <= 1; ++dc) {
        const int nr = r + dr, nc = c + dc;
        if (nr < 0 || nc < 0 || nr >= g.rows() || nc >= g.cols() || !g(nr, nc)) continue;
        auto& s = seen[static_cast<std::size_t>(nr * g.cols() + nc)];
        if (!s) s = 1, q.push({nr, nc});
      }
  }
  return reached == total ? 1 : 0;
}

}  // namespace

TEST_CASE("single cell extrudes to a watertight box") {
  const auto mesh = extrude_to_mesh(bits(1, 1, {true}), 1.0, 1.0);
  CHECK(mesh.triangles.size() == 12);
  CHECK(mesh.vertices.size() == 8);
  CHECK_NOTHROW(mesh.validate());
  CHECK(is_watertight(mesh).watertight);
  CHECK(write_stl(mesh).size() == 684);
}

TEST_CASE("edge-adjacent pair shares its inner face") {
  const auto mesh = extrude_to_mesh(bits(1, 2, {true, true}), 1.0, 1.0);
  CHECK(mesh.triangles.size() == 20);
  CHECK(is_watertight(mesh).watertight);
}

TEST_CASE("diagonal-only contact is not watertight") {
  const auto mesh = extrude_to_mesh(bits(2, 2, {true, false, false, true}), 1.0, 1.0);
  const auto rep = is_watertight(mesh);
  CHECK_FALSE(rep.watertight);
  CHECK(rep.bad_edges.size() == 1);
  CHECK(connectivity_2d(bits(2, 2, {true, false, false, true})) == 1);
}

TEST_CASE("empty grid cannot be extruded") {
  CHECK_THROWS_AS(extrude_to_mesh(bits(2, 2, {false, false, false, false}), 1.0, 1.0), Error);
  CHECK(connectivity_2d(bits(2, 2, {false, false, false, false})) == 0);
}

TEST_CASE("mesh dimensions follow the scales") {
  const auto mesh = extrude_to_mesh(bits(2, 3, {true, true, true, true, true, true}), 2.5, 7.0);
  Eigen::Vector3d lo = mesh.vertices[0], hi = mesh.vertices[0];
  for (const auto& v : mesh.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Eigen::Vector3d extent = hi - lo;
  CHECK(extent.x() == doctest::Approx(7.5));
  CHECK(extent.y() == doctest::Approx(5.0));
  CHECK(extent.z() == doctest::Approx(7.0));
}

TEST_CASE("triangle count and watertightness on random grids") {
  std::mt19937_64 gen(11);
  int checked_closed = 0, checked_open = 0;
  for (int t = 0; t < 200; ++t) {
    const auto g = random_bits(gen, 6, 7, 0.55);
    if (g.material_count() == 0) continue;
    const auto mesh = extrude_to_mesh(g, 1.0, 2.0);
    CHECK(mesh.triangles.size() == expected_triangles(g));
    const bool diag = has_diagonal_only_contact(g);
    CHECK(is_watertight(mesh).watertight == !diag);
    (diag ? checked_open : checked_closed) += 1;
  }
  CHECK(checked_closed > 0);
  CHECK(checked_open > 0);
}

TEST_CASE("connectivity matches a reference flood fill") {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 300; ++t) {
    const double p = 0.2 + 0.6 * (t % 5) / 4.0;
    const auto g = random_bits(gen, 5, 8, p);
    CHECK(connectivity_2d(g) == reference_connectivity(g));
  }
}

TEST_CASE("mirror_y reverses columns and is an involution") {
  const auto g = bits(2, 3, {true, false, false, false, true, true});
  const auto m = mirror_y(g);
  CHECK(m == bits(2, 3, {false, false, true, true, true, false}));
  CHECK(mirror_y(m) == g);
}

TEST_CASE("STL round trip") {
  std::mt19937_64 gen(23);
  const auto g = random_bits(gen, 4, 5, 0.5);
  const auto mesh = extrude_to_mesh(g, 1.5, 3.0);
  const std::string stl = write_stl(mesh);
  CHECK(stl.size() == 84 + 50 * mesh.triangles.size());
  const auto tris = read_stl(stl);
  REQUIRE(tris.size() == mesh.triangles.size());
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      const auto& v = mesh.vertices[static_cast<std::size_t>(mesh.triangles[i][static_cast<std::size_t>(k)])];
      for (int d = 0; d < 3; ++d) {
        CHECK(tris[i].vertices[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] ==
              static_cast<float>(v[d]));
      }
    }
    const auto& n = tris[i].normal;
    CHECK(std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(read_stl(stl.substr(0, stl.size() - 1)), Error);
}

TEST_CASE("export_mesh thresholds and mirrors") {
  const auto d = make_grid(1, 2, {0.9, 0.2});
  const auto plain = export_mesh(d, ExportParams{0.5, false, 1.0, 1.0});
  const auto mirrored = export_mesh(d, ExportParams{0.5, true, 1.0, 1.0});
  CHECK(plain.triangles.size() == 12);
  CHECK(mirrored.triangles.size() == 12);
  double plain_x = 0, mirror_x = 0;
  for (const auto& v : plain.vertices) plain_x += v.x();
  for (const auto& v : mirrored.vertices) mirror_x += v.x();
  CHECK(plain_x < mirror_x);
  CHECK(export_mesh(d, ExportParams{0.1, false, 1.0, 1.0}).triangles.size() == 20);
}
