// Copyright 2026 The g1kit Authors.
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
#include <utility>

#include "g1kit/bernstein.hpp"
#include "g1kit/vec3.hpp"

namespace g1kit {

/// Tensor-product patch of bi-degree 3 in Bernstein-Bezier form,
///   p(u, v) = sum_ij p_ij B_i^3(u) B_j^3(v),
/// stored as p[i][j] with i the u-index and j the v-index.
struct BezierPatch {
  std::array<std::array<Point3, 4>, 4> p;

  const Point3& operator()(int i, int j) const { return p[i][j]; }
  Point3& operator()(int i, int j) { return p[i][j]; }

  friend bool operator==(const BezierPatch& a, const BezierPatch& b) { return a.p == b.p; }
};

namespace detail {

template <typename V, typename S>
V casteljau4(std::array<V, 4> b, const S& t) {
  const S s = S(1) - t;
  for (int r = 1; r < 4; ++r)
    for (int k = 0; k + r < 4; ++k) b[k] = b[k] * s + b[k + 1] * t;
  return b[0];
}

}  // namespace detail

/// Exact evaluation by tensor-product de Casteljau: first along v, then u.
inline Point3 eval_patch(const BezierPatch& patch, const Rational& u, const Rational& v) {
  std::array<Point3, 4> col;
  for (int i = 0; i < 4; ++i) col[i] = detail::casteljau4(patch.p[i], v);
  return detail::casteljau4(col, u);
}

/// Splits a cubic control polygon at t into (left, right) halves.
inline std::pair<std::array<Point3, 4>, std::array<Point3, 4>> split_cubic(
    const std::array<Point3, 4>& b, const Rational& t) {
  const Rational s = Rational(1) - t;
  std::array<Point3, 4> w = b, left, right;
  left[0] = w[0];
  right[3] = w[3];
  for (int r = 1; r < 4; ++r) {
    for (int k = 0; k + r < 4; ++k) w[k] = w[k] * s + w[k + 1] * t;
    left[r] = w[0];
    right[3 - r] = w[3 - r];
  }
  return {left, right};
}

/// de Casteljau subdivision along u at parameter t: (u in [0,t], u in [t,1]).
inline std::pair<BezierPatch, BezierPatch> split_u(const BezierPatch& patch, const Rational& t) {
  BezierPatch a, b;
  for (int j = 0; j < 4; ++j) {
    std::array<Point3, 4> row{patch.p[0][j], patch.p[1][j], patch.p[2][j], patch.p[3][j]};
    auto [l, r] = split_cubic(row, t);
    for (int i = 0; i < 4; ++i) {
      a.p[i][j] = l[i];
      b.p[i][j] = r[i];
    }
  }
  return {a, b};
}

/// de Casteljau subdivision along v at parameter t.
inline std::pair<BezierPatch, BezierPatch> split_v(const BezierPatch& patch, const Rational& t) {
  BezierPatch a, b;
  for (int i = 0; i < 4; ++i) {
    auto [l, r] = split_cubic(patch.p[i], t);
    a.p[i] = l;
    b.p[i] = r;
  }
  return {a, b};
}

/// Patch with every coefficient transformed by f.
template <typename F>
BezierPatch map_points(const BezierPatch& patch, F&& f) {
  BezierPatch r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.p[i][j] = f(patch.p[i][j]);
  return r;
}

/// Sides of a patch, numbered counter-clockwise in the parameter domain:
/// 0: v = 0 (u increasing), 1: u = 1 (v increasing), 2: v = 1 (u
/// decreasing), 3: u = 0 (v decreasing). A right-handed patch seen from
/// outside has its interior on the left of each side.
struct SideRows {
  std::array<Point3, 4> boundary;  // along the counter-clockwise direction
  std::array<Point3, 4> inner;     // row next to the boundary, same order
};

/// Grid index of the k-th coefficient along side s, `depth` rows inward.
inline std::pair<int, int> side_index(int side, int k, int depth) {
  switch (side) {
    case 0: return {k, depth};
    case 1: return {3 - depth, k};
    case 2: return {3 - k, 3 - depth};
    default: return {depth, 3 - k};
  }
}

inline SideRows side_rows(const BezierPatch& patch, int side) {
  SideRows r;
  for (int k = 0; k < 4; ++k) {
    auto [bi, bj] = side_index(side, k, 0);
    auto [ii, ij] = side_index(side, k, 1);
    r.boundary[k] = patch.p[bi][bj];
    r.inner[k] = patch.p[ii][ij];
  }
  return r;
}

}  // namespace g1kit
