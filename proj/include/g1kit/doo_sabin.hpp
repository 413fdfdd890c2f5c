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

#include <string>
#include <vector>

#include "g1kit/mesh.hpp"

namespace g1kit {

enum class WeightVariant {
  /// alpha_0 = (n+5)/(4n), alpha_k = (3 + 2 cos(2 pi k / n)) / (4n).
  /// Exact only for n in {3, 4, 6}.
  Classical,
  /// New corner = (vertex + both adjacent edge midpoints + centroid) / 4.
  MidpointAverage,
};

inline std::string to_string(WeightVariant w) {
  return w == WeightVariant::Classical ? "classical" : "midpoint";
}

/// Doo-Sabin weights for an n-gon: entry k multiplies the vertex k steps
/// ahead (cyclically) of the corner being replaced. Sums to exactly 1.
inline std::vector<Rational> ds_weights(int n, WeightVariant variant) {
  if (n < 3) throw Error("Doo-Sabin weights need n >= 3, got " + std::to_string(n));
  std::vector<Rational> w(n);
  if (variant == WeightVariant::MidpointAverage) {
    const Rational share(1, 4 * n);
    for (int k = 0; k < n; ++k) w[k] = share;
    w[0] += Rational(1, 2);
    w[1] += Rational(1, 8);
    w[n - 1] += Rational(1, 8);
    return w;
  }
  // 2 cos(2 pi k / n) is rational only for these n.
  auto two_cos = [n](int k) -> Rational {
    const int r = (k * 12 / n) % 12;  // angle in units of 30 degrees
    switch (r) {
      case 0: return 2;
      case 2: case 10: return 1;
      case 3: case 9: return 0;
      case 4: case 8: return -1;
      case 6: return -2;
      default: return 0;
    }
  };
  if (n != 3 && n != 4 && n != 6)
    throw Error("classical Doo-Sabin weights are irrational for " + std::to_string(n) +
                "-gons; use the midpoint-average variant");
  for (int k = 0; k < n; ++k) w[k] = (3 + two_cos(k)) / Rational(4 * n);
  w[0] = Rational(n + 5, 4 * n);
  return w;
}

/// One Doo-Sabin step.
///
/// Every half-edge h (leaving corner i of face f) becomes new vertex h.
/// The new faces are ordered: one per old face (same index, same corner
/// order), then one per old vertex, then one quad per old edge (edge order).
inline Mesh ds_step(const Mesh& m, WeightVariant variant) {
  const auto& H = m.half_edges();
  for (std::size_t e = 0; e < m.edge_count(); ++e) {
    const int h = m.edge_half_edge(static_cast<int>(e));
    if (H[h].twin < 0) {
      auto [a, b] = m.edge_vertices(static_cast<int>(e));
      throw MeshError("Doo-Sabin step requires a closed mesh: boundary edge (" +
                      std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }

  std::vector<Point3> verts(H.size());
  std::vector<std::vector<int>> faces;
  faces.reserve(m.face_count() + m.vertex_count() + m.edge_count());

  for (std::size_t f = 0; f < m.face_count(); ++f) {
    const auto& cyc = m.face(static_cast<int>(f));
    const int n = static_cast<int>(cyc.size());
    const auto w = ds_weights(n, variant);
    const int base = m.face_half_edge(static_cast<int>(f));
    std::vector<int> face(n);
    for (int i = 0; i < n; ++i) {
      Point3 p;
      for (int k = 0; k < n; ++k) p += m.vertex(cyc[(i + k) % n]) * w[k];
      verts[base + i] = p;
      face[i] = base + i;
    }
    faces.push_back(std::move(face));
  }

  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    auto ring = m.outgoing_ccw(static_cast<int>(v));
    if (ring.size() < 3)
      throw MeshError("Doo-Sabin step: vertex " + std::to_string(v) + " has valence " +
                      std::to_string(ring.size()));
    faces.push_back(std::move(ring));
  }

  for (std::size_t e = 0; e < m.edge_count(); ++e) {
    const int h = m.edge_half_edge(static_cast<int>(e));
    const int t = H[h].twin;
    faces.push_back({H[h].next, h, H[t].next, t});
  }
  return Mesh(std::move(verts), std::move(faces));
}

/// Which old element a face of a refined mesh was created from.
enum class FacetKind { Face, Vertex, Edge };

struct FacetOrigin {
  FacetKind kind;
  int index;  // face, vertex or edge id in the parent mesh
};

/// Classifies face f of ds_step(parent).
inline FacetOrigin facet_origin(const Mesh& parent, int f) {
  const int nf = static_cast<int>(parent.face_count());
  const int nv = static_cast<int>(parent.vertex_count());
  if (f < nf) return {FacetKind::Face, f};
  if (f < nf + nv) return {FacetKind::Vertex, f - nf};
  return {FacetKind::Edge, f - nf - nv};
}

/// The meshes of k successive Doo-Sabin steps with face lineage.
///
/// Refinement keeps a face's index and corner order, so the descendant of
/// face g of level L is face g of every later level. face_lineage[f][L] is
/// the level-L face that descends from original face f; vertex_lineage[v][L]
/// the one created for original vertex v (-1 at level 0).
struct RefinementTrace {
  WeightVariant variant = WeightVariant::Classical;
  std::vector<Mesh> meshes;
  std::vector<std::vector<int>> face_lineage;
  std::vector<std::vector<int>> vertex_lineage;

  int levels() const { return static_cast<int>(meshes.size()) - 1; }
  const Mesh& input() const { return meshes.front(); }
  const Mesh& finest() const { return meshes.back(); }
};

inline RefinementTrace ds_refine(const Mesh& m, int k, WeightVariant variant) {
  if (k < 0) throw Error("refinement step count must be non-negative");
  RefinementTrace trace;
  trace.variant = variant;
  trace.meshes.push_back(m);
  for (int i = 0; i < k; ++i) trace.meshes.push_back(ds_step(trace.meshes.back(), variant));

  const int nf = static_cast<int>(m.face_count());
  const int nv = static_cast<int>(m.vertex_count());
  trace.face_lineage.assign(nf, std::vector<int>(k + 1));
  for (int f = 0; f < nf; ++f)
    for (int L = 0; L <= k; ++L) trace.face_lineage[f][L] = f;
  trace.vertex_lineage.assign(nv, std::vector<int>(k + 1, -1));
  for (int v = 0; v < nv; ++v)
    for (int L = 1; L <= k; ++L) trace.vertex_lineage[v][L] = nf + v;
  return trace;
}

enum class LimitMethod { Centroid, EigenExtrapolate };

inline std::string to_string(LimitMethod l) {
  return l == LimitMethod::Centroid ? "centroid" : "eigen";
}

namespace detail {

/// Solves A x = b exactly by Gauss-Jordan elimination with pivoting on the
/// first nonzero entry. Throws if A is singular.
inline std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> a,
                                         std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

}  // namespace detail

/// Local subdivision matrix of one n-gon: row i gives new corner i as a
/// combination of the current corners.
inline std::vector<std::vector<Rational>> face_subdivision_matrix(int n, WeightVariant variant) {
  const auto w = ds_weights(n, variant);
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) s[i][(i + k) % n] = w[k];
  return s;
}

/// Left eigenvector l of the face subdivision matrix for eigenvalue 1,
/// normalized to sum 1. The limit point of a face is l applied to its
/// corners, at any level of refinement.
inline std::vector<Rational> limit_stencil(int n, WeightVariant variant) {
  const auto s = face_subdivision_matrix(n, variant);
  // l^T (S - I) = 0  <=>  (S^T - I) l = 0; replace the last equation by sum(l) = 1.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<Rational> b(n, 0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[r][c] = s[c][r] - (r == c ? 1 : 0);
  for (int c = 0; c < n; ++c) a[n - 1][c] = 1;
  b[n - 1] = 1;
  return detail::solve_exact(std::move(a), std::move(b));
}

/// Limit point of face `face` of mesh level `level` in the trace.
///
/// Centroid takes the centroid of the face's descendant on the finest level;
/// EigenExtrapolate applies the dominant left eigenvector of the local
/// subdivision matrix. The two agree whenever the weights are circulant.
inline Point3 face_limit_point(const RefinementTrace& trace, int level, int face,
                               LimitMethod method) {
  if (level < 0 || level > trace.levels())
    throw Error("level " + std::to_string(level) + " not in trace");
  const Mesh& m = trace.meshes[level];
  if (face < 0 || face >= static_cast<int>(m.face_count()))
    throw Error("unknown face " + std::to_string(face) + " at level " + std::to_string(level));
  if (method == LimitMethod::Centroid) return face_centroid(trace.finest(), face);
  const auto& cyc = m.face(face);
  const auto l = limit_stencil(static_cast<int>(cyc.size()), trace.variant);
  Point3 p;
  for (std::size_t i = 0; i < cyc.size(); ++i) p += m.vertex(cyc[i]) * l[i];
  return p;
}

}  // namespace g1kit
