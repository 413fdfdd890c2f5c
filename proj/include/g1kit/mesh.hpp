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

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "g1kit/rational.hpp"
#include "g1kit/vec3.hpp"

namespace g1kit {

/// Raised for structurally invalid meshes: degenerate faces, non-manifold
/// edges, inconsistent or inward orientation.
class MeshError : public Error {
 public:
  using Error::Error;
};

/// Directed edge record. Half-edges are stored face by face, so half-edge
/// `face_offset(f) + i` leaves corner i of face f.
struct HalfEdge {
  int origin = -1;
  int twin = -1;  // -1 on a boundary
  int next = -1;
  int prev = -1;
  int face = -1;
  int edge = -1;  // undirected edge id
};

struct MeshStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t face_count = 0;
  long euler = 0;
  std::map<std::size_t, std::size_t> face_degree_histogram;
  std::map<std::size_t, std::size_t> vertex_valence_histogram;

  friend bool operator==(const MeshStats&, const MeshStats&) = default;
};

/// Polyhedral mesh with exact coordinates and half-edge connectivity.
///
/// Faces are vertex cycles, counter-clockwise when seen from outside. The
/// constructor validates the input and throws MeshError on failure; a
/// constructed Mesh is immutable.
class Mesh {
 public:
  Mesh() = default;

  Mesh(std::vector<Point3> vertices, std::vector<std::vector<int>> faces)
      : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    build();
  }

  const std::vector<Point3>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<HalfEdge>& half_edges() const { return half_edges_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  std::size_t edge_count() const { return edge_half_edge_.size(); }

  const Point3& vertex(int v) const { return vertices_.at(v); }
  const std::vector<int>& face(int f) const { return faces_.at(f); }
  std::size_t face_degree(int f) const { return faces_.at(f).size(); }

  /// First half-edge of face f (leaving corner 0).
  int face_half_edge(int f) const { return face_offset_.at(f); }

  /// Representative half-edge of undirected edge e (the lower index of the
  /// pair). Edge ids are ordered by that half-edge index.
  int edge_half_edge(int e) const { return edge_half_edge_.at(e); }

  /// Endpoints (origin of the representative half-edge first).
  std::pair<int, int> edge_vertices(int e) const {
    const HalfEdge& h = half_edges_[edge_half_edge_.at(e)];
    return {h.origin, half_edges_[h.next].origin};
  }

  /// Edge id joining a and b, or -1.
  int find_edge(int a, int b) const {
    auto it = directed_.find(key(a, b));
    if (it == directed_.end()) it = directed_.find(key(b, a));
    return it == directed_.end() ? -1 : half_edges_[it->second].edge;
  }

  bool is_closed() const { return boundary_edges_ == 0; }
  std::size_t boundary_edge_count() const { return boundary_edges_; }

  long euler() const {
    return static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) +
           static_cast<long>(face_count());
  }

  /// Number of edges incident to v.
  std::size_t valence(int v) const { return valence_.at(v); }

  /// Half-edges leaving v in counter-clockwise order seen from outside.
  /// Only defined for interior vertices of a closed neighborhood.
  std::vector<int> outgoing_ccw(int v) const {
    std::vector<int> ring;
    const int start = vertex_half_edge_.at(v);
    if (start < 0) return ring;
    int h = start;
    do {
      ring.push_back(h);
      const int t = half_edges_[half_edges_[h].prev].twin;
      if (t < 0) throw MeshError("vertex " + std::to_string(v) + " is on the boundary");
      h = t;
    } while (h != start);
    return ring;
  }

  MeshStats stats() const {
    MeshStats s;
    s.vertex_count = vertex_count();
    s.edge_count = edge_count();
    s.face_count = face_count();
    s.euler = euler();
    for (const auto& f : faces_) ++s.face_degree_histogram[f.size()];
    for (std::size_t v = 0; v < vertices_.size(); ++v) ++s.vertex_valence_histogram[valence_[v]];
    return s;
  }

  /// Six times the signed enclosed volume; positive for outward orientation.
  Rational signed_volume6() const {
    Rational vol = 0;
    for (const auto& f : faces_)
      for (std::size_t i = 1; i + 1 < f.size(); ++i)
        vol += det3(vertices_[f[0]], vertices_[f[i]], vertices_[f[i + 1]]);
    return vol;
  }

 private:
  static long long key(int a, int b) {
    return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b);
  }

  void build() {
    const int nv = static_cast<int>(vertices_.size());
    face_offset_.reserve(faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      const auto& cyc = faces_[f];
      const std::string where = "face " + std::to_string(f);
      if (cyc.size() < 3) throw MeshError("degenerate " + where + ": fewer than 3 vertices");
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        if (cyc[i] < 0 || cyc[i] >= nv)
          throw MeshError(where + ": vertex index " + std::to_string(cyc[i]) + " out of range");
        for (std::size_t j = 0; j < i; ++j)
          if (cyc[i] == cyc[j])
            throw MeshError("degenerate " + where + ": vertex " + std::to_string(cyc[i]) +
                            " repeated");
      }
      const int base = static_cast<int>(half_edges_.size());
      face_offset_.push_back(base);
      const int n = static_cast<int>(cyc.size());
      for (int i = 0; i < n; ++i) {
        HalfEdge h;
        h.origin = cyc[i];
        h.face = static_cast<int>(f);
        h.next = base + (i + 1) % n;
        h.prev = base + (i + n - 1) % n;
        half_edges_.push_back(h);
      }
    }

    for (std::size_t h = 0; h < half_edges_.size(); ++h) {
      const int a = half_edges_[h].origin;
      const int b = half_edges_[half_edges_[h].next].origin;
      if (!directed_.emplace(key(a, b), static_cast<int>(h)).second)
        throw MeshError("non-manifold edge (" + std::to_string(a) + ", " + std::to_string(b) +
                        "): used twice in the same direction");
    }
    for (std::size_t h = 0; h < half_edges_.size(); ++h) {
      HalfEdge& he = half_edges_[h];
      const int b = half_edges_[he.next].origin;
      auto it = directed_.find(key(b, he.origin));
      if (it != directed_.end()) he.twin = it->second;
      if (he.twin < 0 || static_cast<int>(h) < he.twin) {
        he.edge = static_cast<int>(edge_half_edge_.size());
        edge_half_edge_.push_back(static_cast<int>(h));
        if (he.twin < 0) ++boundary_edges_;
      }
    }
    for (auto& he : half_edges_)
      if (he.edge < 0) he.edge = half_edges_[he.twin].edge;

    valence_.assign(vertices_.size(), 0);
    vertex_half_edge_.assign(vertices_.size(), -1);
    std::vector<std::size_t> outgoing(vertices_.size(), 0);
    for (std::size_t h = 0; h < half_edges_.size(); ++h) {
      const HalfEdge& he = half_edges_[h];
      ++outgoing[he.origin];
      ++valence_[he.origin];
      if (he.twin < 0) ++valence_[half_edges_[he.next].origin];
      // Prefer a half-edge whose ring walk starts at a boundary, if any.
      if (vertex_half_edge_[he.origin] < 0 || half_edges_[he.prev].twin < 0)
        vertex_half_edge_[he.origin] = static_cast<int>(h);
    }

    if (!is_closed()) return;
    for (int v = 0; v < nv; ++v) {
      if (vertex_half_edge_[v] < 0) continue;
      if (outgoing_ccw(v).size() != outgoing[v])
        throw MeshError("non-manifold vertex " + std::to_string(v) +
                        ": incident faces form more than one fan");
    }
    if (signed_volume6() < 0)
      throw MeshError("faces are oriented clockwise from outside (negative enclosed volume)");
  }

  std::vector<Point3> vertices_;
  std::vector<std::vector<int>> faces_;
  std::vector<HalfEdge> half_edges_;
  std::vector<int> face_offset_;
  std::vector<int> edge_half_edge_;
  std::vector<int> vertex_half_edge_;
  std::vector<std::size_t> valence_;
  std::unordered_map<long long, int> directed_;
  std::size_t boundary_edges_ = 0;
};

/// Exact arithmetic mean of the vertices of face f.
inline Point3 face_centroid(const Mesh& m, int f) {
  if (f < 0 || f >= static_cast<int>(m.face_count()))
    throw MeshError("face index " + std::to_string(f) + " out of range");
  Point3 c;
  for (int v : m.face(f)) c += m.vertex(v);
  return c / Rational(static_cast<long>(m.face_degree(f)));
}

/// Regular tetrahedron with vertices scale * {A, B, C, D},
///   A = (-1,-1,-1), B = (-1,1,1), C = (1,-1,1), D = (1,1,-1).
/// Face 0 is B,C,D and face 1 is A,D,C.
inline Mesh make_tetrahedron(const Rational& scale = 1) {
  if (scale <= 0) throw Error("tetrahedron scale must be positive");
  std::vector<Point3> v = {
      Point3(-1, -1, -1), Point3(-1, 1, 1), Point3(1, -1, 1), Point3(1, 1, -1)};
  for (auto& p : v) p *= scale;
  return Mesh(std::move(v), {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}});
}

/// Axis-aligned cube [-scale, scale]^3.
inline Mesh make_cube(const Rational& scale = 1) {
  std::vector<Point3> v;
  for (int i = 0; i < 8; ++i)
    v.emplace_back((i & 1) ? scale : Rational(-scale), (i & 2) ? scale : Rational(-scale),
                   (i & 4) ? scale : Rational(-scale));
  return Mesh(std::move(v), {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                             {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}});
}

/// Right prism over the triangle (0,0), (2,0), (0,2), height 2.
inline Mesh make_triangular_prism() {
  std::vector<Point3> v = {Point3(0, 0, 0), Point3(2, 0, 0), Point3(0, 2, 0),
                           Point3(0, 0, 2), Point3(2, 0, 2), Point3(0, 2, 2)};
  return Mesh(std::move(v),
              {{0, 2, 1}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}});
}

}  // namespace g1kit
