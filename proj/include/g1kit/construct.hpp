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

#include "g1kit/doo_sabin.hpp"
#include "g1kit/patch_complex.hpp"

namespace g1kit {

/// Where the patch corners of the layout are taken from.
enum class CornerSource {
  /// Limit points of all facets of the once-refined mesh (face, vertex and
  /// edge facets); the split point m is the limit of the edge facet.
  Level1Facets,
  /// Limit points tied to the faces and vertices of the input mesh; the
  /// split point m is the average of the two face and two vertex corners
  /// around the input edge.
  InputFacesAndVertices,
};

/// How the 2x2 block of coefficients next to each patch corner is derived
/// from the lineage face of that corner's facet on the finest level.
enum class InteriorRule {
  /// Edge neighbours at the midpoints of the lineage face's edges, twist
  /// coefficient at the lineage face's vertex.
  FaceBlock,
  /// FaceBlock pulled halfway towards the corner point.
  HalfBlock,
  /// FaceBlock with the twist coefficient replaced by the average of the
  /// four block points.
  AveragedTwist,
};

inline std::string to_string(CornerSource c) {
  return c == CornerSource::Level1Facets ? "level1" : "input";
}

inline std::string to_string(InteriorRule r) {
  switch (r) {
    case InteriorRule::FaceBlock: return "face-block";
    case InteriorRule::HalfBlock: return "half-block";
    default: return "averaged-twist";
  }
}

inline WeightVariant weight_variant_from_string(const std::string& s) {
  if (s == "classical") return WeightVariant::Classical;
  if (s == "midpoint") return WeightVariant::MidpointAverage;
  throw Error("unknown weight variant '" + s + "' (classical, midpoint)");
}

inline LimitMethod limit_method_from_string(const std::string& s) {
  if (s == "centroid") return LimitMethod::Centroid;
  if (s == "eigen") return LimitMethod::EigenExtrapolate;
  throw Error("unknown limit method '" + s + "' (centroid, eigen)");
}

inline CornerSource corner_source_from_string(const std::string& s) {
  if (s == "level1") return CornerSource::Level1Facets;
  if (s == "input") return CornerSource::InputFacesAndVertices;
  throw Error("unknown corner source '" + s + "' (level1, input)");
}

inline InteriorRule interior_rule_from_string(const std::string& s) {
  if (s == "face-block") return InteriorRule::FaceBlock;
  if (s == "half-block") return InteriorRule::HalfBlock;
  if (s == "averaged-twist") return InteriorRule::AveragedTwist;
  throw Error("unknown interior rule '" + s + "' (face-block, half-block, averaged-twist)");
}

struct ConstructionConfig {
  int steps = 3;
  WeightVariant weights = WeightVariant::Classical;
  LimitMethod limit = LimitMethod::EigenExtrapolate;
  CornerSource corners = CornerSource::Level1Facets;
  InteriorRule rule = InteriorRule::FaceBlock;

  std::string name() const {
    return "steps=" + std::to_string(steps) + " weights=" + to_string(weights) +
           " limit=" + to_string(limit) + " corners=" + to_string(corners) +
           " rule=" + to_string(rule);
  }

  void validate() const {
    if (steps < 1) throw Error("construction needs at least one refinement step");
  }

  friend bool operator==(const ConstructionConfig&, const ConstructionConfig&) = default;
};

namespace detail {

// Grid positions of the corner, the coefficient towards the next corner, the
// coefficient towards the previous corner, and the twist, for each of the
// four patch corners in counter-clockwise order.
inline constexpr int kCornerBlock[4][4][2] = {
    {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
    {{3, 0}, {3, 1}, {2, 0}, {2, 1}},
    {{3, 3}, {2, 3}, {3, 2}, {2, 2}},
    {{0, 3}, {0, 2}, {1, 3}, {1, 2}},
};

inline std::vector<Point3> corner_points(const RefinementTrace& trace,
                                         const ConstructionConfig& cfg) {
  const Mesh& input = trace.meshes[0];
  const Mesh& level1 = trace.meshes[1];
  std::vector<Point3> pts(level1.face_count());
  for (int g = 0; g < static_cast<int>(level1.face_count()); ++g)
    pts[g] = face_limit_point(trace, 1, g, cfg.limit);
  if (cfg.corners == CornerSource::InputFacesAndVertices) {
    const int nf = static_cast<int>(input.face_count());
    const int nv = static_cast<int>(input.vertex_count());
    for (int f = 0; f < nf; ++f) pts[f] = face_limit_point(trace, 0, f, cfg.limit);
    const auto& H = input.half_edges();
    for (int e = 0; e < static_cast<int>(input.edge_count()); ++e) {
      const int h = input.edge_half_edge(e);
      const int t = H[h].twin;
      pts[nf + nv + e] = (pts[H[h].face] + pts[H[t].face] + pts[nf + H[h].origin] +
                          pts[nf + H[t].origin]) /
                         Rational(4);
    }
  }
  return pts;
}

}  // namespace detail

/// Builds the bi-3 patch layout on a refined mesh.
///
/// Every vertex x of the once-refined mesh has valence 4 and yields one
/// patch whose corners are the limit points of the four facets around x, in
/// counter-clockwise order. So each n-sided facet carries n patches meeting
/// at its limit point, and corner ids are facet ids of the once-refined
/// mesh. Each corner's 2x2 coefficient block comes from the descendant of
/// that facet after `cfg.steps` refinements, near the corner descending
/// from x.
inline PatchComplex build_complex(const RefinementTrace& trace, const ConstructionConfig& cfg) {
  cfg.validate();
  if (trace.levels() < cfg.steps)
    throw Error("trace has " + std::to_string(trace.levels()) + " levels, config needs " +
                std::to_string(cfg.steps));
  if (cfg.weights != trace.variant) throw Error("trace was refined with other weights");
  const Mesh& input = trace.meshes[0];
  if (!input.is_closed()) throw MeshError("patch construction requires a closed input mesh");
  const Mesh& level1 = trace.meshes[1];
  const Mesh& fine = trace.meshes[cfg.steps];
  const auto corners = detail::corner_points(trace, cfg);

  PatchComplex c;
  c.patches.resize(level1.vertex_count());
  c.patch_corners.resize(level1.vertex_count());
  for (int x = 0; x < static_cast<int>(level1.vertex_count()); ++x) {
    const auto ring = level1.outgoing_ccw(x);
    if (ring.size() != 4)
      throw MeshError("refined vertex " + std::to_string(x) + " does not have valence 4");
    BezierPatch& patch = c.patches[x];
    for (int k = 0; k < 4; ++k) {
      const int facet = level1.half_edges()[ring[k]].face;
      const int corner = ring[k] - level1.face_half_edge(facet);
      const auto& cyc = fine.face(facet);
      const int n = static_cast<int>(cyc.size());
      const Point3& at = fine.vertex(cyc[corner]);
      const Point3& prev = fine.vertex(cyc[(corner + n - 1) % n]);
      const Point3& next = fine.vertex(cyc[(corner + 1) % n]);
      const Point3& center = corners[facet];
      // The edge coefficients are shared with the neighbouring patch, which
      // sees the same lineage edge from its other end.
      Point3 to_next = (at + prev) / Rational(2);
      Point3 to_prev = (at + next) / Rational(2);
      Point3 twist = at;
      if (cfg.rule == InteriorRule::AveragedTwist)
        twist = (center + to_next + to_prev + at) / Rational(4);
      if (cfg.rule == InteriorRule::HalfBlock) {
        to_next = center + (to_next - center) / Rational(2);
        to_prev = center + (to_prev - center) / Rational(2);
        twist = center + (twist - center) / Rational(2);
      }
      const auto& pos = detail::kCornerBlock[k];
      patch.p[pos[0][0]][pos[0][1]] = center;
      patch.p[pos[1][0]][pos[1][1]] = to_next;
      patch.p[pos[2][0]][pos[2][1]] = to_prev;
      patch.p[pos[3][0]][pos[3][1]] = twist;
      c.patch_corners[x][k] = facet;
    }
  }
  connect_by_corners(c);
  for (int g = 0; g < static_cast<int>(level1.face_count()); ++g) {
    const FacetOrigin o = facet_origin(input, g);
    const CornerKind kind = o.kind == FacetKind::Face     ? CornerKind::InputFace
                            : o.kind == FacetKind::Vertex ? CornerKind::InputVertex
                                                          : CornerKind::SplitPoint;
    c.corner_map[g] = {kind, o.index, corners[g]};
  }
  if (!c0_everywhere(c)) throw ContinuityError("constructed complex is not C0");
  return c;
}

inline PatchComplex build_complex(const Mesh& input, const ConstructionConfig& cfg) {
  cfg.validate();
  return build_complex(ds_refine(input, cfg.steps, cfg.weights), cfg);
}

/// Corner id of the split point on input edge e, or -1.
inline int split_point_corner(const PatchComplex& c, int input_edge) {
  for (const auto& [id, info] : c.corner_map)
    if (info.kind == CornerKind::SplitPoint && info.index == input_edge) return id;
  return -1;
}

inline int face_corner(const PatchComplex& c, int input_face) {
  for (const auto& [id, info] : c.corner_map)
    if (info.kind == CornerKind::InputFace && info.index == input_face) return id;
  return -1;
}

/// Per split point, whether the incident patches meet C1 there (first-order
/// mirror test on every incident edge). Keyed by corner id.
inline std::map<int, bool> split_point_c1(const PatchComplex& c) {
  std::map<int, bool> out;
  for (const auto& [id, info] : c.corner_map)
    if (info.kind == CornerKind::SplitPoint) out[id] = c1_at_corner(c, id);
  return out;
}

/// Samples every patch on a uniform (s+1) x (s+1) grid. Patches are not
/// welded, so the result has patches * (s+1)^2 vertices and s^2 quads per
/// patch.
inline Mesh tessellate(const PatchComplex& c, int samples_per_side) {
  if (samples_per_side < 1) throw Error("tessellation needs at least one sample per side");
  const int s = samples_per_side;
  std::vector<Point3> verts;
  std::vector<std::vector<int>> faces;
  for (const auto& patch : c.patches) {
    const int base = static_cast<int>(verts.size());
    for (int i = 0; i <= s; ++i)
      for (int j = 0; j <= s; ++j) verts.push_back(eval_patch(patch, Rational(i, s), Rational(j, s)));
    auto at = [&](int i, int j) { return base + i * (s + 1) + j; };
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
  }
  return Mesh(std::move(verts), std::move(faces));
}

}  // namespace g1kit
