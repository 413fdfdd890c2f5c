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
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "g1kit/bezier_patch.hpp"

namespace g1kit {

/// Where a corner of the patch layout comes from.
enum class CornerKind {
  InputFace,    // limit point associated with a face of the input mesh
  InputVertex,  // limit point associated with a vertex of the input mesh
  SplitPoint,   // split point m of an input edge
  Unspecified,  // hand-built complexes
};

inline std::string to_string(CornerKind k) {
  switch (k) {
    case CornerKind::InputFace: return "face";
    case CornerKind::InputVertex: return "vertex";
    case CornerKind::SplitPoint: return "edge";
    default: return "none";
  }
}

inline CornerKind corner_kind_from_string(const std::string& s) {
  if (s == "face") return CornerKind::InputFace;
  if (s == "vertex") return CornerKind::InputVertex;
  if (s == "edge") return CornerKind::SplitPoint;
  if (s == "none") return CornerKind::Unspecified;
  throw Error("unknown corner kind '" + s + "'");
}

struct CornerInfo {
  CornerKind kind = CornerKind::Unspecified;
  int index = -1;  // face / vertex / edge id in the input mesh
  Point3 point;

  friend bool operator==(const CornerInfo&, const CornerInfo&) = default;
};

/// Two patch sides glued together. orientation_flip is set when both sides
/// run in the same direction, i.e. the patches are not consistently oriented.
struct SharedEdge {
  int patch_a = -1;
  int side_a = -1;
  int patch_b = -1;
  int side_b = -1;
  bool orientation_flip = false;

  friend bool operator==(const SharedEdge&, const SharedEdge&) = default;
};

/// A set of bi-3 patches with their corner ids and shared-edge adjacency.
/// patch_corners[k] lists the corner ids at parameters (0,0), (1,0), (1,1),
/// (0,1); side s of a patch joins corners s and s+1.
struct PatchComplex {
  std::vector<BezierPatch> patches;
  std::vector<std::array<int, 4>> patch_corners;
  std::vector<SharedEdge> shared_edges;
  std::map<int, CornerInfo> corner_map;

  std::pair<int, int> side_corners(int patch, int side) const {
    const auto& c = patch_corners.at(patch);
    return {c[side], c[(side + 1) % 4]};
  }

  friend bool operator==(const PatchComplex&, const PatchComplex&) = default;
};

/// Derives shared_edges from patch_corners: sides with the same (unordered)
/// corner pair are glued. Edge ids follow the first occurrence in patch/side
/// order. A corner pair on more than two sides is an error.
inline void connect_by_corners(PatchComplex& c) {
  if (c.patch_corners.size() != c.patches.size())
    throw Error("patch_corners must have one entry per patch");
  c.shared_edges.clear();
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> sides;
  std::vector<std::pair<int, int>> order;
  for (int p = 0; p < static_cast<int>(c.patches.size()); ++p)
    for (int s = 0; s < 4; ++s) {
      auto [a, b] = c.side_corners(p, s);
      if (a == b) continue;
      auto key = std::minmax(a, b);
      auto& list = sides[key];
      if (list.empty()) order.push_back(key);
      list.emplace_back(p, s);
    }
  for (const auto& key : order) {
    const auto& list = sides[key];
    if (list.size() > 2)
      throw Error("corner pair (" + std::to_string(key.first) + ", " +
                  std::to_string(key.second) + ") is shared by more than two patch sides");
    if (list.size() < 2) continue;
    SharedEdge e{list[0].first, list[0].second, list[1].first, list[1].second, false};
    e.orientation_flip = c.side_corners(e.patch_a, e.side_a).first ==
                         c.side_corners(e.patch_b, e.side_b).first;
    c.shared_edges.push_back(e);
  }
}

/// The three coefficient rows that govern continuity across a shared edge,
/// in a common frame: row_b runs from corner `from` to corner `to`, row_p1 is
/// the inner row of the patch on the left (p), row_q2 that of the patch on
/// the right (q). This is the frame p_i1, p_i0 = q_i3, q_i2.
struct EdgeData {
  std::array<Point3, 4> row_p1;
  std::array<Point3, 4> row_b;
  std::array<Point3, 4> row_q2;
  int edge_id = -1;
  int from_corner = -1;
  int to_corner = -1;
  int patch_p = -1;
  int patch_q = -1;

  friend bool operator==(const EdgeData&, const EdgeData&) = default;
};

inline std::array<Point3, 4> reversed(std::array<Point3, 4> r) {
  std::swap(r[0], r[3]);
  std::swap(r[1], r[2]);
  return r;
}

/// Raised when the boundary rows of a shared edge disagree.
class ContinuityError : public Error {
 public:
  using Error::Error;
};

/// Extracts EdgeData for shared edge `edge_id`, oriented from `from_corner`
/// (default: the lower corner id). Throws ContinuityError when the two
/// boundary rows differ.
inline EdgeData extract_edge_data(const PatchComplex& c, int edge_id,
                                  std::optional<int> from_corner = std::nullopt) {
  if (edge_id < 0 || edge_id >= static_cast<int>(c.shared_edges.size()))
    throw Error("unknown edge " + std::to_string(edge_id));
  const SharedEdge& e = c.shared_edges[edge_id];
  auto [a0, a1] = c.side_corners(e.patch_a, e.side_a);
  const int lo = std::min(a0, a1), hi = std::max(a0, a1);
  const int from = from_corner.value_or(lo);
  if (from != lo && from != hi)
    throw Error("corner " + std::to_string(from) + " is not an endpoint of edge " +
                std::to_string(edge_id));

  SideRows ra = side_rows(c.patches[e.patch_a], e.side_a);
  SideRows rb = side_rows(c.patches[e.patch_b], e.side_b);
  const bool a_forward = a0 == from;
  const bool b_forward = c.side_corners(e.patch_b, e.side_b).first == from;

  EdgeData d;
  d.edge_id = edge_id;
  d.from_corner = from;
  d.to_corner = from == lo ? hi : lo;
  std::array<Point3, 4> other_boundary;
  if (!e.orientation_flip) {
    // Exactly one side runs from -> to; that patch lies on the left.
    const SideRows& p = a_forward ? ra : rb;
    const SideRows& q = a_forward ? rb : ra;
    d.patch_p = a_forward ? e.patch_a : e.patch_b;
    d.patch_q = a_forward ? e.patch_b : e.patch_a;
    d.row_b = p.boundary;
    d.row_p1 = p.inner;
    d.row_q2 = reversed(q.inner);
    other_boundary = reversed(q.boundary);
  } else {
    d.patch_p = e.patch_a;
    d.patch_q = e.patch_b;
    d.row_b = a_forward ? ra.boundary : reversed(ra.boundary);
    d.row_p1 = a_forward ? ra.inner : reversed(ra.inner);
    d.row_q2 = b_forward ? rb.inner : reversed(rb.inner);
    other_boundary = b_forward ? rb.boundary : reversed(rb.boundary);
  }
  if (other_boundary != d.row_b)
    throw ContinuityError("C0 violation: boundary rows of edge " + std::to_string(edge_id) +
                          " differ");
  return d;
}

/// True when both patches of every shared edge have identical boundary rows.
inline bool c0_everywhere(const PatchComplex& c) {
  for (int e = 0; e < static_cast<int>(c.shared_edges.size()); ++e) {
    try {
      extract_edge_data(c, e);
    } catch (const ContinuityError&) {
      return false;
    }
  }
  return true;
}

/// Shared edges incident to a corner.
inline std::vector<int> edges_at_corner(const PatchComplex& c, int corner) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(c.shared_edges.size()); ++e) {
    auto [a, b] = c.side_corners(c.shared_edges[e].patch_a, c.shared_edges[e].side_a);
    if (a == corner || b == corner) out.push_back(e);
  }
  return out;
}

/// Finds the shared edge joining two corners, or -1.
inline int find_shared_edge(const PatchComplex& c, int corner_a, int corner_b) {
  for (int e = 0; e < static_cast<int>(c.shared_edges.size()); ++e) {
    auto [a, b] = c.side_corners(c.shared_edges[e].patch_a, c.shared_edges[e].side_a);
    if ((a == corner_a && b == corner_b) || (a == corner_b && b == corner_a)) return e;
  }
  return -1;
}

/// First-order C1 test at a split point: for every shared edge leaving the
/// corner, the first two coefficients of the inner rows mirror each other
/// across the boundary.
inline bool c1_at_corner(const PatchComplex& c, int corner) {
  for (int e : edges_at_corner(c, corner)) {
    const EdgeData d = extract_edge_data(c, e, corner);
    for (int k = 0; k < 2; ++k)
      if (d.row_p1[k] - d.row_b[k] != d.row_b[k] - d.row_q2[k]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json point_to_json(const Point3& p) {
  return nlohmann::json::array({to_string(p.x), to_string(p.y), to_string(p.z)});
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw Error("expected a rational as \"p/q\" string");
}

inline Point3 point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw Error("expected a point [x, y, z]");
  return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
}

inline constexpr int kComplexFormatVersion = 1;

/// Versioned JSON document. patches[k][4*i + j] holds p_ij of patch k as
/// three "p/q" strings.
inline nlohmann::json to_json(const PatchComplex& c) {
  nlohmann::json j;
  j["version"] = kComplexFormatVersion;
  j["patches"] = nlohmann::json::array();
  for (const auto& patch : c.patches) {
    nlohmann::json pj = nlohmann::json::array();
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) pj.push_back(point_to_json(patch.p[i][k]));
    j["patches"].push_back(std::move(pj));
  }
  j["patch_corners"] = c.patch_corners;
  j["shared_edges"] = nlohmann::json::array();
  for (const auto& e : c.shared_edges)
    j["shared_edges"].push_back({{"patch_a", e.patch_a},
                                 {"side_a", e.side_a},
                                 {"patch_b", e.patch_b},
                                 {"side_b", e.side_b},
                                 {"orientation_flip", e.orientation_flip}});
  j["corner_map"] = nlohmann::json::object();
  for (const auto& [id, info] : c.corner_map)
    j["corner_map"][std::to_string(id)] = {
        {"kind", to_string(info.kind)}, {"index", info.index}, {"point", point_to_json(info.point)}};
  return j;
}

inline PatchComplex complex_from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kComplexFormatVersion)
      throw Error("unsupported complex version " + j.at("version").dump());
    PatchComplex c;
    for (const auto& pj : j.at("patches")) {
      if (!pj.is_array() || pj.size() != 16) throw Error("a patch needs 16 coefficients");
      BezierPatch patch;
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) patch.p[i][k] = point_from_json(pj[4 * i + k]);
      c.patches.push_back(patch);
    }
    if (j.contains("patch_corners")) {
      c.patch_corners = j.at("patch_corners").get<std::vector<std::array<int, 4>>>();
    } else {
      for (int k = 0; k < static_cast<int>(c.patches.size()); ++k)
        c.patch_corners.push_back({4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3});
    }
    if (c.patch_corners.size() != c.patches.size())
      throw Error("patch_corners must have one entry per patch");
    const int np = static_cast<int>(c.patches.size());
    for (const auto& ej : j.at("shared_edges")) {
      SharedEdge e{ej.at("patch_a").get<int>(), ej.at("side_a").get<int>(),
                   ej.at("patch_b").get<int>(), ej.at("side_b").get<int>(),
                   ej.value("orientation_flip", false)};
      if (e.patch_a < 0 || e.patch_a >= np || e.patch_b < 0 || e.patch_b >= np ||
          e.side_a < 0 || e.side_a > 3 || e.side_b < 0 || e.side_b > 3)
        throw Error("shared edge refers to an unknown patch or side");
      c.shared_edges.push_back(e);
    }
    if (j.contains("corner_map"))
      for (const auto& [key, cj] : j.at("corner_map").items())
        c.corner_map[std::stoi(key)] = {corner_kind_from_string(cj.at("kind").get<std::string>()),
                                        cj.at("index").get<int>(), point_from_json(cj.at("point"))};
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed complex document: ") + e.what());
  }
}

}  // namespace g1kit
