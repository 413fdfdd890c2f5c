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
#include <string>
#include <vector>

#include "g1kit/construct.hpp"
#include "g1kit/g1_verify.hpp"

namespace g1kit::counterexample {

/// The twelve coefficients along the edge from the face point v of B,C,D to
/// the split point m of edge C,D, as published for the regular tetrahedron
/// (integer scaled): rows p_i1, p_i0 = q_i3, q_i2.
inline const std::array<std::array<std::array<int, 3>, 4>, 3> kEdgeTable = {{
    {{{7, 10, 7}, {10, 10, 4}, {16, 4, -2}, {16, 3, -3}}},
    {{{8, 8, 8}, {10, 7, 7}, {16, 1, 1}, {16, 0, 0}}},
    {{{7, 7, 10}, {10, 4, 10}, {16, -2, 4}, {16, -3, 3}}},
}};

/// Published derivative coefficients (integer scaled): dp2, dp1, dq2.
inline const std::vector<std::array<int, 3>> kDp2 = {{-1, 2, -1}, {0, 3, -3}, {0, 3, -3}, {0, 3, -3}};
inline const std::vector<std::array<int, 3>> kDp1 = {{2, -1, -1}, {6, -6, -6}, {0, -1, -1}};
inline const std::vector<std::array<int, 3>> kDq2 = {{1, 1, -2}, {0, 3, -3}, {0, 3, -3}, {0, 3, -3}};

/// Published determinant, up to a positive factor.
inline const std::vector<long long> kDeterminant = {0, 105, 185, 105, 36, 5, 0, 0, 0};

/// 2^2 3^2 5 7, the scale of the published computation. Verdicts and
/// primitive tables do not depend on the scale.
inline const Rational kPublishedScale = 1260;

inline Point3 to_point(const std::array<int, 3>& a) { return Point3(a[0], a[1], a[2]); }

/// The published table as EdgeData.
inline EdgeData edge_table_fixture() {
  EdgeData e;
  for (int i = 0; i < 4; ++i) {
    e.row_p1[i] = to_point(kEdgeTable[0][i]);
    e.row_b[i] = to_point(kEdgeTable[1][i]);
    e.row_q2[i] = to_point(kEdgeTable[2][i]);
  }
  return e;
}

inline std::vector<Point3> flatten(const EdgeData& e) {
  std::vector<Point3> out(e.row_p1.begin(), e.row_p1.end());
  out.insert(out.end(), e.row_b.begin(), e.row_b.end());
  out.insert(out.end(), e.row_q2.begin(), e.row_q2.end());
  return out;
}

inline std::vector<Rational> flatten(const std::vector<Point3>& pts) {
  std::vector<Rational> out;
  for (const auto& p : pts) {
    out.push_back(p.x);
    out.push_back(p.y);
    out.push_back(p.z);
  }
  return out;
}

inline std::vector<Rational> target_vector(const std::vector<std::array<int, 3>>& rows) {
  std::vector<Rational> out;
  for (const auto& r : rows)
    for (int v : r) out.emplace_back(v);
  return out;
}

inline std::vector<Rational> edge_table_target() {
  std::vector<std::array<int, 3>> rows;
  for (const auto& row : kEdgeTable) rows.insert(rows.end(), row.begin(), row.end());
  return target_vector(rows);
}

/// Best single positive scale s with actual ~ s * target, and the largest
/// deviation |actual / s - target| in target units. A zero or negative best
/// scale leaves no proportional fit; the residual is then max |target| + 1.
struct ProportionalFit {
  Rational scale;
  Rational residual;
  bool exact() const { return residual == 0; }
};

inline ProportionalFit fit_proportional(const std::vector<Rational>& actual,
                                        const std::vector<Rational>& target) {
  if (actual.size() != target.size()) throw Error("fit_proportional: size mismatch");
  Rational at = 0, tt = 0, tmax = 0;
  for (std::size_t k = 0; k < actual.size(); ++k) {
    at += actual[k] * target[k];
    tt += target[k] * target[k];
    tmax = std::max(tmax, abs(target[k]));
  }
  ProportionalFit fit;
  if (tt == 0 || at <= 0) {
    fit.scale = 0;
    fit.residual = tmax + 1;
    return fit;
  }
  fit.scale = at / tt;
  fit.residual = 0;
  for (std::size_t k = 0; k < actual.size(); ++k)
    fit.residual = std::max(fit.residual, abs(actual[k] / fit.scale - target[k]));
  return fit;
}

/// Exact proportionality with a positive factor.
inline bool proportional(const std::vector<Rational>& actual, const std::vector<Rational>& target) {
  return fit_proportional(actual, target).exact();
}

inline std::vector<Rational> coefficients(const ExactVecPoly3& p) {
  return flatten(p.coeff_vectors());
}

/// Locates the edge from the face point of B,C,D (input face 0) to the
/// split point of edge C,D in a complex built from make_tetrahedron, and
/// extracts it oriented from the face point.
inline EdgeData counterexample_edge(const PatchComplex& c, const Mesh& tetra) {
  const int edge_cd = tetra.find_edge(2, 3);
  const int v = face_corner(c, 0);
  const int m = split_point_corner(c, edge_cd);
  const int e = find_shared_edge(c, v, m);
  if (v < 0 || m < 0 || e < 0) throw Error("complex has no edge from v to m");
  return extract_edge_data(c, e, v);
}

enum class MatchQuality { ExactProportional, Mismatch };

inline std::string to_string(MatchQuality q) {
  return q == MatchQuality::ExactProportional ? "ExactProportional" : "Mismatch";
}

struct SearchResult {
  ConstructionConfig config;
  MatchQuality match_quality = MatchQuality::Mismatch;
  Rational residual;
  std::vector<Point3> edge;  // the 12 extracted coefficients
};

inline std::vector<ConstructionConfig> search_space() {
  std::vector<ConstructionConfig> out;
  for (int steps = 1; steps <= 3; ++steps)
    for (auto w : {WeightVariant::Classical, WeightVariant::MidpointAverage})
      for (auto l : {LimitMethod::Centroid, LimitMethod::EigenExtrapolate})
        for (auto c : {CornerSource::Level1Facets, CornerSource::InputFacesAndVertices})
          for (auto r : {InteriorRule::FaceBlock, InteriorRule::HalfBlock, InteriorRule::AveragedTwist})
            out.push_back({steps, w, l, c, r});
  return out;
}

inline SearchResult evaluate_config(const RefinementTrace& trace, const ConstructionConfig& cfg) {
  SearchResult r;
  r.config = cfg;
  const PatchComplex c = build_complex(trace, cfg);
  const EdgeData e = counterexample_edge(c, trace.input());
  r.edge = flatten(e);
  r.residual = fit_proportional(flatten(r.edge), edge_table_target()).residual;
  r.match_quality = r.residual == 0 ? MatchQuality::ExactProportional : MatchQuality::Mismatch;
  return r;
}

/// Runs every configuration on the tetrahedron scaled by `scale` and ranks
/// them by residual against the published edge table. Ties keep the
/// enumeration order.
inline std::vector<SearchResult> search(const Rational& scale = kPublishedScale) {
  const Mesh tetra = make_tetrahedron(scale);
  std::vector<SearchResult> out;
  for (auto w : {WeightVariant::Classical, WeightVariant::MidpointAverage}) {
    const RefinementTrace trace = ds_refine(tetra, 3, w);
    for (const auto& cfg : search_space()) {
      if (cfg.weights != w) continue;
      out.push_back(evaluate_config(trace, cfg));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SearchResult& a, const SearchResult& b) {
    return a.residual < b.residual;
  });
  return out;
}

}  // namespace g1kit::counterexample
