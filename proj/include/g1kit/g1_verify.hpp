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
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "g1kit/bernstein.hpp"
#include "g1kit/patch_complex.hpp"

namespace g1kit {

/// Derivatives of the two patches along a shared edge, in the EdgeData
/// frame, as exact vector polynomials in the edge parameter u:
///   dp2 = d/dv p(u,0)   = 3 (p_i1 - p_i0),   degree 3
///   dp1 = d/du p(u,0),                        degree 2
///   dq2 = d/dv q(u,1)   = 3 (q_i3 - q_i2),   degree 3
/// dq2 points from q towards the edge, so a C1 join has dq2 = dp2.
struct EdgeDerivatives {
  ExactVecPoly3 dp2;
  ExactVecPoly3 dp1;
  ExactVecPoly3 dq2;
};

inline EdgeDerivatives edge_derivatives(const EdgeData& e) {
  std::vector<Point3> across_p(4), across_q(4), along(3);
  for (int i = 0; i < 4; ++i) {
    across_p[i] = (e.row_p1[i] - e.row_b[i]) * Rational(3);
    across_q[i] = (e.row_b[i] - e.row_q2[i]) * Rational(3);
  }
  for (int i = 0; i < 3; ++i) along[i] = (e.row_b[i + 1] - e.row_b[i]) * Rational(3);
  return {ExactVecPoly3(across_p), ExactVecPoly3(along), ExactVecPoly3(across_q)};
}

enum class Verdict { G1, NotG1, Degenerate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::G1: return "G1";
    case Verdict::NotG1: return "NotG1";
    default: return "Degenerate";
  }
}

/// Which condition the verdict of a report is drawn from.
enum class TestMode {
  /// Coplanarity of dp2, dp1, dq2 (vanishing determinant). Necessary for G1.
  Necessary,
  /// Existence of alpha(u) with the inward cross-boundary derivatives
  /// summing to alpha(u) dp1.
  Unbiased,
};

inline std::string to_string(TestMode m) {
  return m == TestMode::Necessary ? "necessary" : "unbiased";
}

struct G1Report {
  int edge_id = -1;
  TestMode mode = TestMode::Necessary;
  ExactPoly det_poly;
  Primitive det_primitive;
  bool is_coplanar = false;
  bool unbiased_ok = false;
  bool regular = false;
  Verdict verdict = Verdict::Degenerate;
};

namespace detail {

/// A boundary is regular when its derivative has no zero coefficient, its
/// coefficients are not all parallel (a straight segment), and it does not
/// vanish at 17 uniform parameters.
inline bool boundary_regular(const ExactVecPoly3& dp1) {
  const auto c = dp1.coeff_vectors();
  if (std::any_of(c.begin(), c.end(), [](const Point3& v) { return v.is_zero(); })) return false;
  bool straight = true;
  for (std::size_t k = 1; k < c.size(); ++k) straight = straight && parallel(c[0], c[k]);
  if (straight) return false;
  for (int k = 0; k <= 16; ++k)
    if (dp1(Rational(k, 16)).is_zero()) return false;
  return true;
}

inline G1Report analyze(const EdgeData& e, TestMode mode) {
  const EdgeDerivatives d = edge_derivatives(e);
  G1Report r;
  r.edge_id = e.edge_id;
  r.mode = mode;
  r.det_poly = det3(d.dp2, d.dp1, d.dq2);
  r.det_primitive = normalize_primitive(r.det_poly);
  r.is_coplanar = r.det_poly.is_zero();
  // alpha(u) is eliminated: the sum of the inward derivatives must be
  // parallel to dp1 everywhere.
  r.unbiased_ok = cross(d.dp2 - d.dq2, d.dp1).is_zero();
  r.regular = boundary_regular(d.dp1);
  const bool passes = mode == TestMode::Necessary ? r.is_coplanar : r.unbiased_ok;
  r.verdict = !r.regular ? Verdict::Degenerate : (passes ? Verdict::G1 : Verdict::NotG1);
  return r;
}

}  // namespace detail

/// Determinant test |dp2, dp1, dq2| = 0. The determinant has degree 8 and is
/// decided exactly; verdict NotG1 means tangent planes differ somewhere.
inline G1Report g1_necessary_test(const EdgeData& e) {
  return detail::analyze(e, TestMode::Necessary);
}

/// Unbiased constraint dp2 + dq2_in = alpha(u) dp1 with dq2_in = -dq2 the
/// inward derivative of q. Implies the determinant test.
inline G1Report unbiased_test(const EdgeData& e) { return detail::analyze(e, TestMode::Unbiased); }

struct ComplexSummary {
  std::size_t g1 = 0;
  std::size_t not_g1 = 0;
  std::size_t degenerate = 0;
};

inline std::vector<G1Report> check_complex(const PatchComplex& c,
                                           TestMode mode = TestMode::Necessary) {
  std::vector<G1Report> out;
  out.reserve(c.shared_edges.size());
  for (int e = 0; e < static_cast<int>(c.shared_edges.size()); ++e)
    out.push_back(detail::analyze(extract_edge_data(c, e), mode));
  return out;
}

inline ComplexSummary summarize(const std::vector<G1Report>& reports) {
  ComplexSummary s;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::G1) ++s.g1;
    else if (r.verdict == Verdict::NotG1) ++s.not_g1;
    else ++s.degenerate;
  }
  return s;
}

/// Gate semantics: 1 if any edge is NotG1, else 3 if any is Degenerate,
/// else 0.
inline int gate_exit_code(const std::vector<G1Report>& reports) {
  const ComplexSummary s = summarize(reports);
  if (s.not_g1 > 0) return 1;
  if (s.degenerate > 0) return 3;
  return 0;
}

struct NormalJumpReport {
  int edge_id = -1;
  int samples = 0;
  double max_angle = 0;
  std::vector<std::pair<double, double>> angle_profile;  // (u, angle)
  std::vector<double> degenerate_samples;                // u with a vanishing normal
};

/// Angle between the unit normals of p and q at `samples` + 1 uniform
/// parameters u = k / samples along the edge (so the grids for s and 2s
/// nest). Samples where either normal vanishes are listed separately and
/// left out of the maximum.
inline NormalJumpReport normal_jump(const EdgeData& e, int samples) {
  if (samples < 2) throw Error("normal jump needs at least 2 samples");
  const EdgeDerivatives d = edge_derivatives(e);
  NormalJumpReport r;
  r.edge_id = e.edge_id;
  r.samples = samples;
  for (int k = 0; k <= samples; ++k) {
    const Rational u(k, samples);
    const Point3 along = d.dp1(u);
    const Point3 np = cross(along, d.dp2(u));
    const Point3 nq = cross(along, d.dq2(u));
    const double ud = to_double(u);
    if (np.is_zero() || nq.is_zero()) {
      r.degenerate_samples.push_back(ud);
      continue;
    }
    double angle = 0;
    if (parallel(np, nq)) {
      angle = dot(np, nq) > 0 ? 0.0 : M_PI;
    } else {
      const Vec3d a = to_double(np), b = to_double(nq);
      const Vec3d an = a / norm(a), bn = b / norm(b);
      angle = std::atan2(norm(cross(an, bn)), dot(an, bn));
    }
    r.angle_profile.emplace_back(ud, angle);
    r.max_angle = std::max(r.max_angle, angle);
  }
  return r;
}

inline NormalJumpReport normal_jump(const PatchComplex& c, int edge_id, int samples) {
  return normal_jump(extract_edge_data(c, edge_id), samples);
}

/// Normal jump between two patches glued along the given sides. Checks C0
/// first and throws ContinuityError when the boundary rows differ.
inline NormalJumpReport normal_jump(const BezierPatch& pa, int side_a, const BezierPatch& pb,
                                    int side_b, int samples) {
  PatchComplex c;
  c.patches = {pa, pb};
  c.patch_corners = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  auto& ca = c.patch_corners[0];
  auto& cb = c.patch_corners[1];
  // Glue the chosen sides with opposite traversal.
  cb[side_b] = ca[(side_a + 1) % 4];
  cb[(side_b + 1) % 4] = ca[side_a];
  connect_by_corners(c);
  if (c.shared_edges.size() != 1) throw Error("patch sides could not be glued");
  return normal_jump(c, 0, samples);
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json ints_to_json(const std::vector<BigInt>& ints) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : ints) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
      a.push_back(v.convert_to<long long>());
    else
      a.push_back(v.str());
  }
  return a;
}

inline nlohmann::json to_json(const G1Report& r) {
  nlohmann::json det = nlohmann::json::array();
  for (const auto& c : r.det_poly.coeffs()) det.push_back(to_string(c));
  return {{"edge_id", r.edge_id},
          {"mode", to_string(r.mode) + "-condition"},
          {"det_poly", det},
          {"det_primitive", {{"scale", to_string(r.det_primitive.scale)},
                             {"ints", ints_to_json(r.det_primitive.ints)}}},
          {"is_coplanar", r.is_coplanar},
          {"unbiased_ok", r.unbiased_ok},
          {"regular", r.regular},
          {"verdict", to_string(r.verdict)}};
}

inline nlohmann::json to_json(const NormalJumpReport& r) {
  nlohmann::json prof = nlohmann::json::array();
  for (const auto& [u, a] : r.angle_profile) prof.push_back({u, a});
  return {{"edge_id", r.edge_id},
          {"samples", r.samples},
          {"max_angle", r.max_angle},
          {"angle_profile", prof},
          {"degenerate_samples", r.degenerate_samples}};
}

}  // namespace g1kit
