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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"

namespace g1kit {
namespace {

Mesh octahedron() {
  return Mesh({Point3(1, 0, 0), Point3(-1, 0, 0), Point3(0, 1, 0), Point3(0, -1, 0),
               Point3(0, 0, 1), Point3(0, 0, -1)},
              {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
               {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}});
}

std::vector<Mesh> closed_meshes() {
  return {make_tetrahedron(), make_cube(), make_triangular_prism(), octahedron()};
}

TEST(DooSabin, TetrahedronOneStep) {
  const Mesh m = ds_step(make_tetrahedron(), WeightVariant::Classical);
  const MeshStats s = m.stats();
  EXPECT_EQ(s.vertex_count, 12u);
  EXPECT_EQ(s.edge_count, 24u);
  EXPECT_EQ(s.face_count, 14u);
  EXPECT_EQ(s.euler, 2);
  EXPECT_EQ(s.vertex_valence_histogram, (std::map<std::size_t, std::size_t>{{4, 12}}));
  EXPECT_EQ(s.face_degree_histogram, (std::map<std::size_t, std::size_t>{{3, 8}, {4, 6}}));
}

TEST(DooSabin, CubeCounts) {
  const RefinementTrace t = ds_refine(make_cube(), 2, WeightVariant::Classical);
  EXPECT_EQ(t.meshes[1].stats().vertex_count, 24u);
  EXPECT_EQ(t.meshes[1].stats().edge_count, 48u);
  EXPECT_EQ(t.meshes[1].stats().face_count, 26u);
  EXPECT_EQ(t.meshes[2].stats().vertex_count, 96u);
  EXPECT_EQ(t.meshes[2].stats().edge_count, 192u);
  EXPECT_EQ(t.meshes[2].stats().face_count, 98u);
}

TEST(DooSabin, TwoStepsOnTetrahedron) {
  const RefinementTrace t = ds_refine(make_tetrahedron(), 2, WeightVariant::Classical);
  const MeshStats s = t.finest().stats();
  EXPECT_EQ(s.vertex_count, 48u);
  EXPECT_EQ(s.edge_count, 96u);
  EXPECT_EQ(s.face_count, 50u);
}

TEST(DooSabin, IteratedCountIdentities) {
  for (const Mesh& m : closed_meshes())
    for (auto variant : {WeightVariant::Classical, WeightVariant::MidpointAverage}) {
      const RefinementTrace t = ds_refine(m, 3, variant);
      for (int L = 0; L < 3; ++L) {
        const Mesh& a = t.meshes[L];
        const Mesh& b = t.meshes[L + 1];
        EXPECT_EQ(b.vertex_count(), 2 * a.edge_count());
        EXPECT_EQ(b.edge_count(), 4 * a.edge_count());
        EXPECT_EQ(b.face_count(), a.face_count() + a.vertex_count() + a.edge_count());
        EXPECT_EQ(b.euler(), a.euler());
        EXPECT_TRUE(b.is_closed());
        for (std::size_t v = 0; v < b.vertex_count(); ++v) EXPECT_EQ(b.valence(v), 4u);
      }
    }
}

TEST(DooSabin, ZeroStepsReturnsInput) {
  const Mesh m = make_cube();
  const RefinementTrace t = ds_refine(m, 0, WeightVariant::Classical);
  EXPECT_EQ(t.levels(), 0);
  EXPECT_EQ(t.finest().vertices(), m.vertices());
  EXPECT_EQ(t.finest().faces(), m.faces());
  EXPECT_THROW(ds_refine(m, -1, WeightVariant::Classical), Error);
}

TEST(DooSabin, ClassicalWeights) {
  EXPECT_EQ(ds_weights(3, WeightVariant::Classical),
            (std::vector<Rational>{Rational(2, 3), Rational(1, 6), Rational(1, 6)}));
  EXPECT_EQ(ds_weights(4, WeightVariant::Classical),
            (std::vector<Rational>{Rational(9, 16), Rational(3, 16), Rational(1, 16),
                                   Rational(3, 16)}));
  EXPECT_THROW(ds_weights(5, WeightVariant::Classical), Error);
  EXPECT_THROW(ds_weights(2, WeightVariant::MidpointAverage), Error);
}

TEST(DooSabin, ClassicalWeightsMatchTrigonometricFormula) {
  for (int n : {3, 4, 6}) {
    const auto w = ds_weights(n, WeightVariant::Classical);
    EXPECT_DOUBLE_EQ(to_double(w[0]), (n + 5.0) / (4.0 * n));
    for (int k = 1; k < n; ++k)
      EXPECT_NEAR(to_double(w[k]), (3 + 2 * std::cos(2 * M_PI * k / n)) / (4.0 * n), 1e-15)
          << "n=" << n << " k=" << k;
  }
}

TEST(DooSabin, WeightsSumToOne) {
  for (int n = 3; n <= 12; ++n) {
    Rational s = 0;
    for (const auto& w : ds_weights(n, WeightVariant::MidpointAverage)) s += w;
    EXPECT_EQ(s, 1);
  }
  for (int n : {3, 4, 6}) {
    Rational s = 0;
    for (const auto& w : ds_weights(n, WeightVariant::Classical)) s += w;
    EXPECT_EQ(s, 1);
  }
}

TEST(DooSabin, MidpointWeightsMatchGeometricDefinition) {
  testing::RandomRational rnd(30);
  for (int n = 3; n <= 7; ++n) {
    std::vector<Point3> poly(n);
    for (auto& p : poly) p = rnd.point();
    Point3 centroid;
    for (const auto& p : poly) centroid += p;
    centroid /= Rational(n);
    const auto w = ds_weights(n, WeightVariant::MidpointAverage);
    for (int i = 0; i < n; ++i) {
      const Point3& v = poly[i];
      const Point3 to_next = (v + poly[(i + 1) % n]) / Rational(2);
      const Point3 to_prev = (v + poly[(i + n - 1) % n]) / Rational(2);
      const Point3 expected = (v + to_next + to_prev + centroid) / Rational(4);
      Point3 got;
      for (int k = 0; k < n; ++k) got += poly[(i + k) % n] * w[k];
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(DooSabin, PentagonNeedsMidpointVariant) {
  // Pentagonal prism: classical weights are irrational, midpoint works.
  std::vector<Point3> v;
  const int xy[5][2] = {{2, 0}, {1, 2}, {-1, 2}, {-2, 0}, {0, -2}};
  for (int z : {0, 1})
    for (const auto& p : xy) v.emplace_back(p[0], p[1], z);
  std::vector<std::vector<int>> f = {{4, 3, 2, 1, 0}, {5, 6, 7, 8, 9}};
  for (int i = 0; i < 5; ++i) f.push_back({i, (i + 1) % 5, 5 + (i + 1) % 5, 5 + i});
  const Mesh m(v, f);
  EXPECT_THROW(ds_step(m, WeightVariant::Classical), Error);
  EXPECT_EQ(ds_step(m, WeightVariant::MidpointAverage).stats().vertex_count, 30u);
}

TEST(DooSabin, OpenMeshIsRejected) {
  const Mesh open({Point3(0, 0, 0), Point3(1, 0, 0), Point3(0, 1, 0)}, {{0, 1, 2}});
  EXPECT_THROW(ds_step(open, WeightVariant::Classical), MeshError);
}

TEST(DooSabin, AffineEquivariance) {
  testing::RandomRational rnd(31);
  const std::vector<Mesh> meshes = closed_meshes();
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = testing::random_affine(rnd);
    const Mesh& m = meshes[trial % meshes.size()];
    const auto variant = trial % 2 ? WeightVariant::MidpointAverage : WeightVariant::Classical;
    const Mesh refined_then_mapped = testing::map_mesh(ds_refine(m, 2, variant).finest(), f);
    const Mesh mapped_then_refined = ds_refine(testing::map_mesh(m, f), 2, variant).finest();
    EXPECT_EQ(refined_then_mapped.vertices(), mapped_then_refined.vertices());
    EXPECT_EQ(refined_then_mapped.faces(), mapped_then_refined.faces());
  }
}

TEST(DooSabin, TetrahedronSymmetry) {
  // Rotations of the regular tetrahedron: a cyclic coordinate shift and a
  // half turn about the z axis. The refined vertex set is invariant.
  const RefinementTrace t = ds_refine(make_tetrahedron(), 3, WeightVariant::Classical);
  for (const Mesh& m : t.meshes) {
    const std::set<Point3> pts(m.vertices().begin(), m.vertices().end());
    std::set<Point3> cycled, turned;
    for (const auto& p : pts) {
      cycled.insert(Point3(p.y, p.z, p.x));
      turned.insert(Point3(-p.x, -p.y, p.z));
    }
    EXPECT_EQ(cycled, pts);
    EXPECT_EQ(turned, pts);
  }
}

TEST(DooSabin, FacetOriginAndLineage) {
  const Mesh m = make_cube();
  const RefinementTrace t = ds_refine(m, 3, WeightVariant::Classical);
  const Mesh& m1 = t.meshes[1];
  for (std::size_t f = 0; f < m1.face_count(); ++f) {
    const FacetOrigin o = facet_origin(m, f);
    switch (o.kind) {
      case FacetKind::Face: EXPECT_EQ(m1.face_degree(f), m.face_degree(o.index)); break;
      case FacetKind::Vertex: EXPECT_EQ(m1.face_degree(f), m.valence(o.index)); break;
      case FacetKind::Edge: EXPECT_EQ(m1.face_degree(f), 4u); break;
    }
  }
  EXPECT_EQ(facet_origin(m, 0).kind, FacetKind::Face);
  EXPECT_EQ(facet_origin(m, 6).kind, FacetKind::Vertex);
  EXPECT_EQ(facet_origin(m, 14).kind, FacetKind::Edge);
  EXPECT_EQ(facet_origin(m, 14).index, 0);
  // A face keeps its index and degree through every level.
  for (std::size_t f = 0; f < m.face_count(); ++f)
    for (int L = 0; L <= 3; ++L)
      EXPECT_EQ(t.meshes[L].face_degree(t.face_lineage[f][L]), m.face_degree(f));
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    for (int L = 1; L <= 3; ++L)
      EXPECT_EQ(t.meshes[L].face_degree(t.vertex_lineage[v][L]), m.valence(v));
}

TEST(DooSabin, FaceCentroidIsInvariantUnderRefinement) {
  for (auto variant : {WeightVariant::Classical, WeightVariant::MidpointAverage}) {
    const RefinementTrace t = ds_refine(make_triangular_prism(), 3, variant);
    for (std::size_t f = 0; f < t.input().face_count(); ++f)
      for (int L = 1; L <= 3; ++L)
        EXPECT_EQ(face_centroid(t.meshes[L], f), face_centroid(t.input(), f));
  }
}

TEST(DooSabin, LimitPointDoesNotDependOnLevelOrMethod) {
  for (auto variant : {WeightVariant::Classical, WeightVariant::MidpointAverage}) {
    const RefinementTrace t = ds_refine(make_tetrahedron(), 3, variant);
    const Mesh& m1 = t.meshes[1];
    for (std::size_t f = 0; f < m1.face_count(); ++f) {
      const Point3 ref = face_limit_point(t, 1, f, LimitMethod::EigenExtrapolate);
      for (int L = 1; L <= 3; ++L) {
        EXPECT_EQ(face_limit_point(t, L, f, LimitMethod::EigenExtrapolate), ref);
        EXPECT_EQ(face_limit_point(t, L, f, LimitMethod::Centroid), ref);
      }
    }
  }
}

TEST(DooSabin, LimitStencilIsLeftEigenvector) {
  for (int n = 3; n <= 8; ++n) {
    const auto variant = (n == 3 || n == 4 || n == 6) ? WeightVariant::Classical
                                                       : WeightVariant::MidpointAverage;
    const auto s = face_subdivision_matrix(n, variant);
    const auto l = limit_stencil(n, variant);
    for (int c = 0; c < n; ++c) {
      Rational sum = 0;
      for (int r = 0; r < n; ++r) sum += l[r] * s[r][c];
      EXPECT_EQ(sum, l[c]);
    }
  }
}

}  // namespace
}  // namespace g1kit
