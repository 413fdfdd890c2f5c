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

#include <set>

#include "test_util.hpp"

namespace g1kit {
namespace {

constexpr const char* kCubeObj = R"(# cube
v 0 0 0
v 1 0 0
v 0 1 0
v 1 1 0
v 0 0 1
v 1 0 1
v 0 1 1
v 1 1 1
f 1 3 4 2
f 5 6 8 7
f 1 2 6 5
f 3 7 8 4
f 1 5 7 3
f 2 4 8 6
)";

constexpr const char* kTetraOff = R"(OFF
# regular tetrahedron
4 4 6
-1 -1 -1
-1 1 1
1 -1 1
1 1 -1
3 1 2 3
3 0 3 2
3 0 1 3
3 0 2 1
)";

TEST(MeshIO, CubeStats) {
  const Mesh m = load_mesh(kCubeObj, MeshFormat::OBJ);
  const MeshStats s = m.stats();
  EXPECT_EQ(s.vertex_count, 8u);
  EXPECT_EQ(s.edge_count, 12u);
  EXPECT_EQ(s.face_count, 6u);
  EXPECT_EQ(s.euler, 2);
  EXPECT_EQ(s.face_degree_histogram, (std::map<std::size_t, std::size_t>{{4, 6}}));
  EXPECT_EQ(s.vertex_valence_histogram, (std::map<std::size_t, std::size_t>{{3, 8}}));
  EXPECT_TRUE(m.is_closed());
}

TEST(MeshIO, TetrahedronOff) {
  const Mesh m = load_mesh(kTetraOff, MeshFormat::OFF);
  const Mesh ref = make_tetrahedron();
  EXPECT_EQ(m.vertices(), ref.vertices());
  EXPECT_EQ(m.faces(), ref.faces());
  EXPECT_EQ(m.stats().euler, 2);
}

TEST(MeshIO, ObjIndexZeroIsRejectedWithLineNumber) {
  const std::string text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n";
  try {
    load_mesh(text, MeshFormat::OBJ);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(MeshIO, MalformedRecords) {
  EXPECT_THROW(load_mesh("v 0 0\n", MeshFormat::OBJ), ParseError);
  EXPECT_THROW(load_mesh("v 0 0 x\n", MeshFormat::OBJ), ParseError);
  EXPECT_THROW(load_mesh("v 0 0 0\nf 1 2\n", MeshFormat::OBJ), ParseError);
  EXPECT_THROW(load_mesh("3 3 0\n", MeshFormat::OFF), ParseError);
  EXPECT_THROW(load_mesh("OFF\n4 1 0\n0 0 0\n", MeshFormat::OFF), ParseError);
  EXPECT_THROW(load_mesh("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n", MeshFormat::OFF),
               ParseError);
}

TEST(MeshIO, RelativeObjIndicesAndSlashes) {
  const Mesh m = load_mesh("v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf -3//1 -2//1 -1//1\n",
                           MeshFormat::OBJ);
  EXPECT_EQ(m.face(0), (std::vector<int>{0, 1, 2}));
  EXPECT_FALSE(m.is_closed());
}

TEST(MeshIO, EmptyMesh) {
  const Mesh m = load_mesh("# nothing here\n", MeshFormat::OBJ);
  EXPECT_EQ(m.vertex_count(), 0u);
  EXPECT_EQ(m.face_count(), 0u);
  EXPECT_EQ(m.euler(), 0);
}

TEST(MeshIO, RoundTripOfSubdividedMeshIsExact) {
  const RefinementTrace t = ds_refine(make_tetrahedron(), 3, WeightVariant::Classical);
  for (MeshFormat fmt : {MeshFormat::OBJ, MeshFormat::OFF}) {
    const std::string text = save_mesh(t.finest(), fmt);
    const Mesh back = load_mesh(text, fmt);
    EXPECT_EQ(back.vertices(), t.finest().vertices());
    EXPECT_EQ(back.faces(), t.finest().faces());
    EXPECT_EQ(save_mesh(back, fmt), text);
  }
}

TEST(MeshIO, FormatFromPath) {
  EXPECT_EQ(format_from_path("a/b.OBJ"), MeshFormat::OBJ);
  EXPECT_EQ(format_from_path("x.off"), MeshFormat::OFF);
  EXPECT_THROW(format_from_path("x.stl"), Error);
  EXPECT_THROW(format_from_path("noext"), Error);
}

TEST(Mesh, RejectsInvalidInput) {
  const std::vector<Point3> v = make_tetrahedron().vertices();
  EXPECT_THROW(Mesh(v, {{0, 1}}), MeshError);
  EXPECT_THROW(Mesh(v, {{0, 1, 1}}), MeshError);
  EXPECT_THROW(Mesh(v, {{0, 1, 9}}), MeshError);
  // Same directed edge in two faces.
  EXPECT_THROW(Mesh(v, {{0, 1, 2}, {0, 1, 3}}), MeshError);
  // Inside-out tetrahedron.
  EXPECT_THROW(Mesh(v, {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}}), MeshError);
}

TEST(Mesh, RejectsTwoTetrahedraSharingAVertex) {
  const Mesh tetra = make_tetrahedron();
  std::vector<Point3> v = tetra.vertices();
  for (int i = 1; i < 4; ++i) v.push_back(tetra.vertex(i) * Rational(-1));
  // Second tetrahedron: vertex 0 plus the mirrored 4, 5, 6.
  std::vector<std::vector<int>> f = tetra.faces();
  for (auto face : tetra.faces()) {
    for (int& i : face) i = i == 0 ? 0 : i + 3;
    f.push_back(face);
  }
  EXPECT_THROW(Mesh(v, f), MeshError);
}

TEST(Mesh, HalfEdgeInvariants) {
  for (const Mesh& m : {make_tetrahedron(), make_cube(), make_triangular_prism()}) {
    const auto& H = m.half_edges();
    std::size_t degree_sum = 0;
    for (std::size_t f = 0; f < m.face_count(); ++f) degree_sum += m.face_degree(f);
    EXPECT_EQ(H.size(), degree_sum);
    EXPECT_EQ(2 * m.edge_count(), H.size());
    for (std::size_t h = 0; h < H.size(); ++h) {
      EXPECT_EQ(H[H[h].twin].twin, static_cast<int>(h));
      EXPECT_EQ(H[H[h].next].prev, static_cast<int>(h));
      EXPECT_EQ(H[H[h].twin].origin, H[H[h].next].origin);
      EXPECT_EQ(H[H[h].twin].edge, H[h].edge);
    }
    std::size_t valence_sum = 0;
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
      valence_sum += m.valence(v);
      const auto ring = m.outgoing_ccw(v);
      EXPECT_EQ(ring.size(), m.valence(v));
      std::set<int> ends;
      for (int h : ring) ends.insert(H[H[h].next].origin);
      EXPECT_EQ(ends.size(), ring.size());
    }
    EXPECT_EQ(valence_sum, 2 * m.edge_count());
    EXPECT_GT(m.signed_volume6(), 0);
  }
}

TEST(Mesh, CentroidCommutesWithAffineMaps) {
  testing::RandomRational rnd(20);
  const Mesh m = make_cube();
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = testing::random_affine(rnd);
    const Mesh mapped = testing::map_mesh(m, f);
    for (std::size_t k = 0; k < m.face_count(); ++k)
      EXPECT_EQ(face_centroid(mapped, k), f(face_centroid(m, k)));
  }
}

TEST(Mesh, EdgeLookup) {
  const Mesh m = make_tetrahedron();
  for (std::size_t e = 0; e < m.edge_count(); ++e) {
    auto [a, b] = m.edge_vertices(e);
    EXPECT_EQ(m.find_edge(a, b), static_cast<int>(e));
    EXPECT_EQ(m.find_edge(b, a), static_cast<int>(e));
  }
  EXPECT_EQ(make_cube().find_edge(0, 7), -1);
}

}  // namespace
}  // namespace g1kit
