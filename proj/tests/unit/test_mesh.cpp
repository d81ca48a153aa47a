#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "fria/error.hpp"
#include "fria/mesh.hpp"

namespace fria {
namespace {

TEST(BuildLshape, Counts) {
  const TriMesh m0 = build_lshape(0);
  EXPECT_EQ(m0.num_triangles(), 384u);
  EXPECT_EQ(m0.num_vertices(), 225u);
  EXPECT_EQ(m0.num_boundary_vertices(), 64u);
  EXPECT_EQ(static_cast<long>(m0.num_vertices()) - static_cast<long>(m0.num_edges()) +
                static_cast<long>(m0.num_triangles()),
            1);
  for (int level = 1; level <= 4; ++level) EXPECT_EQ(build_lshape(level).num_triangles(), 384u << (2 * level));
  EXPECT_EQ(build_lshape(4).num_triangles(), 98304u);
  EXPECT_THROW(build_lshape(kMaxLshapeLevel + 1), InvalidInput);
  EXPECT_THROW(build_lshape(-1), InvalidInput);
}

TEST(BuildLshape, VertexCountByEnumeration) {
  // Independent count: lattice points of a 17x17 grid outside the open
  // removed quadrant (x > 1/2, y < 1/2).
  int inside = 0;
  int boundary = 0;
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j <= 16; ++j) {
      if (i > 8 && j < 8) continue;
      ++inside;
      const bool on_outer = i == 0 || j == 0 || i == 16 || j == 16;
      const bool on_notch = (i == 8 && j <= 8) || (j == 8 && i >= 8);
      if (on_outer || on_notch) ++boundary;
    }
  EXPECT_EQ(inside, 225);
  EXPECT_EQ(boundary, 64);
}

TEST(BuildLshape, AreaAndValidity) {
  for (int level = 0; level <= 3; ++level) {
    const TriMesh m = build_lshape(level);
    EXPECT_NEAR(m.total_area(), 0.75, 1e-12);
    EXPECT_TRUE(validate(m).empty()) << level;
    for (Index t = 0; t < static_cast<Index>(m.num_triangles()); ++t) ASSERT_GT(m.signed_area(t), 0.0);
  }
}

TEST(BuildUnitSquare, Counts) {
  const TriMesh m1 = build_unit_square(1);
  EXPECT_EQ(m1.num_triangles(), 2u);
  EXPECT_EQ(m1.num_vertices(), 4u);
  const TriMesh m2 = build_unit_square(2);
  EXPECT_EQ(m2.num_triangles(), 8u);
  EXPECT_EQ(m2.num_vertices(), 9u);
  EXPECT_EQ(m2.num_edges(), 16u);
  EXPECT_EQ(build_unit_square(64).num_triangles(), 8192u);
  EXPECT_NEAR(build_unit_square(7).total_area(), 1.0, 1e-12);
  EXPECT_TRUE(validate(build_unit_square(8)).empty());
  EXPECT_THROW(build_unit_square(0), InvalidInput);
}

TEST(BuildUnitSquare, DiagonalRunsLowerLeftToUpperRight) {
  const TriMesh m = build_unit_square(1);
  std::set<std::pair<Index, Index>> diag;
  for (const Edge& e : m.edges())
    if (!e.on_boundary()) diag.insert(std::minmax(e.v[0], e.v[1]));
  ASSERT_EQ(diag.size(), 1u);
  const auto [a, b] = *diag.begin();
  const Point pa = m.vertex(a);
  const Point pb = m.vertex(b);
  EXPECT_NEAR(std::abs(pa.x - pb.x), 1.0, 0.0);
  EXPECT_EQ(pa.x - pb.x, pa.y - pb.y);
}

TEST(Validate, DetectsFlippedTriangle) {
  const TriMesh good = build_unit_square(3);
  std::vector<Point> v(good.vertices().begin(), good.vertices().end());
  std::vector<TriMesh::Triangle> t(good.triangles().begin(), good.triangles().end());
  std::swap(t[4][1], t[4][2]);
  const auto problems = validate(TriMesh::from_triangles(v, t));
  ASSERT_FALSE(problems.empty());
  int orientation = 0;
  for (const auto& p : problems)
    if (p.find("orient") != std::string::npos) ++orientation;
  EXPECT_EQ(orientation, 1);
}

TEST(Validate, DetectsOverlappingTriangle) {
  const TriMesh good = build_unit_square(2);
  std::vector<Point> v(good.vertices().begin(), good.vertices().end());
  std::vector<TriMesh::Triangle> t(good.triangles().begin(), good.triangles().end());
  t.push_back(t[0]);
  const TriMesh bad = TriMesh::from_triangles(v, t);
  EXPECT_GT(bad.overloaded_edges(), 0u);
  EXPECT_FALSE(validate(bad).empty());
}

TEST(FromTriangles, RejectsBadIndices) {
  EXPECT_THROW(TriMesh::from_triangles({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 3}}), InvalidInput);
  EXPECT_THROW(TriMesh::from_triangles({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1}}), InvalidInput);
}

TEST(Edges, OrientationConvention) {
  const TriMesh m = build_lshape(1);
  for (Index e = 0; e < static_cast<Index>(m.num_edges()); ++e) {
    const Edge& edge = m.edge(e);
    const Vec2 n = m.edge_normal(e);
    EXPECT_NEAR(dot(n, n), 1.0, 1e-14);
    // The normal points away from the centroid of tri[0].
    const auto& t0 = m.triangle(edge.tri[0]);
    const Point c = (1.0 / 3.0) * (m.vertex(t0[0]) + m.vertex(t0[1]) + m.vertex(t0[2]));
    EXPECT_GT(dot(n, m.edge_midpoint(e) - c), 0.0);
    if (!edge.on_boundary()) {
      EXPECT_LT(edge.tri[0], edge.tri[1]);
      const auto& t1 = m.triangle(edge.tri[1]);
      const Point c1 = (1.0 / 3.0) * (m.vertex(t1[0]) + m.vertex(t1[1]) + m.vertex(t1[2]));
      EXPECT_LT(dot(n, m.edge_midpoint(e) - c1), 0.0);
    }
  }
}

TEST(Edges, LocalEdgeOppositeVertexAndSigns) {
  const TriMesh m = build_unit_square(4);
  for (Index t = 0; t < static_cast<Index>(m.num_triangles()); ++t) {
    const auto& tri = m.triangle(t);
    for (int i = 0; i < 3; ++i) {
      const Edge& e = m.edge(m.triangle_edges(t)[static_cast<std::size_t>(i)]);
      EXPECT_NE(e.v[0], tri[static_cast<std::size_t>(i)]);
      EXPECT_NE(e.v[1], tri[static_cast<std::size_t>(i)]);
      EXPECT_EQ(m.edge_sign(t, i), e.tri[0] == t ? 1.0 : -1.0);
    }
  }
}

TEST(Edges, DeterministicAndIncidenceCounts) {
  const TriMesh a = build_lshape(2);
  const TriMesh b = build_lshape(2);
  ASSERT_EQ(a.num_edges(), b.num_edges());
  EXPECT_TRUE(std::equal(a.edges().begin(), a.edges().end(), b.edges().begin()));

  std::map<std::pair<Index, Index>, int> count;
  for (const auto& t : a.triangles())
    for (int i = 0; i < 3; ++i) ++count[std::minmax(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>((i + 1) % 3)])];
  EXPECT_EQ(count.size(), a.num_edges());
  std::size_t boundary = 0;
  for (const Edge& e : a.edges()) {
    EXPECT_EQ(count.at(std::minmax(e.v[0], e.v[1])), e.on_boundary() ? 1 : 2);
    boundary += e.on_boundary();
  }
  EXPECT_EQ(boundary, a.num_boundary_vertices());
}

TEST(MeshDump, RoundTrip) {
  const TriMesh m = build_lshape(0);
  std::stringstream ss;
  write_mesh(ss, m);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("$vertices 225\n", 0), 0u);
  EXPECT_NE(text.find("$triangles 384\n"), std::string::npos);
  EXPECT_NE(text.find("$edges " + std::to_string(m.num_edges()) + "\n"), std::string::npos);
  const TriMesh back = read_mesh(ss);
  EXPECT_TRUE(std::equal(m.vertices().begin(), m.vertices().end(), back.vertices().begin()));
  EXPECT_TRUE(std::equal(m.triangles().begin(), m.triangles().end(), back.triangles().begin()));
  EXPECT_TRUE(std::equal(m.edges().begin(), m.edges().end(), back.edges().begin()));
}

TEST(MeshDump, RejectsMalformed) {
  std::istringstream missing("$vertices 1\n0 0\n");
  EXPECT_THROW(read_mesh(missing), InvalidInput);
  std::istringstream truncated("$vertices 3\n0 0\n1 0\n");
  EXPECT_THROW(read_mesh(truncated), InvalidInput);
}

}  // namespace
}  // namespace fria
