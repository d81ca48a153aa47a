#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fria/error.hpp"
#include "fria/flux.hpp"
#include "oracles.hpp"

namespace fria {
namespace {

const FullWeight kAniso = FullWeight::diagonal({1.0, 1e-4});

P1Solution linear(const TriMesh& m, Vec2 g) {
  return interpolate(m, [g](Point p) { return g.x * p.x + g.y * p.y + 0.25; });
}

double oracle_defect(const RT0Field& y, const P1Solution& s, const FullWeight& alpha) {
  const TriMesh& m = s.mesh();
  double total = 0.0;
  for (Index t = 0; t < static_cast<Index>(m.num_triangles()); ++t) {
    const auto& tri = m.triangle(t);
    const Vec2 ag = apply(alpha, s.gradient(t));
    total += testing::Dunavant7::integrate(m.vertex(tri[0]), m.vertex(tri[1]), m.vertex(tri[2]), [&](Point x) {
      return inverse_quadratic_form(alpha, y.value(t, x) - ag);
    });
  }
  return std::sqrt(total);
}

TEST(RtAverage, ConstantGradientIsFixedPoint) {
  const TriMesh m = build_lshape(0);
  const FullWeight alpha = FullWeight::from_upper({2.0, 0.5, 1.0});
  const Vec2 g{0.7, -1.3};
  const P1Solution s = linear(m, g);
  const RT0Field y = rt_average(s, alpha);
  const Vec2 ag = apply(alpha, g);
  for (Index e = 0; e < static_cast<Index>(m.num_edges()); ++e)
    EXPECT_NEAR(y.dof(e), m.edge_length(e) * dot(ag, m.edge_normal(e)), 1e-14);
  for (Index t = 0; t < static_cast<Index>(m.num_triangles()); t += 17) {
    const auto& tri = m.triangle(t);
    const Point c = (1.0 / 3.0) * (m.vertex(tri[0]) + m.vertex(tri[1]) + m.vertex(tri[2]));
    const Vec2 v = y.value(t, c);
    EXPECT_NEAR(v.x, ag.x, 1e-12);
    EXPECT_NEAR(v.y, ag.y, 1e-12);
  }
  for (double d : rt_divergence(y)) EXPECT_NEAR(d, 0.0, 1e-11);
  const FluxNorms n = flux_defect_norms(y, s, alpha, 0.0);
  EXPECT_NEAR(n.residual_norm, 0.0, 1e-11);
  EXPECT_NEAR(n.defect_norm, 0.0, 1e-11);
}

TEST(RtAverage, ZeroSolutionGivesZeroField) {
  const TriMesh m = build_unit_square(4);
  const RT0Field y = rt_average(P1Solution(m, std::vector<double>(m.num_vertices(), 0.0)), kAniso);
  for (double d : y.dofs()) EXPECT_EQ(d, 0.0);
}

TEST(RtAverage, InteriorEdgesAverageBoundaryEdgesAreOneSided) {
  const TriMesh m = build_unit_square(3);
  std::vector<Vec2> flux(m.num_triangles());
  for (std::size_t t = 0; t < flux.size(); ++t) flux[t] = {static_cast<double>(t), 1.0 - static_cast<double>(t)};
  const RT0Field y = rt_average(m, flux);
  for (Index e = 0; e < static_cast<Index>(m.num_edges()); ++e) {
    const Edge& edge = m.edge(e);
    Vec2 mean = flux[static_cast<std::size_t>(edge.tri[0])];
    if (!edge.on_boundary()) mean = 0.5 * (mean + flux[static_cast<std::size_t>(edge.tri[1])]);
    EXPECT_NEAR(y.dof(e), m.edge_length(e) * dot(mean, m.edge_normal(e)), 1e-13);
  }
  EXPECT_THROW(rt_average(m, std::vector<Vec2>(2)), InvalidInput);
}

TEST(RtDivergence, SingleTrianglePerimeterOverArea) {
  const TriMesh m = TriMesh::from_triangles({{0, 0}, {2, 0}, {0, 1}}, {{0, 1, 2}});
  std::vector<double> dofs;
  double perimeter = 0.0;
  for (Index e = 0; e < 3; ++e) {
    dofs.push_back(m.edge_length(e));
    perimeter += m.edge_length(e);
  }
  const auto div = rt_divergence(RT0Field(m, dofs));
  EXPECT_NEAR(div[0], perimeter / 1.0, 1e-14);
}

TEST(RtDivergence, GlobalDivergenceTheorem) {
  auto rng = testing::seeded_rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int level = 0; level <= 1; ++level) {
    const TriMesh m = build_lshape(level);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> dofs(m.num_edges());
      for (double& d : dofs) d = u(rng);
      const RT0Field y(m, dofs);
      const auto div = rt_divergence(y);
      double lhs = 0.0;
      for (Index t = 0; t < static_cast<Index>(m.num_triangles()); ++t) lhs += m.area(t) * div[static_cast<std::size_t>(t)];
      double rhs = 0.0;
      for (Index e = 0; e < static_cast<Index>(m.num_edges()); ++e)
        if (m.edge(e).on_boundary()) rhs += y.dof(e);
      EXPECT_NEAR(lhs, rhs, 1e-11);
    }
  }
}

TEST(RtField, NormalComponentIsConstantOnEdges) {
  auto rng = testing::seeded_rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const TriMesh m = build_unit_square(3);
  std::vector<double> dofs(m.num_edges());
  for (double& d : dofs) d = u(rng);
  const RT0Field y(m, dofs);
  for (Index t = 0; t < static_cast<Index>(m.num_triangles()); ++t)
    for (int i = 0; i < 3; ++i) {
      const Index e = m.triangle_edges(t)[static_cast<std::size_t>(i)];
      const Edge& edge = m.edge(e);
      const Point a = m.vertex(edge.v[0]);
      const Point b = m.vertex(edge.v[1]);
      for (double s : {0.0, 0.3, 1.0}) {
        const Vec2 v = y.value(t, a + s * (b - a));
        EXPECT_NEAR(dot(v, m.edge_normal(e)) * m.edge_length(e), y.dof(e), 1e-13);
      }
    }
}

TEST(FluxDefectNorms, MidpointRuleMatchesSevenPointOracle) {
  auto rng = testing::seeded_rng(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const FullWeight& alpha : {kAniso, FullWeight::from_upper({2.0, 0.4, 0.5})}) {
    const TriMesh m = build_lshape(0);
    std::vector<double> nodal(m.num_vertices());
    for (double& v : nodal) v = u(rng);
    const P1Solution s(m, nodal);
    std::vector<double> dofs(m.num_edges());
    for (double& d : dofs) d = u(rng);
    const RT0Field y(m, dofs);
    const double got = flux_defect_norms(y, s, alpha, 1.0).defect_norm;
    const double want = oracle_defect(y, s, alpha);
    EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, want));
  }
}

TEST(FluxDefectNorms, ZeroFluxOnSingleSquare) {
  const TriMesh m = build_unit_square(1);
  const FullWeight alpha = FullWeight::diagonal({1.0, 4.0});
  const P1Solution s = linear(m, {1.0, 2.0});
  const RT0Field y(m, std::vector<double>(m.num_edges(), 0.0));
  const FluxNorms n = flux_defect_norms(y, s, alpha, 1.0);
  EXPECT_NEAR(n.residual_norm, 1.0, 1e-15);
  EXPECT_NEAR(n.defect_norm, energy_norm(s, alpha), 1e-14);
}

TEST(FluxDefectNorms, ResidualMatchesPerTriangleOracle) {
  const TriMesh m = build_lshape(0);
  const P1Solution s = solve_diffusion(m, kAniso, 1.0);
  const RT0Field y = rt_average(s, kAniso);
  const auto div = rt_divergence(y);
  double oracle = 0.0;
  for (Index t = 0; t < static_cast<Index>(m.num_triangles()); ++t) {
    const auto& tri = m.triangle(t);
    const double d = div[static_cast<std::size_t>(t)];
    oracle += testing::Dunavant7::integrate(m.vertex(tri[0]), m.vertex(tri[1]), m.vertex(tri[2]),
                                           [d](Point) { return (1.0 + d) * (1.0 + d); });
  }
  const FluxNorms n = flux_defect_norms(y, s, kAniso, 1.0);
  EXPECT_NEAR(n.residual_norm, std::sqrt(oracle), 1e-12 * std::sqrt(oracle));
  const FluxNorms v = flux_defect_norms(y, s, kAniso, [](Point) { return 1.0; });
  EXPECT_NEAR(v.residual_norm, n.residual_norm, 1e-12 * n.residual_norm);
  EXPECT_EQ(v.defect_norm, n.defect_norm);
  // Level-0 row of `fria table 2`, recombined under the two constants.
  EXPECT_NEAR(22.50791 * n.residual_norm + n.defect_norm, 18.4444, 0.15 * 18.4444);
  EXPECT_NEAR(0.31829 * n.residual_norm + n.defect_norm, 1.5563, 0.15 * 1.5563);
}

}  // namespace
}  // namespace fria
