#include <gtest/gtest.h>

#include <random>

#include "fria/error.hpp"
#include "fria/sparse.hpp"
#include "oracles.hpp"

namespace fria {
namespace {

CsrMatrix laplace_1d(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return CsrMatrix::from_triplets(static_cast<std::size_t>(n), static_cast<std::size_t>(n), t);
}

TEST(CsrMatrix, DuplicatesAreSummedAndSorted) {
  const CsrMatrix a = CsrMatrix::from_triplets(2, 3, {{1, 2, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}, {0, 1, 0.5}});
  EXPECT_EQ(a.nonzeros(), 3u);
  EXPECT_EQ(a.at(0, 1), 2.5);
  EXPECT_EQ(a.at(1, 0), 3.0);
  EXPECT_EQ(a.at(1, 2), 1.0);
  EXPECT_EQ(a.at(0, 0), 0.0);
  const auto cols = a.col_index();
  EXPECT_LT(cols[1], cols[2]);
  EXPECT_THROW(CsrMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), InvalidInput);
}

TEST(CsrMatrix, MultiplyAndSubmatrix) {
  const CsrMatrix a = laplace_1d(4);
  EXPECT_TRUE(a.is_symmetric());
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  EXPECT_EQ(a.multiply(x), (std::vector<double>{0.0, 0.0, 0.0, 5.0}));
  const std::vector<std::int32_t> keep{1, 3};
  const CsrMatrix s = a.submatrix(keep);
  EXPECT_EQ(s.rows(), 2u);
  EXPECT_EQ(s.at(0, 0), 2.0);
  EXPECT_EQ(s.at(0, 1), 0.0);
  EXPECT_EQ(a.diagonal(), (std::vector<double>(4, 2.0)));
  const CsrMatrix c = CsrMatrix::combine(2.0, a, -1.0, a);
  EXPECT_EQ(c.at(0, 1), -1.0);
}

TEST(ConjugateGradient, SolvesSpdSystems) {
  auto rng = testing::seeded_rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {1, 5, 50, 400}) {
    const CsrMatrix a = laplace_1d(n);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (double& v : b) v = u(rng);
    std::vector<double> x(b.size(), 0.0);
    const CgReport r = conjugate_gradient(a, b, x);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.positive_curvature);
    EXPECT_LE(r.relative_residual, 1e-10);
    auto ax = a.multiply(x);
    for (std::size_t i = 0; i < b.size(); ++i) ax[i] -= b[i];
    EXPECT_LE(norm2(ax), 1e-10 * norm2(b));
  }
}

TEST(ConjugateGradient, ZeroRightHandSide) {
  const CsrMatrix a = laplace_1d(10);
  std::vector<double> b(10, 0.0);
  std::vector<double> x(10, 0.0);
  const CgReport r = conjugate_gradient(a, b, x);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(x, b);
}

TEST(ConjugateGradient, FlagsIndefiniteMatrix) {
  const CsrMatrix a = CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
  std::vector<double> b{1.0, 1.0};
  std::vector<double> x{0.0, 0.0};
  const CgReport r = conjugate_gradient(a, b, x);
  EXPECT_FALSE(r.converged && r.positive_curvature);
}

TEST(ConjugateGradient, ReportsNonConvergence) {
  const CsrMatrix a = laplace_1d(200);
  std::vector<double> b(200, 1.0);
  std::vector<double> x(200, 0.0);
  const CgReport r = conjugate_gradient(a, b, x, {1e-14, 3});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3u);
}

TEST(VectorOps, DotAndNorm) {
  const std::vector<double> a{3.0, 4.0};
  EXPECT_EQ(dot(a, a), 25.0);
  EXPECT_EQ(norm2(a), 5.0);
}

}  // namespace
}  // namespace fria
