#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fria/error.hpp"
#include "fria/weights.hpp"
#include "oracles.hpp"

namespace fria {
namespace {

const FullWeight kCalpha2 = FullWeight::from_upper({3, 1, 1, 300, 1, 3});

FullWeight random_symmetric(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> upper;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) upper.push_back(u(rng));
  return FullWeight::from_upper(upper);
}

double quad(const FullWeight& w, const std::vector<double>& v) {
  double s = 0.0;
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < w.dim(); ++j) s += v[i] * w(i, j) * v[j];
  return s;
}

TEST(DInterval, RejectsNonPositiveOrMissingLengths) {
  EXPECT_THROW(DInterval({1.0, 0.0}), InvalidInput);
  EXPECT_THROW(DInterval({1.0, -2.0}), InvalidInput);
  EXPECT_THROW(DInterval(std::span<const double>{}), InvalidInput);
  EXPECT_THROW(DInterval({1.0, 1.0, 1.0, 1.0}), InvalidInput);
  EXPECT_THROW(DInterval({INFINITY}), InvalidInput);
  EXPECT_DOUBLE_EQ(DInterval({1.0, 2.0}).inverse_square_sum(), 1.25);
}

TEST(FullWeight, RejectsNonSymmetric) {
  const std::array<double, 4> rm{1.0, 2.0, 3.0, 1.0};
  EXPECT_THROW(FullWeight(2, rm), InvalidInput);
  const std::array<double, 4> sym{1.0, 2.0, 2.0, 1.0};
  EXPECT_NO_THROW(FullWeight(2, sym));
}

TEST(SmallestEigenvalue, Examples) {
  EXPECT_EQ(smallest_eigenvalue(FullWeight::diagonal({1.0, 1e-2})), 1e-2);
  EXPECT_NEAR(smallest_eigenvalue(kCalpha2), 2.0, 2.0 * 1e-12);
  EXPECT_EQ(smallest_eigenvalue(FullWeight::identity(3)), 1.0);
}

TEST(SmallestEigenvalue, LargestOfCalpha2MatchesCharacteristicPolynomial) {
  // Roots of det(A - x I) = 0 for the example matrix, computed independently.
  const auto ev = testing::jacobi_eigenvalues({{{3, 1, 1}, {1, 300, 1}, {1, 1, 3}}}, 3);
  EXPECT_NEAR(largest_eigenvalue(kCalpha2), ev[2], 1e-12 * ev[2]);
  EXPECT_NEAR(ev[2], 300.0067566, 1e-6);
}

TEST(SmallestEigenvalue, AgreesWithJacobiOracle) {
  auto rng = testing::seeded_rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 3;
    const FullWeight w = random_symmetric(rng, d, 10.0);
    testing::Mat3 a{};
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a[i][j] = w(i, j);
    const auto ref = testing::jacobi_eigenvalues(a, d);
    const auto ev = eigenvalues(w);
    const double scale = std::max(std::abs(ref.front()), std::abs(ref.back()));
    for (int i = 0; i < d; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-12 * scale) << "trial " << trial;
  }
}

TEST(SmallestEigenvalue, Properties) {
  auto rng = testing::seeded_rng(2);
  std::uniform_real_distribution<double> pos(0.01, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 3;
    std::vector<double> diag;
    for (int i = 0; i < d; ++i) diag.push_back(pos(rng));
    EXPECT_EQ(smallest_eigenvalue(FullWeight::diagonal(diag)), *std::min_element(diag.begin(), diag.end()));

    const FullWeight w = random_symmetric(rng, d);
    const double c = pos(rng);
    const double lo = smallest_eigenvalue(w);
    EXPECT_NEAR(smallest_eigenvalue(w.scaled(c)), c * lo, 1e-12 * c * std::max(1.0, std::abs(largest_eigenvalue(w))));
  }
}

TEST(TildeReduction, Examples) {
  EXPECT_EQ(tilde_reduction(kCalpha2), (DiagonalWeight{1.0, 298.0, 1.0}));
  EXPECT_EQ(tilde_reduction(FullWeight::diagonal({2.0, 5.0, 7.0})), (DiagonalWeight{2.0, 5.0, 7.0}));
  EXPECT_EQ(tilde_reduction(FullWeight::from_upper({2, 2, 0, 2, 0, 5})), (DiagonalWeight{0.0, 0.0, 5.0}));
  // 2-D analog subtracts the single off-diagonal magnitude.
  EXPECT_EQ(tilde_reduction(FullWeight::from_upper({4, -1, 3})), (DiagonalWeight{3.0, 2.0}));
}

TEST(TildeReduction, MayBeIndefinite) {
  const DiagonalWeight t = tilde_reduction(FullWeight::from_upper({1, 3, 1}));
  EXPECT_EQ(t, (DiagonalWeight{-2.0, -2.0}));
  EXPECT_FALSE(t.is_nonnegative());
}

TEST(TildeReduction, IdempotentOnDiagonal) {
  auto rng = testing::seeded_rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const FullWeight w = FullWeight::diagonal({u(rng), u(rng), u(rng)});
    const DiagonalWeight once = tilde_reduction(w);
    EXPECT_EQ(tilde_reduction(FullWeight::diagonal(once)), once);
  }
}

TEST(Dominates, Examples) {
  EXPECT_TRUE(dominates(kCalpha2, DiagonalWeight{1.0, 298.0, 1.0}));
  EXPECT_TRUE(dominates(FullWeight::identity(3), DiagonalWeight{1.0, 1.0, 1.0}));
  EXPECT_FALSE(dominates(FullWeight::identity(2), DiagonalWeight{1.5, 1.0}));
}

TEST(Dominates, RandomReductionsAlwaysDominated) {
  auto rng = testing::seeded_rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 2;
    const FullWeight w = random_symmetric(rng, d, 50.0);
    const DiagonalWeight t = tilde_reduction(w);
    EXPECT_TRUE(dominates(w, t)) << format_weight(w);
    // Oracle: quadratic forms on random vectors.
    for (int k = 0; k < 10; ++k) {
      std::vector<double> v(d);
      for (double& x : v) x = g(rng);
      const double wq = quad(w, v);
      const double tq = quad(FullWeight::diagonal(t), v);
      EXPECT_LE(tq, wq + 1e-12 * std::max(1.0, std::abs(wq)));
    }
  }
}

TEST(ParseWeight, AcceptedForms) {
  EXPECT_EQ(parse_weight("diag:1,1e-6"), FullWeight::diagonal({1.0, 1e-6}));
  EXPECT_EQ(parse_weight("full:3,1,1,300,1,3"), kCalpha2);
  EXPECT_EQ(parse_weight("full:2,0.5,1"), FullWeight::from_upper({2, 0.5, 1}));
}

TEST(ParseWeight, RejectsMalformed) {
  EXPECT_THROW(parse_weight("diag:"), InvalidInput);
  EXPECT_THROW(parse_weight("diag:1,x"), InvalidInput);
  EXPECT_THROW(parse_weight("diag:1,2,3,4"), InvalidInput);
  EXPECT_THROW(parse_weight("diag:-1,2"), InvalidInput);
  EXPECT_THROW(parse_weight("full:1,2,3,4"), InvalidInput);
  EXPECT_THROW(parse_weight("sym:1,2,3"), InvalidInput);
  EXPECT_THROW(parse_weight("1,2,3"), InvalidInput);
  try {
    parse_weight("full:1,2");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("1, 3 or 6"), std::string::npos);
  }
}

TEST(ParseWeight, FormatRoundTripIsExact) {
  auto rng = testing::seeded_rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + trial % 3;
    const FullWeight w = trial % 2 ? random_symmetric(rng, d, 1e3) : random_symmetric(rng, d, 1.0).scaled(1e-7);
    EXPECT_EQ(parse_weight(format_weight(w)), w);
  }
}

}  // namespace
}  // namespace fria
