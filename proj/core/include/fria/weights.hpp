#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fria {

/// Side lengths l_1..l_d of the axis-aligned box (0,l_1)x...x(0,l_d)
/// that contains the domain. 1 <= d <= 3, every length finite and > 0.
class DInterval {
 public:
  explicit DInterval(std::span<const double> lengths);
  DInterval(std::initializer_list<double> lengths);

  int dim() const { return dim_; }
  double length(int i) const { return lengths_[static_cast<std::size_t>(i)]; }
  std::span<const double> lengths() const { return {lengths_.data(), static_cast<std::size_t>(dim_)}; }

  /// sum_i 1/l_i^2
  double inverse_square_sum() const;
  /// Euclidean length of the box diagonal.
  double diagonal() const;

 private:
  int dim_ = 0;
  std::array<double, 3> lengths_{};
};

/// Constant diagonal coefficient matrix diag(a_1..a_d).
///
/// Entries are only required to be finite: the diagonal minorant produced by
/// tilde_reduction() may be indefinite, and consumers check the sign
/// conditions they need.
class DiagonalWeight {
 public:
  explicit DiagonalWeight(std::span<const double> entries);
  DiagonalWeight(std::initializer_list<double> entries);

  int dim() const { return dim_; }
  double operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  std::span<const double> entries() const { return {entries_.data(), static_cast<std::size_t>(dim_)}; }

  bool is_nonnegative() const;
  /// All entries strictly positive.
  bool is_positive_definite() const;
  bool has_positive_entry() const;

  friend bool operator==(const DiagonalWeight&, const DiagonalWeight&) = default;

 private:
  int dim_ = 0;
  std::array<double, 3> entries_{};
};

/// Constant real symmetric d x d coefficient matrix, 1 <= d <= 3.
/// Symmetry is checked exactly on construction.
class FullWeight {
 public:
  /// Row-major d*d entries.
  FullWeight(int dim, std::span<const double> row_major);

  static FullWeight identity(int dim);
  static FullWeight diagonal(std::span<const double> entries);
  static FullWeight diagonal(std::initializer_list<double> entries);
  static FullWeight diagonal(const DiagonalWeight& w);
  /// Upper triangle, row-major: a11 (d=1); a11,a12,a22 (d=2);
  /// a11,a12,a13,a22,a23,a33 (d=3).
  static FullWeight from_upper(std::span<const double> upper);
  static FullWeight from_upper(std::initializer_list<double> upper);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(3 * i + j)]; }

  bool is_diagonal() const;
  DiagonalWeight diagonal_part() const;
  FullWeight scaled(double c) const;
  FullWeight minus(const DiagonalWeight& t) const;

  friend bool operator==(const FullWeight&, const FullWeight&) = default;

 private:
  FullWeight() = default;
  int dim_ = 0;
  std::array<double, 9> a_{};
};

/// Eigenvalues of a symmetric matrix in ascending order, closed form for d <= 3.
std::vector<double> eigenvalues(const FullWeight& w);
double smallest_eigenvalue(const FullWeight& w);
double largest_eigenvalue(const FullWeight& w);

/// Diagonal minorant: each diagonal entry minus the absolute off-diagonal
/// entries of its row. The quadratic form of the result never exceeds that
/// of w.
DiagonalWeight tilde_reduction(const FullWeight& w);

/// True iff w - diag(t) is positive semi-definite (up to rounding of the
/// entries of w).
bool dominates(const FullWeight& w, const DiagonalWeight& t);

/// Parses `diag:a,b,c` or `full:<upper triangle>` (see FullWeight::from_upper).
/// Throws InvalidInput with a message naming the problem.
FullWeight parse_weight(std::string_view text);
/// Canonical text form accepted by parse_weight; round-trips exactly.
std::string format_weight(const FullWeight& w);

/// Parses a comma-separated list of reals.
std::vector<double> parse_real_list(std::string_view text);

}  // namespace fria
