#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fria {

struct Triplet {
  std::int32_t row;
  std::int32_t col;
  double value;
};

/// Compressed sparse row matrix with sorted column indices per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Duplicates are summed. The summation order is the order of `entries`
  /// after a stable sort by (row, col), so equal inputs give bitwise equal
  /// matrices.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::int32_t> col_index() const { return col_; }
  std::span<const double> values() const { return values_; }

  /// Entry (i, j), zero if not stored.
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// Exact symmetry of the stored entries.
  bool is_symmetric() const;

  /// a*A + b*B for two matrices with the same sparsity pattern.
  static CsrMatrix combine(double a, const CsrMatrix& A, double b, const CsrMatrix& B);

  /// Rows and columns selected by `keep` (indices into this matrix), in that order.
  CsrMatrix submatrix(std::span<const std::int32_t> keep) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::int32_t> col_;
  std::vector<double> values_;
};

struct CgOptions {
  double rel_tol = 1e-10;
  /// 0 selects 10 * dimension.
  std::size_t max_iterations = 0;
};

struct CgReport {
  std::size_t iterations = 0;
  /// ||b - A x|| / ||b|| at exit (0 for b = 0).
  double relative_residual = 0.0;
  bool converged = false;
  /// False if a search direction with p^T A p <= 0 was met.
  bool positive_curvature = true;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite A.
/// `x` holds the initial guess on entry.
CgReport conjugate_gradient(const CsrMatrix& A, std::span<const double> b, std::span<double> x,
                            const CgOptions& options = {});

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace fria
