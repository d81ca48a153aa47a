#include "fria/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "fria/error.hpp"

namespace fria {

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row < 0 || t.col < 0 || static_cast<std::size_t>(t.row) >= rows || static_cast<std::size_t>(t.col) >= cols) {
      throw InvalidInput("triplet index out of range");
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(rows + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    const auto& first = entries[k];
    double sum = 0.0;
    while (k < entries.size() && entries[k].row == first.row && entries[k].col == first.col) {
      sum += entries[k].value;
      ++k;
    }
    m.col_.push_back(first.col);
    m.values_.push_back(sum);
    ++m.row_ptr_[static_cast<std::size_t>(first.row) + 1];
  }
  for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto begin = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto end = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(begin, end, static_cast<std::int32_t>(j));
  if (it == end || *it != static_cast<std::int32_t>(j)) return 0.0;
  return values_[static_cast<std::size_t>(it - col_.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[static_cast<std::size_t>(col_[k])];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

bool CsrMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (at(static_cast<std::size_t>(col_[k]), i) != values_[k]) return false;
    }
  }
  return true;
}

CsrMatrix CsrMatrix::combine(double a, const CsrMatrix& A, double b, const CsrMatrix& B) {
  if (A.rows_ != B.rows_ || A.cols_ != B.cols_ || A.row_ptr_ != B.row_ptr_ || A.col_ != B.col_) {
    throw InvalidInput("CsrMatrix::combine: sparsity patterns differ");
  }
  CsrMatrix m = A;
  for (std::size_t k = 0; k < m.values_.size(); ++k) m.values_[k] = a * A.values_[k] + b * B.values_[k];
  return m;
}

CsrMatrix CsrMatrix::submatrix(std::span<const std::int32_t> keep) const {
  std::vector<std::int32_t> map(cols_, -1);
  for (std::size_t k = 0; k < keep.size(); ++k) map[static_cast<std::size_t>(keep[k])] = static_cast<std::int32_t>(k);
  CsrMatrix m;
  m.rows_ = keep.size();
  m.cols_ = keep.size();
  m.row_ptr_.assign(keep.size() + 1, 0);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto i = static_cast<std::size_t>(keep[r]);
    // Columns stay sorted because `keep` is increasing in practice; sort anyway.
    const std::size_t start = m.col_.size();
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::int32_t c = map[static_cast<std::size_t>(col_[k])];
      if (c < 0) continue;
      m.col_.push_back(c);
      m.values_.push_back(values_[k]);
    }
    const std::size_t n = m.col_.size() - start;
    std::vector<std::pair<std::int32_t, double>> row(n);
    for (std::size_t q = 0; q < n; ++q) row[q] = {m.col_[start + q], m.values_[start + q]};
    std::sort(row.begin(), row.end());
    for (std::size_t q = 0; q < n; ++q) {
      m.col_[start + q] = row[q].first;
      m.values_[start + q] = row[q].second;
    }
    m.row_ptr_[r + 1] = m.col_.size();
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

CgReport conjugate_gradient(const CsrMatrix& A, std::span<const double> b, std::span<double> x,
                            const CgOptions& options) {
  const std::size_t n = A.rows();
  if (A.cols() != n || b.size() != n || x.size() != n) throw InvalidInput("conjugate_gradient: size mismatch");
  CgReport report;
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    report.converged = true;
    return report;
  }
  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) d = d > 0.0 ? 1.0 / d : 1.0;

  std::vector<double> r(n), z(n), p(n), q(n);
  const std::size_t max_it = options.max_iterations ? options.max_iterations : 10 * std::max<std::size_t>(n, 1);
  auto true_residual = [&] {
    A.multiply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    return norm2(r);
  };

  double rnorm = true_residual();
  // Restart from the true residual whenever the recurrence claims convergence
  // but the recomputed residual disagrees.
  while (rnorm > options.rel_tol * bnorm && report.iterations < max_it && report.positive_curvature) {
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);
    while (rnorm > options.rel_tol * bnorm && report.iterations < max_it) {
      A.multiply(p, q);
      const double curvature = dot(p, q);
      if (!(curvature > 0.0)) {
        report.positive_curvature = false;
        break;
      }
      const double step = rz / curvature;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += step * p[i];
        r[i] -= step * q[i];
      }
      ++report.iterations;
      rnorm = norm2(r);
      for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
      const double rz_next = dot(r, z);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    rnorm = true_residual();
  }
  report.relative_residual = rnorm / bnorm;
  report.converged = report.positive_curvature && report.relative_residual <= options.rel_tol;
  return report;
}

}  // namespace fria
