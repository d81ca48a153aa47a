#include "fria/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include "fria/error.hpp"
#include "fria/sparse.hpp"

namespace fria {

namespace {

std::array<double, 3> barycentric(const TriMesh& m, Index t, Point x) {
  const auto& tri = m.triangle(t);
  const Point& a = m.vertex(tri[0]);
  const Point& b = m.vertex(tri[1]);
  const Point& c = m.vertex(tri[2]);
  const double two_area = cross(b - a, c - a);
  const double l1 = cross(x - a, c - a) / two_area;
  const double l2 = cross(b - a, x - a) / two_area;
  return {1.0 - l1 - l2, l1, l2};
}

// Uniform bucket grid over the coarse triangles for point location.
class TriangleLocator {
 public:
  explicit TriangleLocator(const TriMesh& m) : mesh_(m) {
    lo_ = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Point hi{-lo_.x, -lo_.y};
    for (const auto& p : m.vertices()) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    cells_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(m.num_triangles()))));
    size_ = {(hi.x - lo_.x) / cells_, (hi.y - lo_.y) / cells_};
    if (size_.x <= 0.0) size_.x = 1.0;
    if (size_.y <= 0.0) size_.y = 1.0;
    buckets_.resize(static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_));
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
      const auto& tri = m.triangle(static_cast<Index>(t));
      Point tlo = m.vertex(tri[0]), thi = tlo;
      for (Index v : tri) {
        const Point& p = m.vertex(v);
        tlo = {std::min(tlo.x, p.x), std::min(tlo.y, p.y)};
        thi = {std::max(thi.x, p.x), std::max(thi.y, p.y)};
      }
      const auto [i0, j0] = cell(tlo);
      const auto [i1, j1] = cell(thi);
      for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) buckets_[bucket(i, j)].push_back(static_cast<Index>(t));
      }
    }
  }

  std::optional<Index> find(Point x, double tol) const {
    const auto [i, j] = cell(x);
    for (Index t : buckets_[bucket(i, j)]) {
      const auto l = barycentric(mesh_, t, x);
      if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol) return t;
    }
    return std::nullopt;
  }

 private:
  std::pair<int, int> cell(Point p) const {
    auto clamp = [&](double v) { return std::clamp(static_cast<int>(std::floor(v)), 0, cells_ - 1); };
    return {clamp((p.x - lo_.x) / size_.x), clamp((p.y - lo_.y) / size_.y)};
  }
  std::size_t bucket(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(cells_) + static_cast<std::size_t>(i);
  }

  const TriMesh& mesh_;
  Point lo_;
  Vec2 size_;
  int cells_ = 1;
  std::vector<std::vector<Index>> buckets_;
};

constexpr double kLocateTol = 1e-10;
constexpr double kInnerAcceptable = 1e-6;

std::string sci(double v) {
  std::array<char, 32> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.3e", v);
  return {buf.data(), static_cast<std::size_t>(n)};
}

}  // namespace

EigenEstimate estimate_cfa(const TriMesh& m, const FullWeight& alpha, const EigenOptions& options) {
  if (alpha.dim() != 2) throw InvalidInput("estimate_cfa needs a 2x2 coefficient matrix");
  if (!(smallest_eigenvalue(alpha) > 0.0)) throw InvalidInput("estimate_cfa needs a positive definite alpha");
  const DofMap dofs = DofMap::interior(m);
  const std::size_t n = dofs.size();
  if (n == 0) throw InvalidInput("estimate_cfa: mesh has no interior vertices");

  const CsrMatrix K = assemble_stiffness(m, alpha).submatrix(dofs.free_vertices);
  const CsrMatrix M = assemble_mass(m).submatrix(dofs.free_vertices);

  auto m_normalize = [&](std::vector<double>& v) {
    const double s = std::sqrt(dot(v, M.multiply(v)));
    for (double& x : v) x /= s;
  };

  std::vector<double> v(n, 1.0);
  m_normalize(v);
  double shift = 0.0;
  CsrMatrix shifted = K;
  double lambda = dot(v, K.multiply(v));
  double previous = lambda;

  EigenEstimate est;
  for (int it = 1; it <= options.max_outer; ++it) {
    const std::vector<double> rhs = M.multiply(v);
    std::vector<double> w(v);
    CgReport r = conjugate_gradient(shifted, rhs, w, {options.inner_tolerance, 0});
    while (!r.positive_curvature && shift > 0.0) {
      // Shift overshot the smallest eigenvalue: back off toward zero.
      shift = shift < 1e-12 * lambda ? 0.0 : 0.5 * shift;
      shifted = CsrMatrix::combine(1.0, K, -shift, M);
      w = v;
      r = conjugate_gradient(shifted, rhs, w, {options.inner_tolerance, 0});
    }
    // Inexact inner solves are fine: convergence is judged on the true
    // eigen-residual below.
    if (!r.converged && !(r.relative_residual <= kInnerAcceptable)) {
      throw ConvergenceFailure("inner CG failed in inverse iteration (relative residual " +
                               sci(r.relative_residual) + ")");
    }
    v = std::move(w);
    m_normalize(v);
    const std::vector<double> Kv = K.multiply(v);
    const std::vector<double> Mv = M.multiply(v);
    lambda = dot(v, Kv);
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = Kv[i] - lambda * Mv[i];
    est.iterations = it;
    est.residual = norm2(res) / norm2(Kv);
    if (est.residual <= options.tolerance) {
      est.lambda_min = lambda;
      est.c_estimate = 1.0 / std::sqrt(lambda);
      return est;
    }
    if (shift == 0.0 && it >= 2 && std::abs(previous - lambda) < 1e-3 * lambda) {
      shift = 0.95 * lambda;
      shifted = CsrMatrix::combine(1.0, K, -shift, M);
    }
    previous = lambda;
  }
  throw ConvergenceFailure("inverse iteration did not converge in " + std::to_string(options.max_outer) +
                           " iterations (residual " + sci(est.residual) + ")");
}

P1Solution prolongate(const P1Solution& coarse, const TriMesh& fine) {
  const TriMesh& cm = coarse.mesh();
  const TriangleLocator locator(cm);
  std::vector<double> values(fine.num_vertices());
  for (std::size_t v = 0; v < fine.num_vertices(); ++v) {
    const Point x = fine.vertex(static_cast<Index>(v));
    const auto t = locator.find(x, kLocateTol);
    if (!t) throw InvalidInput("meshes are not nested: fine vertex " + std::to_string(v) + " lies outside the coarse mesh");
    const auto l = barycentric(cm, *t, x);
    const auto& tri = cm.triangle(*t);
    values[v] = l[0] * coarse.value(tri[0]) + l[1] * coarse.value(tri[1]) + l[2] * coarse.value(tri[2]);
  }
  for (std::size_t t = 0; t < fine.num_triangles(); ++t) {
    const auto& tri = fine.triangle(static_cast<Index>(t));
    const Point c = (1.0 / 3.0) * (fine.vertex(tri[0]) + fine.vertex(tri[1]) + fine.vertex(tri[2]));
    const auto host = locator.find(c, kLocateTol);
    bool inside = host.has_value();
    for (std::size_t i = 0; inside && i < 3; ++i) {
      const auto l = barycentric(cm, *host, fine.vertex(tri[i]));
      inside = l[0] >= -kLocateTol && l[1] >= -kLocateTol && l[2] >= -kLocateTol;
    }
    if (!inside) {
      throw InvalidInput("meshes are not nested: fine triangle " + std::to_string(t) +
                         " is not contained in a single coarse triangle");
    }
  }
  return P1Solution(fine, std::move(values));
}

double reference_energy_error(const P1Solution& coarse, const P1Solution& reference, const FullWeight& alpha) {
  const TriMesh& fine = reference.mesh();
  const P1Solution lifted = &coarse.mesh() == &fine ? coarse : prolongate(coarse, fine);
  std::vector<double> diff(fine.num_vertices());
  for (std::size_t v = 0; v < diff.size(); ++v) {
    diff[v] = lifted.value(static_cast<Index>(v)) - reference.value(static_cast<Index>(v));
  }
  return energy_norm(P1Solution(fine, std::move(diff)), alpha);
}

}  // namespace fria
