#include "fria/fem.hpp"

#include <cmath>
#include <string>

#include "fria/error.hpp"

namespace fria {

namespace {

void require_planar(const FullWeight& alpha) {
  if (alpha.dim() != 2) throw InvalidInput("P1 diffusion needs a 2x2 coefficient matrix");
}

P1Solution solve_with_load(const TriMesh& m, const FullWeight& alpha, std::vector<double> load,
                           const SolveOptions& options) {
  require_planar(alpha);
  if (!(smallest_eigenvalue(alpha) > 0.0)) throw InvalidInput("diffusion coefficient must be positive definite");
  const DofMap dofs = DofMap::interior(m);
  std::vector<double> nodal(m.num_vertices(), 0.0);
  if (dofs.size() == 0) return P1Solution(m, std::move(nodal));

  const CsrMatrix K = assemble_stiffness(m, alpha).submatrix(dofs.free_vertices);
  std::vector<double> b(dofs.size());
  for (std::size_t k = 0; k < dofs.size(); ++k) b[k] = load[static_cast<std::size_t>(dofs.free_vertices[k])];
  std::vector<double> x(dofs.size(), 0.0);
  const CgReport report = conjugate_gradient(K, b, x, {options.rel_tol, 0});
  if (!report.converged) {
    throw ConvergenceFailure("CG did not converge: " + std::to_string(report.iterations) +
                             " iterations, relative residual " + std::to_string(report.relative_residual) +
                             (report.positive_curvature ? "" : " (nonpositive curvature: indefinite system)"));
  }
  for (std::size_t k = 0; k < dofs.size(); ++k) nodal[static_cast<std::size_t>(dofs.free_vertices[k])] = x[k];
  P1Solution s(m, std::move(nodal));
  s.set_solver_report(report);
  return s;
}

}  // namespace

DofMap DofMap::interior(const TriMesh& m) {
  DofMap d;
  d.dof_of_vertex.assign(m.num_vertices(), -1);
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    if (m.is_boundary_vertex(static_cast<Index>(v))) continue;
    d.dof_of_vertex[v] = static_cast<Index>(d.free_vertices.size());
    d.free_vertices.push_back(static_cast<Index>(v));
  }
  return d;
}

std::array<Vec2, 3> barycentric_gradients(const TriMesh& m, Index t) {
  const auto& tri = m.triangle(t);
  const Point& p0 = m.vertex(tri[0]);
  const Point& p1 = m.vertex(tri[1]);
  const Point& p2 = m.vertex(tri[2]);
  const double two_area = cross(p1 - p0, p2 - p0);
  return {Vec2{(p1.y - p2.y) / two_area, (p2.x - p1.x) / two_area},
          Vec2{(p2.y - p0.y) / two_area, (p0.x - p2.x) / two_area},
          Vec2{(p0.y - p1.y) / two_area, (p1.x - p0.x) / two_area}};
}

Vec2 apply(const FullWeight& alpha, Vec2 g) {
  return {alpha(0, 0) * g.x + alpha(0, 1) * g.y, alpha(1, 0) * g.x + alpha(1, 1) * g.y};
}

double inverse_quadratic_form(const FullWeight& alpha, Vec2 g) {
  const double det = alpha(0, 0) * alpha(1, 1) - alpha(0, 1) * alpha(1, 0);
  if (det == 0.0 || !std::isfinite(1.0 / det)) throw InvalidInput("coefficient matrix is singular");
  // alpha^-1 = [a11 -a12; -a21 a00] / det
  return (alpha(1, 1) * g.x * g.x - 2.0 * alpha(0, 1) * g.x * g.y + alpha(0, 0) * g.y * g.y) / det;
}

CsrMatrix assemble_stiffness(const TriMesh& m, const FullWeight& alpha) {
  require_planar(alpha);
  std::vector<Triplet> entries;
  entries.reserve(9 * m.num_triangles());
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const auto grads = barycentric_gradients(m, ti);
    const double area = m.area(ti);
    const auto& tri = m.triangle(ti);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        entries.push_back({tri[i], tri[j], area * dot(apply(alpha, grads[j]), grads[i])});
      }
    }
  }
  return CsrMatrix::from_triplets(m.num_vertices(), m.num_vertices(), std::move(entries));
}

CsrMatrix assemble_mass(const TriMesh& m) {
  std::vector<Triplet> entries;
  entries.reserve(9 * m.num_triangles());
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const double area = m.area(ti);
    const auto& tri = m.triangle(ti);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        entries.push_back({tri[i], tri[j], area * (i == j ? 2.0 : 1.0) / 12.0});
      }
    }
  }
  return CsrMatrix::from_triplets(m.num_vertices(), m.num_vertices(), std::move(entries));
}

std::vector<double> constant_load(const TriMesh& m, double f) {
  std::vector<double> b(m.num_vertices(), 0.0);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const double share = f * m.area(ti) / 3.0;
    for (Index v : m.triangle(ti)) b[static_cast<std::size_t>(v)] += share;
  }
  return b;
}

std::vector<double> lumped_load(const TriMesh& m, std::span<const double> f_nodal) {
  if (f_nodal.size() != m.num_vertices()) throw InvalidInput("lumped_load: one source value per vertex expected");
  std::vector<double> b(m.num_vertices(), 0.0);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const double third = m.area(ti) / 3.0;
    for (Index v : m.triangle(ti)) b[static_cast<std::size_t>(v)] += third * f_nodal[static_cast<std::size_t>(v)];
  }
  return b;
}

P1Solution::P1Solution(const TriMesh& mesh, std::vector<double> nodal_values)
    : mesh_(&mesh), values_(std::move(nodal_values)) {
  if (values_.size() != mesh.num_vertices()) throw InvalidInput("P1Solution: one value per vertex expected");
  gradients_.resize(mesh.num_triangles());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const auto grads = barycentric_gradients(mesh, ti);
    const auto& tri = mesh.triangle(ti);
    Vec2 g;
    for (std::size_t i = 0; i < 3; ++i) g = g + values_[static_cast<std::size_t>(tri[i])] * grads[i];
    gradients_[t] = g;
  }
}

P1Solution interpolate(const TriMesh& m, const std::function<double(Point)>& g) {
  std::vector<double> v(m.num_vertices());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(m.vertex(static_cast<Index>(i)));
  return P1Solution(m, std::move(v));
}

P1Solution solve_diffusion(const TriMesh& m, const FullWeight& alpha, double f, const SolveOptions& options) {
  return solve_with_load(m, alpha, constant_load(m, f), options);
}

P1Solution solve_diffusion(const TriMesh& m, const FullWeight& alpha, std::span<const double> f_nodal,
                           const SolveOptions& options) {
  return solve_with_load(m, alpha, lumped_load(m, f_nodal), options);
}

double energy_norm(const P1Solution& s, const FullWeight& alpha) {
  require_planar(alpha);
  const TriMesh& m = s.mesh();
  double sum = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const Vec2 g = s.gradient(static_cast<Index>(t));
    sum += m.area(static_cast<Index>(t)) * dot(apply(alpha, g), g);
  }
  return std::sqrt(sum);
}

}  // namespace fria
