#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fria/mesh.hpp"
#include "fria/sparse.hpp"
#include "fria/weights.hpp"

namespace fria {

/// Interior (free) vertices of a mesh and the inverse numbering.
struct DofMap {
  std::vector<Index> free_vertices;
  /// -1 for boundary vertices.
  std::vector<Index> dof_of_vertex;

  static DofMap interior(const TriMesh& m);
  std::size_t size() const { return free_vertices.size(); }
};

/// Gradients of the three barycentric coordinates of triangle t.
std::array<Vec2, 3> barycentric_gradients(const TriMesh& m, Index t);

/// alpha * g for a 2x2 weight.
Vec2 apply(const FullWeight& alpha, Vec2 g);
/// g^T alpha^-1 g for a 2x2 weight; throws InvalidInput if alpha is singular.
double inverse_quadratic_form(const FullWeight& alpha, Vec2 g);

/// Stiffness matrix over all vertices: sum_T |T| (alpha grad phi_j) . grad phi_i.
CsrMatrix assemble_stiffness(const TriMesh& m, const FullWeight& alpha);
/// Consistent P1 mass matrix over all vertices.
CsrMatrix assemble_mass(const TriMesh& m);
/// Load for constant f: f |T| / 3 per vertex per triangle.
std::vector<double> constant_load(const TriMesh& m, double f);
/// Lumped load for a nodal interpolant of f: f_i |T| / 3.
std::vector<double> lumped_load(const TriMesh& m, std::span<const double> f_nodal);

/// Continuous piecewise linear function on a mesh with cached per-triangle
/// gradients. The mesh must outlive the solution.
class P1Solution {
 public:
  P1Solution(const TriMesh& mesh, std::vector<double> nodal_values);

  const TriMesh& mesh() const { return *mesh_; }
  std::span<const double> values() const { return values_; }
  double value(Index v) const { return values_[static_cast<std::size_t>(v)]; }
  Vec2 gradient(Index t) const { return gradients_[static_cast<std::size_t>(t)]; }
  std::span<const Vec2> gradients() const { return gradients_; }

  /// Solver statistics; default-constructed unless produced by solve_diffusion.
  const CgReport& solver_report() const { return report_; }
  void set_solver_report(const CgReport& r) { report_ = r; }

 private:
  const TriMesh* mesh_;
  std::vector<double> values_;
  std::vector<Vec2> gradients_;
  CgReport report_;
};

/// Nodal interpolant of g.
P1Solution interpolate(const TriMesh& m, const std::function<double(Point)>& g);

struct SolveOptions {
  double rel_tol = 1e-10;
};

/// Galerkin P1 solution of -div(alpha grad u) = f with u = 0 on the boundary.
/// Throws ConvergenceFailure if CG does not converge in 10 N iterations.
P1Solution solve_diffusion(const TriMesh& m, const FullWeight& alpha, double f, const SolveOptions& options = {});
/// Same with the lumped load of a nodal source vector.
P1Solution solve_diffusion(const TriMesh& m, const FullWeight& alpha, std::span<const double> f_nodal,
                           const SolveOptions& options = {});

/// sqrt(sum_T |T| grad^T alpha grad), exact for P1.
double energy_norm(const P1Solution& s, const FullWeight& alpha);

}  // namespace fria
