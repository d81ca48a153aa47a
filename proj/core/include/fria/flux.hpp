#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fria/fem.hpp"
#include "fria/mesh.hpp"
#include "fria/weights.hpp"

namespace fria {

/// Lowest-order Raviart-Thomas field. One degree of freedom per edge: the
/// integral of the normal component over the edge, taken along the edge's
/// normal (see Edge). The mesh must outlive the field.
class RT0Field {
 public:
  RT0Field(const TriMesh& mesh, std::vector<double> edge_dofs);

  const TriMesh& mesh() const { return *mesh_; }
  std::span<const double> dofs() const { return dofs_; }
  double dof(Index e) const { return dofs_[static_cast<std::size_t>(e)]; }

  /// Value of the field at point x, evaluated with the basis of triangle t.
  Vec2 value(Index t, Point x) const;

 private:
  const TriMesh* mesh_;
  std::vector<double> dofs_;
};

/// Edge averaging of the broken flux alpha grad u: interior edges take the
/// mean of the two adjacent normal components, boundary edges the one-sided
/// trace.
RT0Field rt_average(const P1Solution& s, const FullWeight& alpha);

/// Averaging of an arbitrary piecewise constant flux.
RT0Field rt_average(const TriMesh& m, std::span<const Vec2> flux_per_triangle);

/// Piecewise constant divergence: sum of outward-signed dofs over |T|.
std::vector<double> rt_divergence(const RT0Field& y);

struct FluxNorms {
  double residual_norm = 0.0;  ///< ||f + div y||
  double defect_norm = 0.0;    ///< ||y - alpha grad u||_{alpha^-1}
};

/// Both norms for constant f. The defect uses the edge-midpoint rule, which
/// is exact for the quadratic integrand.
FluxNorms flux_defect_norms(const RT0Field& y, const P1Solution& s, const FullWeight& alpha, double f);

/// Variable source: the residual term is integrated with a 7-point
/// degree-5 rule per triangle.
FluxNorms flux_defect_norms(const RT0Field& y, const P1Solution& s, const FullWeight& alpha,
                            const std::function<double(Point)>& f);

}  // namespace fria
