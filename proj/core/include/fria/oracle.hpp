#pragma once

#include "fria/fem.hpp"
#include "fria/mesh.hpp"
#include "fria/weights.hpp"

namespace fria {

/// Smallest discrete Dirichlet eigenvalue of -div(alpha grad .) and the
/// induced estimate 1/sqrt(lambda) of the weighted Friedrichs constant.
/// Conforming eigenvalues lie above the exact ones, so c_estimate is a lower
/// estimate of the true constant.
struct EigenEstimate {
  double lambda_min = 0.0;
  double c_estimate = 0.0;
  int iterations = 0;
  /// ||K v - lambda M v|| / ||K v|| at exit.
  double residual = 0.0;
};

struct EigenOptions {
  double tolerance = 1e-8;
  int max_outer = 500;
  double inner_tolerance = 1e-10;
};

/// Shifted inverse power iteration for K v = lambda M v on interior nodes
/// (consistent mass). Throws ConvergenceFailure after max_outer iterations.
EigenEstimate estimate_cfa(const TriMesh& m, const FullWeight& alpha, const EigenOptions& options = {});

/// Exact P1 interpolation of `coarse` onto the vertices of a nested finer mesh.
/// Throws InvalidInput if some fine triangle is not contained in a single
/// coarse triangle.
P1Solution prolongate(const P1Solution& coarse, const TriMesh& fine);

/// ||grad(I coarse - reference)||_alpha on the reference mesh.
double reference_energy_error(const P1Solution& coarse, const P1Solution& reference, const FullWeight& alpha);

}  // namespace fria
