#pragma once

#include <optional>

#include "fria/friedrichs.hpp"
#include "fria/weights.hpp"

namespace fria {

/// Inputs for tangential Maxwell constant bounds on a convex domain in R^3.
/// Convexity of the domain is the caller's responsibility.
struct MaxwellInput {
  DInterval box;
  FullWeight eps;
  double diam;
  double eps_max;

  /// Validates dimensions and fills defaults: diam = box diagonal,
  /// eps_max = largest eigenvalue of eps.
  static MaxwellInput make(const DInterval& box, const FullWeight& eps, std::optional<double> diam = std::nullopt,
                           std::optional<double> eps_max = std::nullopt);
};

/// Payne-Weinberger: c_p <= diam/pi on convex domains.
double poincare_convex_bound(double diam);

/// max(c_feps, sqrt(eps_max) * c_p)
double maxwell_from_parts(double c_feps, double eps_max, double c_p);

/// Friedrichs arm from the coarse bound (smallest eigenvalue of eps).
BoundReport maxwell_coarse(const MaxwellInput& in);
/// Friedrichs arm from the diagonal bound; eps must be diagonal and positive.
BoundReport maxwell_diagonal(const MaxwellInput& in);
/// Friedrichs arm from the bound on the diagonal reduction of eps.
BoundReport maxwell_full(const MaxwellInput& in);
/// Friedrichs arm from the semi-definite bound on diag(eps) or on the
/// reduction of a non-diagonal eps.
BoundReport maxwell_semidef(const MaxwellInput& in);
/// Smallest applicable Maxwell bound, ties in order thmA, thmA2, semidef, coarse.
BoundReport maxwell_best(const MaxwellInput& in);

}  // namespace fria
