#include "fria/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fria/error.hpp"

namespace fria {

namespace {

BoundReport finish(const MaxwellInput& in, BoundReport friedrichs) {
  friedrichs.value = maxwell_from_parts(friedrichs.value, in.eps_max, poincare_convex_bound(in.diam));
  friedrichs.weight = in.eps;
  return friedrichs;
}

}  // namespace

MaxwellInput MaxwellInput::make(const DInterval& box, const FullWeight& eps, std::optional<double> diam,
                                std::optional<double> eps_max) {
  if (box.dim() != 3) throw InvalidInput("Maxwell bounds need a 3-D box");
  if (eps.dim() != 3) throw InvalidInput("Maxwell bounds need a 3x3 permittivity");
  const double d = diam.value_or(box.diagonal());
  if (!std::isfinite(d) || d <= 0.0) throw InvalidInput("diam must be finite and > 0");
  if (d > box.diagonal() * (1.0 + 1e-12)) {
    throw InvalidInput("diam " + std::to_string(d) + " exceeds the box diagonal " + std::to_string(box.diagonal()));
  }
  const double lo = smallest_eigenvalue(eps);
  const double hi = largest_eigenvalue(eps);
  const double e = eps_max.value_or(hi);
  if (!std::isfinite(e) || e <= 0.0) throw InvalidInput("eps_max must be finite and > 0");
  if (e < lo * (1.0 - 1e-12)) {
    throw InvalidInput("eps_max " + std::to_string(e) + " is below the smallest eigenvalue " + std::to_string(lo));
  }
  return {box, eps, d, e};
}

double poincare_convex_bound(double diam) {
  if (!std::isfinite(diam) || diam <= 0.0) throw InvalidInput("poincare_convex_bound: diam must be > 0");
  return diam / std::numbers::pi;
}

double maxwell_from_parts(double c_feps, double eps_max, double c_p) {
  if (!(c_feps > 0.0 && eps_max > 0.0 && c_p > 0.0)) throw InvalidInput("maxwell_from_parts: inputs must be > 0");
  return std::max(c_feps, std::sqrt(eps_max) * c_p);
}

BoundReport maxwell_coarse(const MaxwellInput& in) { return finish(in, coarse_bound(in.box, in.eps)); }

BoundReport maxwell_diagonal(const MaxwellInput& in) {
  if (!in.eps.is_diagonal()) throw InvalidInput("maxwell_diagonal needs a diagonal permittivity");
  return finish(in, diagonal_bound(in.box, in.eps.diagonal_part()));
}

BoundReport maxwell_full(const MaxwellInput& in) { return finish(in, full_bound(in.box, in.eps)); }

BoundReport maxwell_semidef(const MaxwellInput& in) {
  const DiagonalWeight d = in.eps.is_diagonal() ? in.eps.diagonal_part() : tilde_reduction(in.eps);
  return finish(in, semidef_bound(in.box, d));
}

BoundReport maxwell_best(const MaxwellInput& in) {
  std::vector<BoundReport> candidates;
  const DiagonalWeight d = in.eps.is_diagonal() ? in.eps.diagonal_part() : tilde_reduction(in.eps);
  if (d.is_positive_definite()) {
    candidates.push_back(in.eps.is_diagonal() ? maxwell_diagonal(in) : maxwell_full(in));
  } else if (d.is_nonnegative() && d.has_positive_entry()) {
    candidates.push_back(maxwell_semidef(in));
  }
  if (smallest_eigenvalue(in.eps) > 0.0) candidates.push_back(maxwell_coarse(in));
  if (candidates.empty()) throw BoundUndefined("no Maxwell bound applies to this permittivity");
  const BoundReport* best = &candidates.front();
  for (const auto& c : candidates) {
    if (c.value < best->value) best = &c;
  }
  return *best;
}

}  // namespace fria
