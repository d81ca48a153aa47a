#pragma once

#include <optional>
#include <string_view>

#include "fria/weights.hpp"

namespace fria {

enum class BoundMethod { mikhlin, coarse, thmA, thmA2, semidef, directional };

std::string_view to_string(BoundMethod m);
std::optional<BoundMethod> parse_bound_method(std::string_view s);

/// An upper bound for a (weighted) Friedrichs or Maxwell constant together
/// with the formula that produced it and the inputs it was computed from.
struct BoundReport {
  double value = 0.0;
  BoundMethod method = BoundMethod::mikhlin;
  DInterval box;
  std::optional<FullWeight> weight;
  /// The weighted gradient term is only a seminorm (semi-definite weight).
  bool seminorm_only = false;
};

/// (pi * sqrt(sum 1/l_i^2))^-1, the classical bound for the unweighted constant.
BoundReport mikhlin_bound(const DInterval& box);

/// Unweighted bound divided by sqrt of the smallest eigenvalue of w.
/// Throws BoundUndefined if that eigenvalue is not positive.
BoundReport coarse_bound(const DInterval& box, const FullWeight& w);

/// (pi * sqrt(sum a_i/l_i^2))^-1 for a positive definite diagonal weight.
BoundReport diagonal_bound(const DInterval& box, const DiagonalWeight& w);

/// diagonal_bound applied to tilde_reduction(w); requires every reduced
/// entry to be positive.
BoundReport full_bound(const DInterval& box, const FullWeight& w);

/// Sum restricted to the strictly positive entries of a nonnegative diagonal
/// weight. Marks the report as seminorm_only when some entry vanishes.
BoundReport semidef_bound(const DInterval& box, const DiagonalWeight& w);

enum class EndCondition { both_ends, one_end };

/// One-dimensional constant on (0,length): length/pi when the function
/// vanishes at both ends, length/sqrt(2) when it vanishes at one end only.
double directional_bound(double length, EndCondition mode);

/// Smallest applicable bound. Ties resolve in the order
/// thmA, thmA2, semidef, coarse.
BoundReport best_bound(const DInterval& box, const FullWeight& w);

/// rho_min = -eps / value^2: the reaction-diffusion form with reaction
/// coefficient rho is coercive for every rho > rho_min. Requires 0 < eps < 1.
double coercivity_threshold(const BoundReport& bound, double eps);

}  // namespace fria
