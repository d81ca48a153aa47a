#include "fria/friedrichs.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fria/error.hpp"

namespace fria {

namespace {

void require_same_dim(const DInterval& box, int dim, const char* what) {
  if (box.dim() != dim) {
    throw InvalidInput(std::string(what) + ": weight dimension " + std::to_string(dim) +
                       " does not match box dimension " + std::to_string(box.dim()));
  }
}

double weighted_sum(const DInterval& box, const DiagonalWeight& w) {
  double s = 0.0;
  for (int i = 0; i < box.dim(); ++i) {
    if (w[i] > 0.0) s += w[i] / (box.length(i) * box.length(i));
  }
  return s;
}

double from_sum(double s) { return 1.0 / (std::numbers::pi * std::sqrt(s)); }

}  // namespace

std::string_view to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::mikhlin: return "mikhlin";
    case BoundMethod::coarse: return "coarse";
    case BoundMethod::thmA: return "thmA";
    case BoundMethod::thmA2: return "thmA2";
    case BoundMethod::semidef: return "semidef";
    case BoundMethod::directional: return "directional";
  }
  return "unknown";
}

std::optional<BoundMethod> parse_bound_method(std::string_view s) {
  for (auto m : {BoundMethod::mikhlin, BoundMethod::coarse, BoundMethod::thmA, BoundMethod::thmA2,
                 BoundMethod::semidef, BoundMethod::directional}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

BoundReport mikhlin_bound(const DInterval& box) {
  return {from_sum(box.inverse_square_sum()), BoundMethod::mikhlin, box, std::nullopt, false};
}

BoundReport coarse_bound(const DInterval& box, const FullWeight& w) {
  require_same_dim(box, w.dim(), "coarse_bound");
  const double lo = smallest_eigenvalue(w);
  if (!(lo > 0.0)) {
    throw BoundUndefined("coarse bound undefined: smallest eigenvalue of the weight is " + std::to_string(lo) +
                         " (must be > 0)");
  }
  return {from_sum(lo * box.inverse_square_sum()), BoundMethod::coarse, box, w, false};
}

BoundReport diagonal_bound(const DInterval& box, const DiagonalWeight& w) {
  require_same_dim(box, w.dim(), "diagonal_bound");
  if (!w.is_positive_definite()) {
    throw BoundUndefined("diagonal bound needs all weight entries > 0; use the semi-definite bound instead");
  }
  return {from_sum(weighted_sum(box, w)), BoundMethod::thmA, box, FullWeight::diagonal(w), false};
}

BoundReport full_bound(const DInterval& box, const FullWeight& w) {
  require_same_dim(box, w.dim(), "full_bound");
  const DiagonalWeight t = tilde_reduction(w);
  if (!t.is_positive_definite()) throw BoundUndefined("tilde not positive definite");
  return {from_sum(weighted_sum(box, t)), BoundMethod::thmA2, box, w, false};
}

BoundReport semidef_bound(const DInterval& box, const DiagonalWeight& w) {
  require_same_dim(box, w.dim(), "semidef_bound");
  if (!w.is_nonnegative()) throw BoundUndefined("semi-definite bound needs all weight entries >= 0");
  if (!w.has_positive_entry()) throw BoundUndefined("semi-definite bound needs at least one weight entry > 0");
  return {from_sum(weighted_sum(box, w)), BoundMethod::semidef, box, FullWeight::diagonal(w),
          !w.is_positive_definite()};
}

double directional_bound(double length, EndCondition mode) {
  if (!std::isfinite(length) || length <= 0.0) throw InvalidInput("directional_bound: length must be > 0");
  return mode == EndCondition::both_ends ? length / std::numbers::pi : length / std::numbers::sqrt2;
}

BoundReport best_bound(const DInterval& box, const FullWeight& w) {
  require_same_dim(box, w.dim(), "best_bound");
  std::vector<BoundReport> candidates;
  if (w.is_diagonal()) {
    const DiagonalWeight d = w.diagonal_part();
    if (d.is_positive_definite()) {
      candidates.push_back(diagonal_bound(box, d));
    } else if (d.is_nonnegative() && d.has_positive_entry()) {
      candidates.push_back(semidef_bound(box, d));
    }
  } else {
    const DiagonalWeight t = tilde_reduction(w);
    if (t.is_positive_definite()) {
      candidates.push_back(full_bound(box, w));
    } else if (t.is_nonnegative() && t.has_positive_entry()) {
      BoundReport r = semidef_bound(box, t);
      r.weight = w;
      r.seminorm_only = smallest_eigenvalue(w) <= 0.0;
      candidates.push_back(r);
    }
  }
  if (smallest_eigenvalue(w) > 0.0) candidates.push_back(coarse_bound(box, w));
  if (candidates.empty()) {
    throw BoundUndefined("no bound applies: the weight is not positive semi-definite and its diagonal "
                         "reduction has no positive entry");
  }
  // Candidates are already in tie-break order; keep the first minimum.
  const BoundReport* best = &candidates.front();
  for (const auto& c : candidates) {
    if (c.value < best->value) best = &c;
  }
  return *best;
}

double coercivity_threshold(const BoundReport& bound, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("coercivity_threshold: eps must lie in (0,1)");
  return -eps / (bound.value * bound.value);
}

}  // namespace fria
