#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fria/fem.hpp"
#include "fria/flux.hpp"
#include "fria/sparse.hpp"
#include "fria/weights.hpp"

namespace fria {

/// M(c, u, y) = c ||f + div y|| + ||y - alpha grad u||_{alpha^-1}.
struct MajorantBreakdown {
  double constant_used = 0.0;
  double residual_norm = 0.0;
  double defect_norm = 0.0;
  double total = 0.0;
};

/// Upper bound of ||grad(u - u_h)||_alpha whenever c_tilde bounds the
/// weighted Friedrichs constant from above.
MajorantBreakdown evaluate_majorant(double c_tilde, const P1Solution& s, const RT0Field& y, const FullWeight& alpha,
                                    double f);
MajorantBreakdown evaluate_majorant(double c_tilde, const P1Solution& s, const RT0Field& y, const FullWeight& alpha,
                                    const std::function<double(Point)>& f);

struct LevelRange {
  int first = 0;
  int last = 4;
};

struct ExperimentRow {
  int level = 0;
  std::size_t elements = 0;
  double energy_norm = 0.0;
  CgReport solver;
  std::vector<MajorantBreakdown> majorants;  ///< one per constant, input order
};

/// For each level: L-shape mesh, P1 solve, edge-averaged flux, majorant for
/// every constant. Levels run concurrently when `parallel` is set; rows are
/// always returned in level order.
std::vector<ExperimentRow> run_refinement_experiment(LevelRange levels, const FullWeight& alpha, double f,
                                                     std::span<const double> constants, bool parallel = true);

}  // namespace fria
