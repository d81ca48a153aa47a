#include "fria/majorant.hpp"

#include <cmath>
#include <future>
#include <string>

#include "fria/error.hpp"
#include "fria/mesh.hpp"

namespace fria {

namespace {

MajorantBreakdown combine(double c_tilde, const FluxNorms& norms) {
  return {c_tilde, norms.residual_norm, norms.defect_norm, c_tilde * norms.residual_norm + norms.defect_norm};
}

void require_positive(double c_tilde) {
  if (!(c_tilde > 0.0) || !std::isfinite(c_tilde)) throw InvalidInput("majorant constant must be finite and > 0");
}

ExperimentRow run_level(int level, const FullWeight& alpha, double f, std::span<const double> constants) {
  const TriMesh mesh = build_lshape(level);
  const P1Solution u = solve_diffusion(mesh, alpha, f);
  const RT0Field y = rt_average(u, alpha);
  const FluxNorms norms = flux_defect_norms(y, u, alpha, f);
  ExperimentRow row;
  row.level = level;
  row.elements = mesh.num_triangles();
  row.energy_norm = energy_norm(u, alpha);
  row.solver = u.solver_report();
  for (double c : constants) row.majorants.push_back(combine(c, norms));
  return row;
}

}  // namespace

MajorantBreakdown evaluate_majorant(double c_tilde, const P1Solution& s, const RT0Field& y, const FullWeight& alpha,
                                    double f) {
  require_positive(c_tilde);
  return combine(c_tilde, flux_defect_norms(y, s, alpha, f));
}

MajorantBreakdown evaluate_majorant(double c_tilde, const P1Solution& s, const RT0Field& y, const FullWeight& alpha,
                                    const std::function<double(Point)>& f) {
  require_positive(c_tilde);
  return combine(c_tilde, flux_defect_norms(y, s, alpha, f));
}

std::vector<ExperimentRow> run_refinement_experiment(LevelRange levels, const FullWeight& alpha, double f,
                                                     std::span<const double> constants, bool parallel) {
  if (levels.first < 0 || levels.last < levels.first || levels.last > kMaxLshapeLevel) {
    throw InvalidInput("level range " + std::to_string(levels.first) + ":" + std::to_string(levels.last) +
                       " is outside 0:" + std::to_string(kMaxLshapeLevel));
  }
  if (constants.empty()) throw InvalidInput("at least one constant is required");
  for (double c : constants) require_positive(c);
  std::vector<ExperimentRow> rows;
  if (!parallel) {
    for (int l = levels.first; l <= levels.last; ++l) rows.push_back(run_level(l, alpha, f, constants));
    return rows;
  }
  std::vector<std::future<ExperimentRow>> pending;
  for (int l = levels.first; l <= levels.last; ++l) {
    pending.push_back(std::async(std::launch::async, run_level, l, std::cref(alpha), f, constants));
  }
  for (auto& p : pending) rows.push_back(p.get());
  return rows;
}

}  // namespace fria
