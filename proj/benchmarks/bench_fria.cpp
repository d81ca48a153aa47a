#include <benchmark/benchmark.h>

#include <vector>

#include "fria/fem.hpp"
#include "fria/flux.hpp"
#include "fria/friedrichs.hpp"
#include "fria/majorant.hpp"
#include "fria/oracle.hpp"

namespace {

using namespace fria;

const FullWeight kAniso = FullWeight::diagonal({1.0, 1e-4});

void BM_BestBound(benchmark::State& state) {
  const DInterval box{1.0, 2.0, 3.0};
  const FullWeight w = FullWeight::from_upper({3, 1, 1, 300, 1, 3});
  for (auto _ : state) benchmark::DoNotOptimize(best_bound(box, w).value);
}
BENCHMARK(BM_BestBound);

void BM_BuildLshape(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_lshape(level).num_edges());
}
BENCHMARK(BM_BuildLshape)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SolveDiffusion(benchmark::State& state) {
  const TriMesh m = build_lshape(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_diffusion(m, kAniso, 1.0).solver_report().iterations);
  state.counters["elements"] = static_cast<double>(m.num_triangles());
}
BENCHMARK(BM_SolveDiffusion)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_Majorant(benchmark::State& state) {
  const TriMesh m = build_lshape(static_cast<int>(state.range(0)));
  const P1Solution s = solve_diffusion(m, kAniso, 1.0);
  for (auto _ : state) {
    const RT0Field y = rt_average(s, kAniso);
    benchmark::DoNotOptimize(evaluate_majorant(0.31829, s, y, kAniso, 1.0).total);
  }
}
BENCHMARK(BM_Majorant)->DenseRange(0, 4, 2)->Unit(benchmark::kMillisecond);

void BM_RefinementExperiment(benchmark::State& state) {
  const std::vector<double> constants{22.50791, 0.31829};
  const bool parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_refinement_experiment({0, 3}, kAniso, 1.0, constants, parallel).size());
}
BENCHMARK(BM_RefinementExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EstimateCfa(benchmark::State& state) {
  const TriMesh m = build_unit_square(static_cast<int>(state.range(0)));
  const FullWeight alpha = FullWeight::diagonal({1.0, 1e-2});
  for (auto _ : state) benchmark::DoNotOptimize(estimate_cfa(m, alpha).lambda_min);
}
BENCHMARK(BM_EstimateCfa)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
