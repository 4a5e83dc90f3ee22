#include "ghzgm/contour.hpp"
#include "ghzgm/oracle.hpp"
#include "ghzgm/quantum_core.hpp"

#include <benchmark/benchmark.h>

#include <array>

namespace {

using ghzgm::Execution;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_ContourGrid(benchmark::State& state) {
  const std::array<int, 2> classes{2, 3};
  for (auto _ : state) {
    auto rows = ghzgm::contour_grid(3, classes, static_cast<int>(state.range(1)), mode(state));
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_ContourGrid)->ArgsProduct({{0, 1}, {21, 41}})->Unit(benchmark::kMillisecond);

void BM_ClosestProduct(benchmark::State& state) {
  ghzgm::Rng rng(7);
  const auto psi = ghzgm::random_pure_state(static_cast<int>(state.range(1)), rng);
  ghzgm::Partition singletons;
  for (int q = 0; q < psi.n_qubits(); ++q) singletons.groups.push_back({q});
  ghzgm::OracleConfig cfg;
  cfg.restarts = 32;
  for (auto _ : state) {
    auto r = ghzgm::closest_grouped_product_state(psi, singletons, cfg, mode(state));
    benchmark::DoNotOptimize(r.overlap_sq);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_ClosestProduct)->ArgsProduct({{0, 1}, {3, 6}})->Unit(benchmark::kMillisecond);

void BM_ConvexRoof(benchmark::State& state) {
  ghzgm::Rng rng(11);
  const auto rho = ghzgm::random_density_matrix(3, 4, rng);
  ghzgm::OracleConfig cfg;
  cfg.restarts = 8;
  ghzgm::RoofSearchOptions opts;
  opts.inner_restarts = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ghzgm::convex_roof_upper_bound(rho, 3, 8, cfg, opts, mode(state)));
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_ConvexRoof)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
