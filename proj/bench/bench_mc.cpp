// Parallel run_mc against the serial reference on the same study.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "carma/mc_study.hpp"

namespace {

carma::MCConfig study(std::size_t paths, double horizon, double h_max) {
  carma::MCConfig c{carma::CarmaSpec({2.0}, {1.0}, 1.0), carma::Brownian{1.0}};
  c.horizon = horizon;
  c.h_max = h_max;
  c.mesh = 0.001;
  c.paths = paths;
  c.master_seed = 7;
  return c;
}

void BM_RunMcSerial(benchmark::State& state) {
  const auto cfg = study(static_cast<std::size_t>(state.range(0)), 10.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(carma::run_mc_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunMcParallel(benchmark::State& state) {
  const auto cfg = study(static_cast<std::size_t>(state.range(0)), 10.0, 0.1);
  state.counters["threads"] = omp_get_max_threads();
  for (auto _ : state) benchmark::DoNotOptimize(carma::run_mc(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RunMcSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunMcParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
