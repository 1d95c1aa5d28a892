// Serial vs OpenMP sweep over a grid with numeric solves at two nu values.

#include <benchmark/benchmark.h>

#include "ramsauer/scan.hpp"

namespace {

ramsauer::SweepSpec make_spec(int points) {
  ramsauer::SweepSpec spec;
  spec.well = {25.0, 1.0};
  spec.energies = ramsauer::linspace(0.5, 40.0, points);
  spec.nu_values = {0.0, 1e-3};
  spec.methods = {true, true, true};
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = make_spec(static_cast<int>(state.range(0)));
  const auto cfg = ramsauer::default_solver_config(spec.well);
  for (auto _ : state) benchmark::DoNotOptimize(ramsauer::sweep_serial(spec, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = make_spec(static_cast<int>(state.range(0)));
  const auto cfg = ramsauer::default_solver_config(spec.well);
  for (auto _ : state) benchmark::DoNotOptimize(ramsauer::sweep(spec, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
