// Serial reference vs OpenMP engine on the same workloads. Both paths must
// produce identical tallies, so only wall time differs.
#include <benchmark/benchmark.h>

#include "ebt/montecarlo.hpp"
#include "ebt/scenarios.hpp"

namespace {

ebt::SimOptions options(benchmark::State& state, ebt::Execution execution) {
  ebt::SimOptions opts;
  opts.n = static_cast<std::uint64_t>(state.range(0));
  opts.seed = 1;
  opts.execution = execution;
  return opts;
}

void BM_AbstractTrial(benchmark::State& state, ebt::Execution execution) {
  const ebt::TrialSpec trial = ebt::validate_trial({{0.2, 0.3}, {0.3, 0.5}, {0.5, 0.7}});
  const ebt::Strategy strategy{0.1, 0.9, 0.7};
  const ebt::SimOptions opts = options(state, execution);
  for (auto _ : state) benchmark::DoNotOptimize(ebt::simulate_trial(trial, strategy, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Railroad(benchmark::State& state, ebt::Execution execution) {
  const ebt::Scenario sc = ebt::RailroadScenario{};
  const ebt::SimOptions opts = options(state, execution);
  for (auto _ : state) benchmark::DoNotOptimize(ebt::simulate_physical(sc, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CoinBag(benchmark::State& state, ebt::Execution execution) {
  const ebt::Scenario sc = ebt::CoinBagScenario{};
  const ebt::SimOptions opts = options(state, execution);
  for (auto _ : state) benchmark::DoNotOptimize(ebt::simulate_physical(sc, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_AbstractTrial, serial, ebt::Execution::kSerialReference)->Arg(1 << 20)->UseRealTime();
BENCHMARK_CAPTURE(BM_AbstractTrial, parallel, ebt::Execution::kParallel)->Arg(1 << 20)->UseRealTime();
BENCHMARK_CAPTURE(BM_Railroad, serial, ebt::Execution::kSerialReference)->Arg(1 << 20)->UseRealTime();
BENCHMARK_CAPTURE(BM_Railroad, parallel, ebt::Execution::kParallel)->Arg(1 << 20)->UseRealTime();
BENCHMARK_CAPTURE(BM_CoinBag, serial, ebt::Execution::kSerialReference)->Arg(1 << 20)->UseRealTime();
BENCHMARK_CAPTURE(BM_CoinBag, parallel, ebt::Execution::kParallel)->Arg(1 << 20)->UseRealTime();

BENCHMARK_MAIN();
