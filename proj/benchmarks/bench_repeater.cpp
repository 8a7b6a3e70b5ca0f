#include <benchmark/benchmark.h>

#include "qcap/repeater.hpp"

namespace {

void BM_ExpectedRounds(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcap::expected_rounds(n, 0.01));
}
// n = 5 and up take the extended precision path
BENCHMARK(BM_ExpectedRounds)->DenseRange(0, 8, 2);

void BM_MonteCarloRounds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcap::monte_carlo_rounds(3, 0.1, 10000, 7));
}
BENCHMARK(BM_MonteCarloRounds)->Unit(benchmark::kMillisecond);

void BM_Schedule(benchmark::State& state) {
  const auto policy = static_cast<qcap::Policy>(state.range(0));
  qcap::RepeaterConfig cfg;
  cfg.F0 = 0.8;
  cfg.P0 = 0.3;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(qcap::simulate_schedule(policy, 0.97, cfg, seed++).rounds);
}
BENCHMARK(BM_Schedule)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

}  // namespace
