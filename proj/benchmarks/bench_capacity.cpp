#include <benchmark/benchmark.h>

#include "qcap/capacity.hpp"

namespace {

const qcap::QuantumChannel& damping() {
  static const qcap::QuantumChannel ch = qcap::make_channel({qcap::ChannelType::amplitude_damping, 0.7});
  return ch;
}

void BM_HswNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcap::hsw_numeric(damping()).C_hsw);
}
BENCHMARK(BM_HswNumeric)->Unit(benchmark::kMillisecond);

void BM_HswGeometric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcap::hsw_geometric(damping()).r_star);
}
BENCHMARK(BM_HswGeometric)->Unit(benchmark::kMillisecond);

void BM_QuantumCapacity(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcap::quantum_capacity_single_use(damping()).Q1);
}
BENCHMARK(BM_QuantumCapacity)->Unit(benchmark::kMillisecond);

void BM_AmplitudeDampingClosedForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qcap::amplitude_damping_quantum_capacity(0.3));
}
BENCHMARK(BM_AmplitudeDampingClosedForm);

}  // namespace
