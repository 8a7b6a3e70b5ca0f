#include <benchmark/benchmark.h>

#include "qcap/zero_error.hpp"

namespace {

void BM_PentagonPower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcap::zero_error_lower_bound(qcap::pentagon_graph(), n).K);
}
BENCHMARK(BM_PentagonPower)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_StrongProduct(benchmark::State& state) {
  const auto g = qcap::pentagon_graph();
  for (auto _ : state) benchmark::DoNotOptimize(qcap::strong_product(g, 3).edge_count());
}
BENCHMARK(BM_StrongProduct)->Unit(benchmark::kMicrosecond);

}  // namespace
