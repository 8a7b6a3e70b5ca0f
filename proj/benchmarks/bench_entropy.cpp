#include <random>

#include <benchmark/benchmark.h>

#include "qcap/entropy.hpp"

namespace {

qcap::DensityMatrix random_state(int d, std::mt19937& rng) {
  std::normal_distribution<double> n;
  qcap::Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = qcap::Complex(n(rng), n(rng));
  const qcap::Matrix m = g * g.adjoint();
  return qcap::DensityMatrix(m / m.trace().real());
}

void BM_VonNeumann(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto rho = random_state(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(qcap::von_neumann(rho).value);
}
BENCHMARK(BM_VonNeumann)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_RelativeEntropyMatrix(benchmark::State& state) {
  std::mt19937 rng(2);
  const auto a = random_state(2, rng);
  const auto b = random_state(2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qcap::relative_entropy(a, b).value);
}
BENCHMARK(BM_RelativeEntropyMatrix);

void BM_RelativeEntropyBloch(benchmark::State& state) {
  const Eigen::Vector3d a(0.1, 0.3, -0.4), b(-0.2, 0.1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(qcap::relative_entropy_bloch_unchecked(a, b));
}
BENCHMARK(BM_RelativeEntropyBloch);

}  // namespace
