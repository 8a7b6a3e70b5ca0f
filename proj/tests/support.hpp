#pragma once

// Test-only helpers. The oracles here deliberately avoid the library's own
// code paths (different eigen-solvers, brute force, direct sums) so that a
// shared bug cannot make both sides agree.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qcap/channels.hpp"
#include "qcap/zero_error.hpp"

namespace qcap::testing {

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Spectrum through the general (non-Hermitian) complex eigen-solver.
inline std::vector<double> general_spectrum(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(es.eigenvalues()(i).real());
  return out;
}

inline double entropy_oracle(const Matrix& rho) {
  double s = 0.0;
  for (double l : general_spectrum(rho)) {
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

// Tr rho (log rho - log sigma) with both logs built from the general solver.
inline double relative_entropy_oracle(const Matrix& rho, const Matrix& sigma) {
  Eigen::ComplexEigenSolver<Matrix> es(sigma);
  const Matrix v = es.eigenvectors();
  Matrix log_sigma = Matrix::Zero(sigma.rows(), sigma.cols());
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    const Vector col = v.col(i).normalized();
    log_sigma += std::log2(es.eigenvalues()(i).real()) * col * col.adjoint();
  }
  return -entropy_oracle(rho) - (rho * log_sigma).trace().real();
}

inline Matrix partial_trace_first_oracle(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
  return out;
}

inline Matrix partial_trace_second_oracle(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int b = 0; b < db; ++b) out(i, j) += m(i * db + b, j * db + b);
  return out;
}

struct TestRng {
  explicit TestRng(std::uint64_t seed) : engine(seed) {}
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine); }
  std::mt19937 engine;
};

inline Eigen::Vector3d random_ball_point(TestRng& rng, double max_radius = 1.0) {
  Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
  v.normalize();
  return v * max_radius * std::cbrt(rng.uniform());
}

inline Vector random_state_vector(int d, TestRng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v.normalized();
}

// Kraus operators from a random isometry V: C^d_in -> C^(k d_out).
inline QuantumChannel random_channel(TestRng& rng, int d_in, int d_out, int k) {
  Matrix g(k * d_out, d_in);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix iso = qr.householderQ() * Matrix::Identity(k * d_out, d_in);
  std::vector<Matrix> ops;
  for (int m = 0; m < k; ++m) ops.push_back(iso.block(m * d_out, 0, d_out, d_in));
  return QuantumChannel(d_in, d_out, std::move(ops), "random");
}

inline bool is_independent(const ConfusabilityGraph& g, const std::vector<int>& set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (g.adjacent(set[i], set[j])) return false;
  return true;
}

// Exhaustive independence number for graphs up to ~22 vertices.
inline int brute_force_alpha(const ConfusabilityGraph& g) {
  const int n = g.vertex_count();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int j = i + 1; j < n; ++j) {
        if ((mask >> j & 1u) && g.adjacent(i, j)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) best = size;
  }
  return best;
}

inline ConfusabilityGraph random_graph(TestRng& rng, int n, double density) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  ConfusabilityGraph g(std::move(labels));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < density) g.add_edge(i, j);
  return g;
}

// E[max of N geometric(P0)] as sum_k P(max > k); every term is non-negative.
inline double expected_max_geometric(int N, double P0) {
  const double q = 1.0 - P0;
  double sum = 0.0;
  double qk = 1.0;  // q^k
  for (int k = 0; k < 1000000; ++k) {
    const double tail = 1.0 - std::pow(1.0 - qk, N);
    sum += tail;
    if (tail < 1e-17) break;
    qk *= q;
  }
  return sum;
}

// Sample mean of the maximum of N geometric variables (support 1, 2, ...).
inline double sampled_max_geometric(int N, double P0, int trials, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::geometric_distribution<int> geo(P0);  // failures before success
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    int worst = 0;
    for (int k = 0; k < N; ++k) worst = std::max(worst, geo(engine) + 1);
    total += worst;
  }
  return total / trials;
}

}  // namespace qcap::testing
