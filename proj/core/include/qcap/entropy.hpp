#pragma once

#include <limits>
#include <span>
#include <utility>

#include "qcap/qmath.hpp"

namespace qcap {

class QuantumChannel;

enum class EntropyKind { shannon, von_neumann, relative, holevo, mutual, conditional, renyi, coherent, exchange };

// All values are in bits. A divergent relative entropy is represented by
// infinite == true (value is +inf as well) and never by an overflowed number.
struct EntropyScalar {
  double value = 0.0;
  EntropyKind kind = EntropyKind::shannon;
  bool infinite = false;

  operator double() const noexcept { return value; }  // NOLINT(google-explicit-constructor)
};

// x log2 x with the 0 log 0 = 0 convention; negative inputs clip to zero.
double xlog2x(double x) noexcept;
// -sum p log2 p over a probability vector (entries clipped at zero).
double shannon_entropy(std::span<const double> p) noexcept;

EntropyScalar binary_entropy(double p);
EntropyScalar von_neumann(const DensityMatrix& rho);
// Entropy of any PSD unit-trace Hermitian matrix without constructing a
// DensityMatrix; used in optimizer hot loops.
double von_neumann_of(const Matrix& rho);

EntropyScalar relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
// Closed form in Bloch coordinates; throws InfiniteDivergence when sigma is
// pure and different from rho.
EntropyScalar relative_entropy_bloch(const BlochVector& r_rho, const BlochVector& r_sigma);
// Same formula without validation, +inf when divergent.
double relative_entropy_bloch_unchecked(const Eigen::Vector3d& r_rho, const Eigen::Vector3d& r_sigma) noexcept;

EntropyScalar holevo_quantity(const Ensemble& ensemble);
EntropyScalar conditional_entropy(const DensityMatrix& rho_ab, std::pair<int, int> dims);
EntropyScalar mutual_information(const DensityMatrix& rho_ab, std::pair<int, int> dims);

// (1/(1-r)) log2 Tr(rho^r); r == 1 gives the von Neumann entropy, r == +inf
// gives -log2 of the largest eigenvalue, r == 0 gives log2 rank.
EntropyScalar renyi_entropy(const DensityMatrix& rho, double order);

struct CoherentInformation {
  EntropyScalar coherent;  // S(rho_B) - S(rho_E)
  EntropyScalar exchange;  // S(rho_E)
};

CoherentInformation coherent_information(const DensityMatrix& rho, const QuantumChannel& channel);

}  // namespace qcap
