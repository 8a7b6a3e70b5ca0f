#include "qcap/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcap/channels.hpp"

namespace qcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nonneg(double v) { return v < 0.0 && v > -1e-12 ? 0.0 : v; }

EntropyScalar infinite_divergence() { return {kInf, EntropyKind::relative, true}; }

}  // namespace

double xlog2x(double x) noexcept { return x > 0.0 ? x * std::log2(x) : 0.0; }

double shannon_entropy(std::span<const double> p) noexcept {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return h;
}

EntropyScalar binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidProbability, "binary entropy needs p in [0, 1]");
  return {-xlog2x(p) - xlog2x(1.0 - p), EntropyKind::shannon};
}

double von_neumann_of(const Matrix& rho) {
  const auto spectrum = eigenvalues(rho);
  return nonneg(shannon_entropy(spectrum));
}

EntropyScalar von_neumann(const DensityMatrix& rho) { return {von_neumann_of(rho.matrix()), EntropyKind::von_neumann}; }

EntropyScalar relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "relative entropy needs equal dimensions");
  const Matrix h = (sigma.matrix() + sigma.matrix().adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  double cross = 0.0;  // Tr rho log sigma
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    const auto v = solver.eigenvectors().col(k);
    const double mass = v.dot(rho.matrix() * v).real();
    const double lambda = solver.eigenvalues()(k);
    if (lambda <= tol::eigen_zero) {
      if (mass > tol::state) return infinite_divergence();
      continue;
    }
    cross += mass * std::log2(lambda);
  }
  const double s_rho = von_neumann_of(rho.matrix());
  return {std::max(0.0, -s_rho - cross), EntropyKind::relative};
}

double relative_entropy_bloch_unchecked(const Eigen::Vector3d& r_rho, const Eigen::Vector3d& r_sigma) noexcept {
  const double r = std::min(r_rho.norm(), 1.0);
  const double s = r_sigma.norm();
  // 1 - S(rho) written without the singular logs at r = 1
  const double purity_term = 0.5 * (xlog2x(1.0 + r) + xlog2x(1.0 - r));
  if (s == 0.0) return std::max(0.0, purity_term);
  if (s >= 1.0) return (r_rho - r_sigma).norm() <= 1e-12 ? 0.0 : kInf;
  const double half_log_ratio = std::atanh(s) / std::numbers::ln2;  // (1/2) log2((1+s)/(1-s))
  const double log_det = std::log1p(-s * s) / std::numbers::ln2;    // log2(1 - s^2)
  const double projection = r_rho.dot(r_sigma) / s;                 // r cos(theta)
  return std::max(0.0, purity_term - 0.5 * log_det - projection * half_log_ratio);
}

EntropyScalar relative_entropy_bloch(const BlochVector& r_rho, const BlochVector& r_sigma) {
  if (r_rho.norm() > 1.0 + tol::state || r_sigma.norm() > 1.0 + tol::state) {
    throw Error(ErrorCode::InvalidBlochVector, "Bloch vectors must lie in the unit ball");
  }
  const double value = relative_entropy_bloch_unchecked(r_rho.vec(), r_sigma.vec());
  if (std::isinf(value)) throw Error(ErrorCode::InfiniteDivergence, "sigma is pure and differs from rho");
  return {value, EntropyKind::relative};
}

EntropyScalar holevo_quantity(const Ensemble& ensemble) {
  double mixed = von_neumann_of(ensemble.average().matrix());
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    mixed -= ensemble.weights()[k] * von_neumann_of(ensemble.states()[k].matrix());
  }
  return {std::max(0.0, mixed), EntropyKind::holevo};
}

EntropyScalar conditional_entropy(const DensityMatrix& rho_ab, std::pair<int, int> dims) {
  const Matrix rho_b = partial_trace(rho_ab.matrix(), dims.first, dims.second, Subsystem::B);
  return {von_neumann_of(rho_ab.matrix()) - von_neumann_of(rho_b), EntropyKind::conditional};
}

EntropyScalar mutual_information(const DensityMatrix& rho_ab, std::pair<int, int> dims) {
  const Matrix rho_a = partial_trace(rho_ab.matrix(), dims.first, dims.second, Subsystem::A);
  const Matrix rho_b = partial_trace(rho_ab.matrix(), dims.first, dims.second, Subsystem::B);
  const double value = von_neumann_of(rho_a) + von_neumann_of(rho_b) - von_neumann_of(rho_ab.matrix());
  return {std::max(0.0, value), EntropyKind::mutual};
}

EntropyScalar renyi_entropy(const DensityMatrix& rho, double order) {
  if (std::isnan(order) || order < 0.0) throw Error(ErrorCode::InvalidOrder, "Renyi order must be >= 0");
  if (order == 1.0) return {von_neumann_of(rho.matrix()), EntropyKind::renyi};
  const auto spectrum = eigenvalues(rho.matrix());
  if (std::isinf(order)) return {nonneg(-std::log2(spectrum.front())), EntropyKind::renyi};
  if (order == 0.0) {
    const auto rank = std::count_if(spectrum.begin(), spectrum.end(), [](double l) { return l > 1e-12; });
    return {std::log2(static_cast<double>(rank)), EntropyKind::renyi};
  }
  double trace_power = 0.0;
  for (double l : spectrum) {
    if (l > 0.0) trace_power += std::pow(l, order);
  }
  return {nonneg(std::log2(trace_power) / (1.0 - order)), EntropyKind::renyi};
}

CoherentInformation coherent_information(const DensityMatrix& rho, const QuantumChannel& channel) {
  require_cptp_kraus(channel, "coherent_information");
  if (rho.dim() != channel.dim_in()) throw Error(ErrorCode::DimensionMismatch, "state does not match channel input");
  const double s_b = von_neumann_of(channel.apply_linear(rho.matrix()));
  const double s_e = von_neumann_of(complementary(channel).apply_linear(rho.matrix()));
  return {{s_b - s_e, EntropyKind::coherent}, {s_e, EntropyKind::exchange}};
}

}  // namespace qcap
