#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcap/error.hpp"

// Dense small-dimension quantum state algebra. Everything here is a value
// type or a pure function; dimensions are expected to stay at desk scale
// (d <= 32).
namespace qcap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
inline constexpr double state = 1e-10;         // hermiticity, trace, PSD
inline constexpr double completeness = 1e-9;   // sum M^dag M = I
inline constexpr double eigen_zero = 1e-13;    // eigenvalues treated as exactly zero
}  // namespace tol

enum class Validation {
  strict,  // reject anything outside tolerance
  repair,  // re-Hermitize and renormalize, still reject negative spectra
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const noexcept;
  Eigen::Vector3d vec() const noexcept { return {x, y, z}; }
  static BlochVector from(const Eigen::Vector3d& v) noexcept { return {v.x(), v.y(), v.z()}; }
};

class PureState {
public:
  explicit PureState(Vector amplitudes, Validation mode = Validation::strict);

  static PureState basis(int dim, int index);

  int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
  Vector amplitudes_;
};

class DensityMatrix {
public:
  explicit DensityMatrix(Matrix m, Validation mode = Validation::strict);
  explicit DensityMatrix(const PureState& psi);

  static DensityMatrix maximally_mixed(int dim);
  // Skips validation apart from symmetrizing; for outputs of maps that are
  // already known to produce states (CPTP channel outputs, partial traces).
  static DensityMatrix trusted(Matrix m);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

private:
  struct TrustedTag {};
  DensityMatrix(Matrix m, TrustedTag);

  Matrix m_;
};

struct Eigenpair {
  double value;
  Vector vector;
};

// Eigenvalues sorted descending; each eigenvector has its first non-negligible
// component rotated to be real positive, and exact ties are ordered
// lexicographically on the normalized components.
std::vector<Eigenpair> spectral_decompose(const Matrix& hermitian);
std::vector<Eigenpair> spectral_decompose(const DensityMatrix& rho);

// Eigenvalues only, descending. Throws NotHermitian.
std::vector<double> eigenvalues(const Matrix& hermitian);

// f applied to the spectrum of a Hermitian matrix.
Matrix hermitian_function(const Matrix& hermitian, const std::function<double(double)>& f);
// Square root with negative eigenvalues clipped to zero.
Matrix sqrt_psd(const Matrix& hermitian);

bool is_hermitian(const Matrix& m, double tolerance = tol::state);
Matrix kron(const Matrix& a, const Matrix& b);

Matrix identity(int dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

DensityMatrix from_bloch(const BlochVector& r);
BlochVector to_bloch(const DensityMatrix& rho);
// Same as to_bloch but for any 2x2 Hermitian matrix, unit trace assumed.
BlochVector bloch_of(const Matrix& m);

double purity(const DensityMatrix& rho);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

enum class Subsystem { A, B };

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::pair<int, int> dims, Subsystem keep);
// Partial transpose on subsystem B of a dim_a x dim_b bipartite operator.
Matrix partial_transpose(const Matrix& m, int dim_a, int dim_b);

// |phi>_PA = sum_x sqrt(p_x) |x>_P |phi_x>_A in the eigenbasis of rho, purifier
// first. Tracing out P (keep = B) recovers rho.
PureState purify(const DensityMatrix& rho);

// [Tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
// <psi|sigma|psi>
double fidelity(const PureState& psi, const DensityMatrix& sigma);

class MeasurementSet {
public:
  explicit MeasurementSet(std::vector<Matrix> operators);

  static MeasurementSet computational(int dim);

  int dim() const noexcept { return dim_; }
  const std::vector<Matrix>& operators() const noexcept { return operators_; }

private:
  int dim_;
  std::vector<Matrix> operators_;
};

struct MeasurementOutcome {
  double probability;
  // Empty for zero-probability outcomes, where the post state is undefined.
  std::optional<DensityMatrix> post_state;
};

std::vector<MeasurementOutcome> measure(const DensityMatrix& rho, const MeasurementSet& ops);

// |beta_ij> = (|0 j> + (-1)^i |1 (1-j)>) / sqrt(2)
PureState bell_state(int i, int j);

class Ensemble {
public:
  Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states);

  std::size_t size() const noexcept { return weights_.size(); }
  int dim() const noexcept { return states_.front().dim(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  DensityMatrix average() const;

private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> states_;
};

}  // namespace qcap
