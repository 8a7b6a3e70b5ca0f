#include "qcap/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcap {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
  }
}

// Rotates the first component with modulus above the cutoff onto the
// positive real axis.
void normalize_phase(Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(mag, 0.0);
      return;
    }
  }
}

bool lexicographically_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

double BlochVector::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

// ---------------------------------------------------------------------------
// PureState / DensityMatrix

PureState::PureState(Vector amplitudes, Validation mode) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw Error(ErrorCode::InvalidState, "pure state needs at least one amplitude");
  const double n2 = amplitudes_.squaredNorm();
  if (mode == Validation::repair) {
    if (n2 <= 0.0) throw Error(ErrorCode::InvalidState, "zero vector cannot be normalized");
    amplitudes_ /= std::sqrt(n2);
  } else if (std::abs(n2 - 1.0) > tol::state) {
    throw Error(ErrorCode::InvalidState, "amplitudes are not normalized (|psi|^2 = " + std::to_string(n2) + ")");
  }
}

PureState PureState::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) throw Error(ErrorCode::InvalidParameter, "basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix m, TrustedTag) : m_(std::move(m)) {}

DensityMatrix::DensityMatrix(const PureState& psi) : m_(psi.projector()) {}

DensityMatrix::DensityMatrix(Matrix m, Validation mode) {
  require_square(m, "density matrix");
  if (mode == Validation::repair) {
    m = (m + m.adjoint()).eval() * 0.5;
    const double tr = m.trace().real();
    if (tr <= 0.0) throw Error(ErrorCode::InvalidState, "trace must be positive to renormalize");
    m /= tr;
  } else {
    if (!is_hermitian(m, tol::state)) throw Error(ErrorCode::NotHermitian, "density matrix is not Hermitian");
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol::state) {
      throw Error(ErrorCode::InvalidState, "trace is " + std::to_string(tr.real()) + ", expected 1");
    }
  }
  const auto spectrum = eigenvalues(m);
  if (spectrum.back() < -tol::state) {
    throw Error(ErrorCode::InvalidState,
                "negative eigenvalue " + std::to_string(spectrum.back()) + " in density matrix");
  }
  m_ = std::move(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw Error(ErrorCode::InvalidParameter, "dimension must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim), TrustedTag{});
}

DensityMatrix DensityMatrix::trusted(Matrix m) {
  require_square(m, "density matrix");
  Matrix h = (m + m.adjoint()) * 0.5;
  return DensityMatrix(std::move(h), TrustedTag{});
}

// ---------------------------------------------------------------------------
// Spectra

bool is_hermitian(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tolerance) return false;
    }
  }
  return true;
}

std::vector<Eigenpair> spectral_decompose(const Matrix& hermitian) {
  require_square(hermitian, "spectral_decompose input");
  if (!is_hermitian(hermitian, tol::state)) throw Error(ErrorCode::NotHermitian, "spectral_decompose needs a Hermitian matrix");
  const Matrix h = (hermitian + hermitian.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const auto n = h.rows();
  std::vector<Eigenpair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Vector v = solver.eigenvectors().col(k);
    normalize_phase(v);
    pairs.push_back({solver.eigenvalues()(k), std::move(v)});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (std::abs(a.value - b.value) > 1e-12) return a.value > b.value;
    return lexicographically_less(a.vector, b.vector);
  });
  return pairs;
}

std::vector<Eigenpair> spectral_decompose(const DensityMatrix& rho) { return spectral_decompose(rho.matrix()); }

std::vector<double> eigenvalues(const Matrix& hermitian) {
  require_square(hermitian, "eigenvalues input");
  if (!is_hermitian(hermitian, 1e-8)) throw Error(ErrorCode::NotHermitian, "eigenvalues needs a Hermitian matrix");
  std::vector<double> out(static_cast<std::size_t>(hermitian.rows()));
  if (hermitian.rows() == 1) {
    out[0] = hermitian(0, 0).real();
    return out;
  }
  if (hermitian.rows() == 2) {
    // closed form keeps the hot loops of the qubit solvers cheap
    const double a = hermitian(0, 0).real();
    const double d = hermitian(1, 1).real();
    const Complex b = 0.5 * (hermitian(0, 1) + std::conj(hermitian(1, 0)));
    const double mean = 0.5 * (a + d);
    const double half = std::hypot(0.5 * (a - d), std::abs(b));
    out[0] = mean + half;
    out[1] = mean - half;
    return out;
  }
  const Matrix h = (hermitian + hermitian.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < h.rows(); ++k) out[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Matrix hermitian_function(const Matrix& hermitian, const std::function<double(double)>& f) {
  require_square(hermitian, "hermitian_function input");
  const Matrix h = (hermitian + hermitian.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  Eigen::VectorXd mapped(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) mapped(k) = f(solver.eigenvalues()(k));
  const Matrix& u = solver.eigenvectors();
  return u * mapped.cast<Complex>().asDiagonal() * u.adjoint();
}

Matrix sqrt_psd(const Matrix& hermitian) {
  return hermitian_function(hermitian, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

// ---------------------------------------------------------------------------
// Elementary operators

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bloch representation

DensityMatrix from_bloch(const BlochVector& r) {
  const double n = r.norm();
  if (!std::isfinite(n) || n > 1.0 + tol::state) {
    throw Error(ErrorCode::InvalidBlochVector, "Bloch vector norm " + std::to_string(n) + " exceeds 1");
  }
  Matrix m(2, 2);
  m << 0.5 * (1.0 + r.z), Complex(0.5 * r.x, -0.5 * r.y), Complex(0.5 * r.x, 0.5 * r.y), 0.5 * (1.0 - r.z);
  return DensityMatrix::trusted(std::move(m));
}

BlochVector bloch_of(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "Bloch vectors exist only for qubits");
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochVector to_bloch(const DensityMatrix& rho) { return bloch_of(rho.matrix()); }

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

// ---------------------------------------------------------------------------
// Composite systems

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  Vector out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  return PureState(std::move(out), Validation::repair);
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension does not factor as " + std::to_string(dim_a) + " x " +
                                                  std::to_string(dim_b));
  }
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k) out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::pair<int, int> dims, Subsystem keep) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), dims.first, dims.second, keep));
}

Matrix partial_transpose(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension does not factor for partial transpose");
  }
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b2 = 0; b2 < dim_b; ++b2) out(a * dim_b + b, a2 * dim_b + b2) = m(a * dim_b + b2, a2 * dim_b + b);
  return out;
}

PureState purify(const DensityMatrix& rho) {
  const int d = rho.dim();
  const auto pairs = spectral_decompose(rho);
  Vector phi = Vector::Zero(d * d);
  for (int x = 0; x < d; ++x) {
    const double p = std::max(pairs[static_cast<std::size_t>(x)].value, 0.0);
    phi.segment(x * d, d) = std::sqrt(p) * pairs[static_cast<std::size_t>(x)].vector;
  }
  return PureState(std::move(phi), Validation::repair);
}

// ---------------------------------------------------------------------------
// Fidelity

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "fidelity needs equal dimensions");
  const Matrix root_sigma = sqrt_psd(sigma.matrix());
  const Matrix inner = root_sigma * rho.matrix() * root_sigma;
  double tr = 0.0;
  for (double ev : eigenvalues((inner + inner.adjoint()) * 0.5)) tr += ev > 0.0 ? std::sqrt(ev) : 0.0;
  return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity(const PureState& psi, const DensityMatrix& sigma) {
  if (psi.dim() != sigma.dim()) throw Error(ErrorCode::DimensionMismatch, "fidelity needs equal dimensions");
  const Complex v = psi.amplitudes().dot(sigma.matrix() * psi.amplitudes());
  return std::clamp(v.real(), 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Measurement

MeasurementSet::MeasurementSet(std::vector<Matrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw Error(ErrorCode::IncompleteMeasurement, "measurement needs at least one operator");
  dim_ = static_cast<int>(operators_.front().cols());
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& m : operators_) {
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorCode::DimensionMismatch, "measurement operators differ in size");
    sum += m.adjoint() * m;
  }
  if ((sum - identity(dim_)).cwiseAbs().maxCoeff() > tol::completeness) {
    throw Error(ErrorCode::IncompleteMeasurement, "sum of M^dag M differs from the identity");
  }
}

MeasurementSet MeasurementSet::computational(int dim) {
  std::vector<Matrix> ops;
  for (int k = 0; k < dim; ++k) {
    Matrix p = Matrix::Zero(dim, dim);
    p(k, k) = 1.0;
    ops.push_back(std::move(p));
  }
  return MeasurementSet(std::move(ops));
}

std::vector<MeasurementOutcome> measure(const DensityMatrix& rho, const MeasurementSet& ops) {
  if (rho.dim() != ops.dim()) throw Error(ErrorCode::DimensionMismatch, "measurement and state dimensions differ");
  std::vector<MeasurementOutcome> out;
  out.reserve(ops.operators().size());
  for (const auto& m : ops.operators()) {
    const Matrix post = m * rho.matrix() * m.adjoint();
    const double p = std::max(post.trace().real(), 0.0);
    if (p <= 1e-15) {
      out.push_back({p, std::nullopt});
    } else {
      out.push_back({p, DensityMatrix::trusted(post / p)});
    }
  }
  return out;
}

PureState bell_state(int i, int j) {
  if ((i != 0 && i != 1) || (j != 0 && j != 1)) throw Error(ErrorCode::InvalidParameter, "Bell state indices are bits");
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  v(j) = s;                                   // |0 j>
  v(2 + (1 - j)) = (i == 0 ? 1.0 : -1.0) * s;  // (-1)^i |1 (1-j)>
  return PureState(std::move(v), Validation::repair);
}

// ---------------------------------------------------------------------------
// Ensembles

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.empty() || weights_.size() != states_.size()) {
    throw Error(ErrorCode::InvalidParameter, "ensemble needs equally many (non-zero) weights and states");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw Error(ErrorCode::InvalidProbability, "ensemble weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::state) throw Error(ErrorCode::InvalidProbability, "ensemble weights must sum to 1");
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw Error(ErrorCode::DimensionMismatch, "ensemble states differ in dimension");
  }
}

DensityMatrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(dim(), dim());
  for (std::size_t k = 0; k < size(); ++k) avg += weights_[k] * states_[k].matrix();
  return DensityMatrix::trusted(std::move(avg));
}

}  // namespace qcap
