#include "qcap/channels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace qcap {

namespace {

constexpr int kMaxDim = 32;

std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " must lie in [0, 1], got " + format_param(v));
  }
}

Matrix ket_bra(int rows, int cols, int r, int c) {
  Matrix m = Matrix::Zero(rows, cols);
  m(r, c) = 1.0;
  return m;
}

// Generalized phase operator diag(w^k), w = exp(2 pi i / d).
Matrix clock(int dim, int power) {
  Matrix z = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k * power / dim);
  return z;
}

// |k> -> |k>|flag> inside a (2 * dim [+ extra])-dimensional output space.
Matrix flagged_embedding(int dim, int dim_out, int flag) {
  Matrix m = Matrix::Zero(dim_out, dim);
  for (int k = 0; k < dim; ++k) m(2 * k + flag, k) = 1.0;
  return m;
}

bool kraus_less(const Matrix& a, const Matrix& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex x = a.data()[i];
    const Complex y = b.data()[i];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(ChannelType type) noexcept {
  switch (type) {
    case ChannelType::identity: return "identity";
    case ChannelType::bit_flip: return "bit_flip";
    case ChannelType::phase_flip: return "phase_flip";
    case ChannelType::bit_phase_flip: return "bit_phase_flip";
    case ChannelType::depolarizing: return "depolarizing";
    case ChannelType::amplitude_damping: return "amplitude_damping";
    case ChannelType::dephasing: return "dephasing";
    case ChannelType::erasure: return "erasure";
    case ChannelType::phase_erasure: return "phase_erasure";
    case ChannelType::mixed_erasure: return "mixed_erasure";
    case ChannelType::measure_prepare: return "measure_prepare";
    case ChannelType::pancake: return "pancake";
    case ChannelType::bsc: return "bsc";
    case ChannelType::custom: return "custom";
  }
  return "custom";
}

std::optional<ChannelType> parse_channel_type(std::string_view name) noexcept {
  std::string key(name);
  std::replace(key.begin(), key.end(), '-', '_');
  for (auto t : {ChannelType::identity, ChannelType::bit_flip, ChannelType::phase_flip, ChannelType::bit_phase_flip,
                 ChannelType::depolarizing, ChannelType::amplitude_damping, ChannelType::dephasing, ChannelType::erasure,
                 ChannelType::phase_erasure, ChannelType::mixed_erasure, ChannelType::measure_prepare,
                 ChannelType::pancake, ChannelType::bsc, ChannelType::custom}) {
    if (key == to_string(t)) return t;
  }
  if (key == "classical_ideal") return ChannelType::measure_prepare;
  return std::nullopt;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(int dim_in, int dim_out, std::vector<Matrix> kraus, std::string label)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), label_(std::move(label)) {
  if (dim_in <= 0 || dim_out <= 0) throw Error(ErrorCode::DimensionMismatch, "channel dimensions must be positive");
  if (kraus_.empty()) throw Error(ErrorCode::InvalidChannel, "channel needs at least one Kraus operator");
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out || k.cols() != dim_in) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator is " + std::to_string(k.rows()) + "x" +
                                                    std::to_string(k.cols()) + ", expected " + std::to_string(dim_out) +
                                                    "x" + std::to_string(dim_in));
    }
  }
}

QuantumChannel QuantumChannel::from_affine(const AffineMap& map, std::string label) {
  QuantumChannel ch(2, 2, {identity(2)}, std::move(label));
  ch.kraus_.clear();
  ch.affine_ = map;
  return ch;
}

Matrix QuantumChannel::apply_linear(const Matrix& x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw Error(ErrorCode::DimensionMismatch, "operator does not match channel input dimension " + std::to_string(dim_in_));
  }
  if (affine_) {
    const Complex t = x.trace();
    const std::array<Matrix, 3> paulis{pauli_x(), pauli_y(), pauli_z()};
    Eigen::Vector3cd c;
    for (int k = 0; k < 3; ++k) c(k) = (x * paulis[static_cast<std::size_t>(k)]).trace();
    const Eigen::Vector3cd out = affine_->A.cast<Complex>() * c + t * affine_->b.cast<Complex>();
    Matrix y = t * identity(2);
    for (int k = 0; k < 3; ++k) y += out(k) * paulis[static_cast<std::size_t>(k)];
    return 0.5 * y;
  }
  Matrix y = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) y.noalias() += k * x * k.adjoint();
  return y;
}

double QuantumChannel::completeness_error() const {
  if (!has_kraus()) return std::numeric_limits<double>::infinity();
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  return (sum - identity(dim_in_)).cwiseAbs().maxCoeff();
}

void require_cptp_kraus(const QuantumChannel& channel, std::string_view who) {
  if (!channel.has_kraus()) {
    throw Error(ErrorCode::InvalidChannel, std::string(who) + ": '" + channel.label() + "' has no Kraus form (not CP)");
  }
  if (!channel.is_trace_preserving()) {
    throw Error(ErrorCode::InvalidChannel, std::string(who) + ": '" + channel.label() + "' is not trace preserving");
  }
}

// ---------------------------------------------------------------------------
// Constructors

QuantumChannel make_channel(const ChannelKind& kind) {
  const double p = kind.p;
  const double q = kind.q;
  const auto label_p = [&](std::string_view name) { return std::string(name) + "(p=" + format_param(p) + ")"; };
  const Matrix I = identity(2);

  switch (kind.type) {
    case ChannelType::identity: {
      if (kind.dim < 1 || kind.dim > kMaxDim) throw Error(ErrorCode::InvalidParameter, "dimension out of range");
      return QuantumChannel(kind.dim, kind.dim, {identity(kind.dim)}, "identity");
    }
    case ChannelType::bit_flip:
    case ChannelType::phase_flip:
    case ChannelType::bit_phase_flip:
    case ChannelType::dephasing: {
      require_probability(p, "p");
      const Matrix sigma = kind.type == ChannelType::bit_flip         ? pauli_x()
                           : kind.type == ChannelType::bit_phase_flip ? pauli_y()
                                                                      : pauli_z();
      return QuantumChannel(2, 2, {std::sqrt(1.0 - p) * I, std::sqrt(p) * sigma}, label_p(to_string(kind.type)));
    }
    case ChannelType::depolarizing: {
      // p I/2 + (1 - p) rho as a uniform Pauli mixture
      require_probability(p, "p");
      const double w = std::sqrt(p / 4.0);
      return QuantumChannel(2, 2, {std::sqrt(1.0 - 3.0 * p / 4.0) * I, w * pauli_x(), w * pauli_y(), w * pauli_z()},
                            label_p("depolarizing"));
    }
    case ChannelType::amplitude_damping: {
      require_probability(p, "p");
      Matrix a1(2, 2), a2(2, 2);
      a1 << std::sqrt(p), 0, 0, 1;
      a2 << 0, 0, std::sqrt(1.0 - p), 0;
      return QuantumChannel(2, 2, {a1, a2}, label_p("amplitude_damping"));
    }
    case ChannelType::erasure: {
      require_probability(p, "p");
      const int d = kind.dim;
      if (d < 1 || d >= kMaxDim) throw Error(ErrorCode::InvalidParameter, "dimension out of range");
      std::vector<Matrix> ops;
      Matrix keep = Matrix::Zero(d + 1, d);
      keep.topRows(d) = identity(d);
      ops.push_back(std::sqrt(1.0 - p) * keep);
      for (int k = 0; k < d; ++k) ops.push_back(std::sqrt(p) * ket_bra(d + 1, d, d, k));
      return QuantumChannel(d, d + 1, std::move(ops), label_p("erasure"));
    }
    case ChannelType::phase_erasure:
    case ChannelType::mixed_erasure: {
      const bool mixed = kind.type == ChannelType::mixed_erasure;
      const double erase = mixed ? p : 0.0;
      require_probability(erase, "p");
      require_probability(q, "q");
      if (erase + q > 1.0 + 1e-12) throw Error(ErrorCode::InvalidParameter, "p + q must not exceed 1");
      const int d = kind.dim;
      if (d < 1 || 2 * d + 1 > kMaxDim) throw Error(ErrorCode::InvalidParameter, "dimension out of range");
      // output: rho (x) |flag>, flag 0 = intact, 1 = phase erased; one extra
      // erasure level |e> = |2d> for the mixed channel
      const int dim_out = mixed ? 2 * d + 1 : 2 * d;
      std::vector<Matrix> ops;
      const double keep = std::max(0.0, 1.0 - erase - q);
      ops.push_back(std::sqrt(keep) * flagged_embedding(d, dim_out, 0));
      const Matrix flag1 = flagged_embedding(d, dim_out, 1);
      for (int m = 0; m < d; ++m) ops.push_back(std::sqrt(q / d) * flag1 * clock(d, m));
      if (mixed) {
        for (int k = 0; k < d; ++k) ops.push_back(std::sqrt(erase) * ket_bra(dim_out, d, 2 * d, k));
      }
      std::string label = std::string(to_string(kind.type)) + "(";
      if (mixed) label += "p=" + format_param(p) + ",";
      label += "q=" + format_param(q) + ")";
      return QuantumChannel(d, dim_out, std::move(ops), std::move(label));
    }
    case ChannelType::measure_prepare:
      return QuantumChannel(2, 2, {ket_bra(2, 2, 0, 0), ket_bra(2, 2, 1, 1)}, "measure_prepare");
    case ChannelType::bsc: {
      require_probability(p, "p");
      const double keep = std::sqrt(1.0 - p);
      const double flip = std::sqrt(p);
      return QuantumChannel(
          2, 2, {keep * ket_bra(2, 2, 0, 0), keep * ket_bra(2, 2, 1, 1), flip * ket_bra(2, 2, 1, 0), flip * ket_bra(2, 2, 0, 1)},
          label_p("bsc"));
    }
    case ChannelType::pancake: {
      AffineMap flatten;
      flatten.A = Eigen::Vector3d(1.0, 1.0, 0.0).asDiagonal();
      return QuantumChannel::from_affine(flatten, "pancake");
    }
    case ChannelType::custom:
      break;
  }
  throw Error(ErrorCode::Unsupported, "custom channels must be built from Kraus operators");
}

QuantumChannel pauli_map(const Eigen::Vector3d& eta, std::string label) {
  const double pi = (1.0 + eta.x() + eta.y() + eta.z()) / 4.0;
  const double px = (1.0 + eta.x() - eta.y() - eta.z()) / 4.0;
  const double py = (1.0 - eta.x() + eta.y() - eta.z()) / 4.0;
  const double pz = (1.0 - eta.x() - eta.y() + eta.z()) / 4.0;
  if (std::min({pi, px, py, pz}) < -1e-12) {
    AffineMap map;
    map.A = eta.asDiagonal();
    return QuantumChannel::from_affine(map, std::move(label));
  }
  std::vector<Matrix> ops;
  const std::array<std::pair<double, Matrix>, 4> terms{
      {{pi, identity(2)}, {px, pauli_x()}, {py, pauli_y()}, {pz, pauli_z()}}};
  for (const auto& [w, sigma] : terms) {
    if (w > 0.0) ops.push_back(std::sqrt(w) * sigma);
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(2, 2));
  return QuantumChannel(2, 2, std::move(ops), std::move(label));
}

// ---------------------------------------------------------------------------
// Representations

DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != channel.dim_in()) throw Error(ErrorCode::DimensionMismatch, "state does not match channel input");
  return DensityMatrix::trusted(channel.apply_linear(rho.matrix()));
}

ChoiMatrix choi(const QuantumChannel& channel) {
  const int din = channel.dim_in();
  const int dout = channel.dim_out();
  Matrix c = Matrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      c.block(i * dout, j * dout, dout, dout) = channel.apply_linear(ket_bra(din, din, i, j));
    }
  }
  c /= static_cast<double>(din);
  return {(c + c.adjoint()) * 0.5, din, dout};
}

Matrix superoperator(const QuantumChannel& channel) {
  const int din = channel.dim_in();
  const int dout = channel.dim_out();
  Matrix s(dout * dout, din * din);
  for (int j = 0; j < din; ++j) {
    for (int i = 0; i < din; ++i) {
      const Matrix out = channel.apply_linear(ket_bra(din, din, i, j));
      s.col(i + j * din) = Eigen::Map<const Vector>(out.data(), out.size());
    }
  }
  return s;
}

CptpDiagnostics is_cptp(const QuantumChannel& channel) {
  CptpDiagnostics d;
  const ChoiMatrix c = choi(channel);
  if (channel.has_kraus()) {
    d.completeness_error = channel.completeness_error();
  } else {
    const Matrix marginal = partial_trace(c.matrix, c.dim_in, c.dim_out, Subsystem::A);
    d.completeness_error = (marginal * c.dim_in - identity(c.dim_in)).cwiseAbs().maxCoeff();
  }
  d.trace_preserving = d.completeness_error <= tol::completeness;
  d.choi_min_eigenvalue = eigenvalues(c.matrix).back();
  const bool cp = d.choi_min_eigenvalue >= -tol::completeness;
  d.cptp = d.trace_preserving && cp;
  if (!d.trace_preserving) {
    d.reason = "Kraus completeness violated by " + format_param(d.completeness_error);
  } else if (!cp) {
    d.reason = "Choi matrix has negative eigenvalue " + format_param(d.choi_min_eigenvalue);
  }
  return d;
}

bool is_unital(const QuantumChannel& channel) {
  if (channel.dim_in() != channel.dim_out()) throw Error(ErrorCode::DimensionMismatch, "unitality needs dim_in == dim_out");
  const int d = channel.dim_in();
  const Matrix mixed = identity(d) / static_cast<double>(d);
  return (channel.apply_linear(mixed) - mixed).cwiseAbs().maxCoeff() <= tol::completeness;
}

QuantumChannel complementary(const QuantumChannel& channel) {
  require_cptp_kraus(channel, "complementary");
  const int k = static_cast<int>(channel.kraus().size());
  const int din = channel.dim_in();
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(channel.dim_out()));
  for (int m = 0; m < channel.dim_out(); ++m) {
    Matrix e(k, din);
    for (int i = 0; i < k; ++i) e.row(i) = channel.kraus()[static_cast<std::size_t>(i)].row(m);
    ops.push_back(std::move(e));
  }
  return QuantumChannel(din, k, std::move(ops), "complementary(" + channel.label() + ")");
}

AffineMap affine_representation(const QuantumChannel& channel) {
  if (channel.dim_in() != 2 || channel.dim_out() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "affine representation exists only for qubit channels");
  }
  if (channel.affine_only()) return *channel.affine_only();
  AffineMap map;
  map.b = bloch_of(channel.apply_linear(identity(2) * 0.5)).vec();
  const std::array<Matrix, 3> paulis{pauli_x(), pauli_y(), pauli_z()};
  for (int k = 0; k < 3; ++k) {
    map.A.col(k) = 0.5 * bloch_of(channel.apply_linear(paulis[static_cast<std::size_t>(k)])).vec();
  }
  return map;
}

bool tetrahedron_check(const Eigen::Vector3d& eta) {
  // signs are matched: (+, +) and (-, -)
  const double eps = 1e-12;
  return std::abs(eta.x() + eta.y()) <= std::abs(1.0 + eta.z()) + eps &&
         std::abs(eta.x() - eta.y()) <= std::abs(1.0 - eta.z()) + eps;
}

QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& second) {
  if (first.dim_out() != second.dim_in()) throw Error(ErrorCode::DimensionMismatch, "channels do not chain");
  const std::string label = second.label() + " o " + first.label();
  if (!first.has_kraus() || !second.has_kraus()) {
    const AffineMap a = affine_representation(first);
    const AffineMap b = affine_representation(second);
    return QuantumChannel::from_affine({b.A * a.A, b.A * a.b + b.b}, label);
  }
  std::vector<Matrix> ops;
  for (const auto& d : second.kraus())
    for (const auto& n : first.kraus()) ops.push_back(d * n);
  return QuantumChannel(first.dim_in(), second.dim_out(), std::move(ops), label);
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  if (!a.has_kraus() || !b.has_kraus()) throw Error(ErrorCode::Unsupported, "tensor products need Kraus forms");
  std::vector<Matrix> ops;
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) ops.push_back(kron(x, y));
  return QuantumChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(ops),
                        a.label() + " x " + b.label());
}

QuantumChannel canonical_kraus_order(const QuantumChannel& channel) {
  if (!channel.has_kraus()) return channel;
  std::vector<Matrix> ops = channel.kraus();
  std::stable_sort(ops.begin(), ops.end(), kraus_less);
  return QuantumChannel(channel.dim_in(), channel.dim_out(), std::move(ops), channel.label());
}

double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& channel) {
  require_cptp_kraus(channel, "entanglement_fidelity");
  if (rho.dim() != channel.dim_in() || channel.dim_in() != channel.dim_out()) {
    throw Error(ErrorCode::DimensionMismatch, "entanglement fidelity needs a d -> d channel matching the state");
  }
  const int d = rho.dim();
  const PureState psi = purify(rho);
  double f = 0.0;
  for (const auto& k : channel.kraus()) {
    const Vector moved = kron(identity(d), k) * psi.amplitudes();
    f += std::norm(psi.amplitudes().dot(moved));
  }
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace qcap
