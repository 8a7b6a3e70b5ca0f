#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcap/entropy.hpp"
#include "qcap/optimizer.hpp"
#include "qcap/qmath.hpp"

namespace qcap {

// Bloch-ball action r -> A r + b of a qubit map.
struct AffineMap {
  Eigen::Matrix3d A = Eigen::Matrix3d::Identity();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();

  Eigen::Vector3d operator()(const Eigen::Vector3d& r) const { return A * r + b; }
};

enum class ChannelType {
  identity,
  bit_flip,
  phase_flip,
  bit_phase_flip,
  depolarizing,
  amplitude_damping,  // p: probability that |0> is left unchanged
  dephasing,
  erasure,
  phase_erasure,      // q: phase-erasure probability
  mixed_erasure,      // p: erasure, q: phase erasure
  measure_prepare,
  pancake,
  bsc,                // classical binary symmetric channel embedded in a qubit
  custom,
};

std::string_view to_string(ChannelType type) noexcept;
std::optional<ChannelType> parse_channel_type(std::string_view name) noexcept;

struct ChannelKind {
  ChannelType type = ChannelType::identity;
  double p = 0.0;
  double q = 0.0;
  int dim = 2;  // input dimension for identity and the erasure family

  // Damping rate gamma = 1 - p of the amplitude damping channel.
  double damping() const noexcept { return 1.0 - p; }
};

// Finite Kraus list N_i (dim_out x dim_in). Qubit maps that are not
// completely positive (the pancake map, non-CP Pauli maps) are carried as an
// affine Bloch map without Kraus operators; they can be applied but fail
// is_cptp and are rejected by every capacity solver.
class QuantumChannel {
public:
  QuantumChannel(int dim_in, int dim_out, std::vector<Matrix> kraus, std::string label = "custom");

  static QuantumChannel from_affine(const AffineMap& map, std::string label);

  int dim_in() const noexcept { return dim_in_; }
  int dim_out() const noexcept { return dim_out_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  const std::string& label() const noexcept { return label_; }
  bool has_kraus() const noexcept { return !kraus_.empty(); }
  const std::optional<AffineMap>& affine_only() const noexcept { return affine_; }

  // Linear extension of the map to arbitrary dim_in x dim_in operators.
  Matrix apply_linear(const Matrix& x) const;

  // |sum N_i^dag N_i - I|_max; +inf for maps without Kraus operators.
  double completeness_error() const;
  bool is_trace_preserving(double tolerance = tol::completeness) const {
    return completeness_error() <= tolerance;
  }

private:
  int dim_in_;
  int dim_out_;
  std::vector<Matrix> kraus_;
  std::string label_;
  std::optional<AffineMap> affine_;
};

QuantumChannel make_channel(const ChannelKind& kind);

// Pauli (unital, diagonal) qubit map with distortion vector eta. Returned in
// Kraus form when it is completely positive, as an affine map otherwise.
QuantumChannel pauli_map(const Eigen::Vector3d& eta, std::string label = "pauli");

// sum N_i rho N_i^dag.
DensityMatrix apply(const QuantumChannel& channel, const DensityMatrix& rho);

struct ChoiMatrix {
  Matrix matrix;  // (I (x) N)(|Phi><Phi|), |Phi> = sum_i |ii> / sqrt(d_in)
  int dim_in = 0;
  int dim_out = 0;
};

ChoiMatrix choi(const QuantumChannel& channel);

// Matrix S with vec(N(X)) = S vec(X), column-major vectorization.
Matrix superoperator(const QuantumChannel& channel);

struct CptpDiagnostics {
  bool cptp = false;
  bool trace_preserving = false;
  double completeness_error = 0.0;
  double choi_min_eigenvalue = 0.0;
  std::string reason;

  explicit operator bool() const noexcept { return cptp; }
};

CptpDiagnostics is_cptp(const QuantumChannel& channel);
bool is_unital(const QuantumChannel& channel);

// A -> E map with rho_E(i, j) = Tr(N_i rho N_j^dag); output dimension is the
// number of Kraus operators.
QuantumChannel complementary(const QuantumChannel& channel);

AffineMap affine_representation(const QuantumChannel& channel);

// |eta_x +- eta_y| <= |1 +- eta_z|
bool tetrahedron_check(const Eigen::Vector3d& eta);

// second after first: Kraus set {D_i N_j}.
QuantumChannel compose(const QuantumChannel& first, const QuantumChannel& second);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

// Same channel with the Kraus list in a fixed lexicographic order, so that
// results computed from it do not depend on how the list was supplied.
QuantumChannel canonical_kraus_order(const QuantumChannel& channel);

struct MinOutputEntropy {
  EntropyScalar value;
  PureState minimizer;
  OptimizerStats stats;
};

MinOutputEntropy min_output_entropy(const QuantumChannel& channel, const OptimizerConfig& cfg = {});

enum class Verdict { yes, no, undetermined };
std::string_view to_string(Verdict v) noexcept;

struct DegradabilityResult {
  Verdict verdict = Verdict::undetermined;
  std::optional<QuantumChannel> degrading_map;
  double condition_number = 0.0;
  double choi_min_eigenvalue = 0.0;
};

DegradabilityResult is_degradable(const QuantumChannel& channel);

// PPT test on the Choi matrix; decisive (and therefore only supported) for
// d_in * d_out <= 6.
bool is_entanglement_breaking(const QuantumChannel& channel);

// <psi_PA| (I (x) N)(|psi_PA><psi_PA|) |psi_PA> for the purification of rho.
double entanglement_fidelity(const DensityMatrix& rho, const QuantumChannel& channel);

// Throws InvalidChannel unless the channel has a trace-preserving Kraus form.
void require_cptp_kraus(const QuantumChannel& channel, std::string_view who);

}  // namespace qcap
