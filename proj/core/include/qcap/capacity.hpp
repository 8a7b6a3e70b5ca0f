#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcap/channels.hpp"
#include "qcap/optimizer.hpp"

// Single-letter capacity solvers. Every figure reported here is a one-use
// quantity; regularized (many-copy) capacities are out of scope and the
// single-use values are lower bounds on them in general.
namespace qcap {

// Smallest-enclosing-ball certificate for the qubit min-max solver.
struct GeometricCertificate {
  BlochVector sigma_star;                  // centre of the informational ball
  std::vector<BlochVector> maximizers;     // outputs at divergence r*
  std::vector<double> weights;             // mixture of maximizers closest to sigma_star
  double hull_distance = 0.0;              // |sum w_k r_k - sigma_star|
  double chi_of_maximizers = 0.0;          // Holevo quantity of that mixture
  bool ok = false;                         // certificate holds within tolerance
  std::optional<bool> centred;             // unital channels only: sigma_star == I/2
};

struct CapacityReport {
  std::string channel_label;
  std::optional<double> chi;     // Holevo quantity of the reported ensemble (chi_AB)
  std::optional<double> chi_ae;  // chi_AE of the same ensemble (private information)
  std::optional<double> C_hsw;
  std::optional<double> Q1;      // max(Q1_raw, 0)
  std::optional<double> Q1_raw;  // maximal coherent information, unclamped
  std::optional<double> C_E;
  std::optional<double> P1;
  std::optional<double> r_star;
  std::optional<double> S_min;
  OptimizerStats optimizer;
  std::optional<Ensemble> optimal_ensemble;  // pure input states and priors
  std::optional<DensityMatrix> optimal_input;
  std::optional<GeometricCertificate> certificate;
  bool single_letter = true;
  std::vector<std::string> notes;

  // Adds every populated field of `other` that is not set here.
  void merge(const CapacityReport& other);
};

// chi of the channel outputs of an input ensemble.
double holevo_of_outputs(const QuantumChannel& channel, const Ensemble& inputs);
// chi_AB - chi_AE for an input ensemble.
double private_difference(const QuantumChannel& channel, const Ensemble& inputs);

CapacityReport hsw_numeric(const QuantumChannel& channel, const OptimizerConfig& cfg = {});
CapacityReport hsw_geometric(const QuantumChannel& channel, const OptimizerConfig& cfg = {});
CapacityReport quantum_capacity_single_use(const QuantumChannel& channel, const OptimizerConfig& cfg = {});
CapacityReport entanglement_assisted(const QuantumChannel& channel, const OptimizerConfig& cfg = {});
CapacityReport private_information(const QuantumChannel& channel, const OptimizerConfig& cfg = {});

// Closed forms: erasure, phase/mixed erasure, depolarizing, amplitude damping
// (quantum capacity only) and the classical BSC. Unsupported otherwise.
CapacityReport analytic_capacity(const ChannelKind& kind);

// max over tau in [0, 1] of H2((1 - gamma) tau) - H2(gamma tau), clamped at 0.
double amplitude_damping_quantum_capacity(double gamma);

}  // namespace qcap
