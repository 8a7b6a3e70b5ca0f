#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcap/channels.hpp"

namespace qcap {

// Simple undirected graph; vertices are confusable inputs.
class ConfusabilityGraph {
public:
  explicit ConfusabilityGraph(std::vector<std::string> labels);
  ConfusabilityGraph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const noexcept { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool adjacent(int i, int j) const;
  void add_edge(int i, int j);  // self-loops rejected
  int degree(int i) const;
  std::size_t edge_count() const;
  // (i, j) with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> adj_;
};

struct IndependentSet {
  int size = 0;
  std::vector<int> vertices;  // ascending
};

struct ZeroErrorReport {
  int block_length = 1;
  std::int64_t K = 1;          // independence number of the n-fold strong product
  double rate = 0.0;           // log2(K) / n, a lower bound on the zero-error capacity
  std::vector<std::string> codewords;
  std::optional<double> hsw_upper;  // C_hsw of the attached channel, if any
};

inline constexpr double kOrthogonalityThreshold = 1e-10;
inline constexpr int kMaxExactVertices = 256;
inline constexpr int kMaxProductVertices = 16384;

// Tr(N(rho1) N(rho2)) <= 1e-10.
bool non_adjacent(const QuantumChannel& channel, const DensityMatrix& rho1, const DensityMatrix& rho2);

ConfusabilityGraph confusability_graph(const QuantumChannel& channel, const std::vector<DensityMatrix>& states,
                                       std::vector<std::string> labels = {});

// Tuples are adjacent when every coordinate pair is adjacent or equal.
ConfusabilityGraph strong_product(const ConfusabilityGraph& g, const ConfusabilityGraph& h);
ConfusabilityGraph strong_product(const ConfusabilityGraph& g, int n);

// Exact, by maximum clique search on the complement with colouring bounds.
IndependentSet max_independent_set(const ConfusabilityGraph& g);

ZeroErrorReport zero_error_lower_bound(const ConfusabilityGraph& g, int n);
// Graph over `states` (the six Pauli eigenstates when empty), with the HSW
// capacity of the channel attached as the upper end of the ordering.
ZeroErrorReport zero_error_lower_bound(const QuantumChannel& channel, std::vector<DensityMatrix> states, int n,
                                       const OptimizerConfig& cfg = {});

ConfusabilityGraph pentagon_graph();
ConfusabilityGraph complete_graph(int n);

// |0>, |1>, |+>, |->, |+i>, |-i> with labels.
std::vector<std::pair<std::string, DensityMatrix>> pauli_eigenstates();

}  // namespace qcap
