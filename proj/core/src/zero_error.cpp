#include "qcap/zero_error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/dynamic_bitset.hpp>

#include "qcap/capacity.hpp"

namespace qcap {

ConfusabilityGraph::ConfusabilityGraph(std::vector<std::string> labels)
    : labels_(std::move(labels)), adj_(labels_.size(), std::vector<bool>(labels_.size(), false)) {}

ConfusabilityGraph::ConfusabilityGraph(std::vector<std::string> labels, const std::vector<std::pair<int, int>>& edges)
    : ConfusabilityGraph(std::move(labels)) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

bool ConfusabilityGraph::adjacent(int i, int j) const {
  return adj_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

void ConfusabilityGraph::add_edge(int i, int j) {
  const int n = vertex_count();
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::DimensionMismatch, "edge endpoint out of range");
  if (i == j) throw Error(ErrorCode::InvalidParameter, "self-loops are not allowed");
  adj_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  adj_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
}

int ConfusabilityGraph::degree(int i) const {
  const auto& row = adj_.at(static_cast<std::size_t>(i));
  return static_cast<int>(std::count(row.begin(), row.end(), true));
}

std::size_t ConfusabilityGraph::edge_count() const { return edges().size(); }

std::vector<std::pair<int, int>> ConfusabilityGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < vertex_count(); ++i)
    for (int j = i + 1; j < vertex_count(); ++j)
      if (adjacent(i, j)) out.emplace_back(i, j);
  return out;
}

bool non_adjacent(const QuantumChannel& channel, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != channel.dim_in() || rho2.dim() != channel.dim_in()) {
    throw Error(ErrorCode::DimensionMismatch, "input state dimension does not match the channel");
  }
  const Matrix a = channel.apply_linear(rho1.matrix());
  const Matrix b = channel.apply_linear(rho2.matrix());
  // both orders, so the test is symmetric in floating point too
  const double overlap = 0.5 * ((a * b).trace().real() + (b * a).trace().real());
  return overlap <= kOrthogonalityThreshold;
}

ConfusabilityGraph confusability_graph(const QuantumChannel& channel, const std::vector<DensityMatrix>& states,
                                       std::vector<std::string> labels) {
  if (states.empty()) throw Error(ErrorCode::InvalidParameter, "confusability graph needs at least one state");
  if (labels.empty()) {
    for (std::size_t i = 0; i < states.size(); ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != states.size()) throw Error(ErrorCode::DimensionMismatch, "one label per state required");
  ConfusabilityGraph g(std::move(labels));
  for (int i = 0; i < g.vertex_count(); ++i) {
    for (int j = i + 1; j < g.vertex_count(); ++j) {
      if (!non_adjacent(channel, states[static_cast<std::size_t>(i)], states[static_cast<std::size_t>(j)])) {
        g.add_edge(i, j);
      }
    }
  }
  return g;
}

ConfusabilityGraph strong_product(const ConfusabilityGraph& g, const ConfusabilityGraph& h) {
  const long long total = static_cast<long long>(g.vertex_count()) * h.vertex_count();
  if (total > kMaxProductVertices) throw Error(ErrorCode::TooLarge, "strong product exceeds the vertex limit");
  std::vector<std::string> labels;
  for (int a = 0; a < g.vertex_count(); ++a)
    for (int b = 0; b < h.vertex_count(); ++b) labels.push_back(g.labels()[a] + "," + h.labels()[b]);
  ConfusabilityGraph out(std::move(labels));
  const int nh = h.vertex_count();
  auto close = [](const ConfusabilityGraph& x, int i, int j) { return i == j || x.adjacent(i, j); };
  for (int u = 0; u < out.vertex_count(); ++u) {
    for (int v = u + 1; v < out.vertex_count(); ++v) {
      if (close(g, u / nh, v / nh) && close(h, u % nh, v % nh)) out.add_edge(u, v);
    }
  }
  return out;
}

ConfusabilityGraph strong_product(const ConfusabilityGraph& g, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameter, "block length must be at least 1");
  if (std::pow(static_cast<double>(g.vertex_count()), n) > kMaxProductVertices) {
    throw Error(ErrorCode::TooLarge, "strong product exceeds the vertex limit");
  }
  ConfusabilityGraph out = g;
  for (int k = 1; k < n; ++k) out = strong_product(out, g);
  return out;
}

namespace {

using Bits = boost::dynamic_bitset<>;

// Maximum clique with greedy colouring bounds (Tomita-style).
class CliqueSearch {
public:
  explicit CliqueSearch(std::vector<Bits> nbr) : nbr_(std::move(nbr)) {}

  std::vector<int> run() {
    Bits all(nbr_.size());
    all.set();
    std::vector<int> current;
    expand(current, all);
    return best_;
  }

private:
  void colour_sort(const Bits& p, std::vector<int>& order, std::vector<int>& colour) const {
    Bits uncoloured = p;
    int k = 0;
    while (uncoloured.any()) {
      ++k;
      Bits q = uncoloured;
      for (auto v = q.find_first(); v != Bits::npos; v = q.find_next(v)) {
        uncoloured.reset(v);
        q &= ~nbr_[v];
        order.push_back(static_cast<int>(v));
        colour.push_back(k);
      }
    }
  }

  void expand(std::vector<int>& current, Bits p) {
    std::vector<int> order, colour;
    colour_sort(p, order, colour);
    for (auto i = order.size(); i-- > 0;) {
      if (current.size() + static_cast<std::size_t>(colour[i]) <= best_.size()) return;
      const int v = order[i];
      current.push_back(v);
      const Bits next = p & nbr_[static_cast<std::size_t>(v)];
      if (next.none()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      p.reset(static_cast<std::size_t>(v));
    }
  }

  std::vector<Bits> nbr_;
  std::vector<int> best_;
};

}  // namespace

IndependentSet max_independent_set(const ConfusabilityGraph& g) {
  const int n = g.vertex_count();
  if (n > kMaxExactVertices) throw Error(ErrorCode::TooLarge, "exact independent set limited to 256 vertices");
  if (n == 0) return {};

  // complement graph, vertices renumbered by complement degree (descending)
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return g.degree(a) < g.degree(b); });
  std::vector<Bits> nbr(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && !g.adjacent(perm[a], perm[b])) nbr[a].set(b);

  IndependentSet out;
  for (int v : CliqueSearch(std::move(nbr)).run()) out.vertices.push_back(perm[static_cast<std::size_t>(v)]);
  std::sort(out.vertices.begin(), out.vertices.end());
  out.size = static_cast<int>(out.vertices.size());
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < out.vertices.size(); ++j)
      if (g.adjacent(out.vertices[i], out.vertices[j])) {
        throw Error(ErrorCode::InvalidParameter, "internal error: independent set witness has an edge");
      }
  return out;
}

ZeroErrorReport zero_error_lower_bound(const ConfusabilityGraph& g, int n) {
  const ConfusabilityGraph product = strong_product(g, n);
  const IndependentSet mis = max_independent_set(product);
  ZeroErrorReport r;
  r.block_length = n;
  r.K = std::max(1, mis.size);
  r.rate = std::log2(static_cast<double>(r.K)) / n;
  for (int v : mis.vertices) r.codewords.push_back(product.labels()[static_cast<std::size_t>(v)]);
  return r;
}

ZeroErrorReport zero_error_lower_bound(const QuantumChannel& channel, std::vector<DensityMatrix> states, int n,
                                       const OptimizerConfig& cfg) {
  std::vector<std::string> labels;
  if (states.empty()) {
    if (channel.dim_in() != 2) throw Error(ErrorCode::InvalidParameter, "default input states are qubit states");
    for (auto& [label, rho] : pauli_eigenstates()) {
      labels.push_back(label);
      states.push_back(rho);
    }
  }
  ZeroErrorReport r = zero_error_lower_bound(confusability_graph(channel, states, std::move(labels)), n);
  r.hsw_upper = hsw_numeric(channel, cfg).C_hsw;
  return r;
}

ConfusabilityGraph pentagon_graph() {
  return ConfusabilityGraph({"0", "1", "2", "3", "4"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
}

ConfusabilityGraph complete_graph(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  ConfusabilityGraph g(std::move(labels));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

std::vector<std::pair<std::string, DensityMatrix>> pauli_eigenstates() {
  std::vector<std::pair<std::string, DensityMatrix>> out;
  const std::pair<const char*, BlochVector> dirs[] = {
      {"0", {0, 0, 1}}, {"1", {0, 0, -1}}, {"+", {1, 0, 0}}, {"-", {-1, 0, 0}}, {"+i", {0, 1, 0}}, {"-i", {0, -1, 0}}};
  for (const auto& [label, r] : dirs) out.emplace_back(label, from_bloch(r));
  return out;
}

}  // namespace qcap
