#include "qcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "nelder_mead.hpp"

namespace qcap {

namespace {

constexpr int kMaxSolverDim = 8;

void require_solver_channel(const QuantumChannel& channel, const OptimizerConfig& cfg, std::string_view who,
                            int max_dim = kMaxSolverDim) {
  cfg.validate();
  require_cptp_kraus(channel, who);
  if (channel.dim_in() > max_dim || channel.dim_out() > 4 * max_dim) {
    throw Error(ErrorCode::TooLarge, std::string(who) + ": channel dimensions exceed the solver limit");
  }
}

// Pure-state ensembles as flat parameter vectors. Qubits use Bloch angles
// (theta, phi); larger dimensions use unnormalized complex amplitudes.
// Priors are softmax logits stored after the states.
struct EnsembleParams {
  int dim;
  int members;

  std::size_t per_state() const { return dim == 2 ? 2u : 2u * static_cast<std::size_t>(dim); }
  std::size_t size() const { return static_cast<std::size_t>(members) * (per_state() + 1); }

  Vector state(std::span<const double> x, int i) const {
    const auto off = static_cast<std::size_t>(i) * per_state();
    if (dim == 2) {
      Vector psi(2);
      psi(0) = std::cos(0.5 * x[off]);
      psi(1) = std::polar(std::sin(0.5 * x[off]), x[off + 1]);
      return psi;
    }
    return detail::amplitudes_from_params(x.subspan(off, per_state()), dim);
  }

  std::vector<double> weights(std::span<const double> x) const {
    return detail::weights_from_logits(x.subspan(static_cast<std::size_t>(members) * per_state()));
  }

  std::vector<double> encode(const std::vector<Vector>& states, const std::vector<double>& w) const {
    std::vector<double> x(size());
    for (int i = 0; i < members; ++i) {
      const Vector& psi = states[static_cast<std::size_t>(i)];
      const auto off = static_cast<std::size_t>(i) * per_state();
      if (dim == 2) {
        x[off] = 2.0 * std::atan2(std::abs(psi(1)), std::abs(psi(0)));
        x[off + 1] = std::arg(psi(1)) - std::arg(psi(0));
      } else {
        detail::params_from_amplitudes(psi, std::span<double>(x).subspan(off, per_state()));
      }
      x[static_cast<std::size_t>(members) * per_state() + static_cast<std::size_t>(i)] =
          std::log(std::max(w[static_cast<std::size_t>(i)], 1e-12));
    }
    return x;
  }
};

double holevo_fast(const std::vector<Matrix>& outputs, const std::vector<double>& w) {
  Matrix avg = Matrix::Zero(outputs.front().rows(), outputs.front().cols());
  double mean_entropy = 0.0;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    avg += w[k] * outputs[k];
    mean_entropy += w[k] * von_neumann_of(outputs[k]);
  }
  return von_neumann_of(avg) - mean_entropy;
}

Matrix output_of(const QuantumChannel& ch, const Vector& psi) { return ch.apply_linear(psi * psi.adjoint()); }

// Input pool for the discretized Blahut-Arimoto stage.
std::vector<Vector> input_pool(int dim, detail::Rng& rng) {
  std::vector<Vector> pool;
  if (dim == 2) {
    for (const auto& n : detail::sphere_points(400)) pool.push_back(detail::qubit_from_direction(n));
    for (const Eigen::Vector3d& n : {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(-1, 0, 0), Eigen::Vector3d(0, 1, 0),
                                    Eigen::Vector3d(0, -1, 0), Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(0, 0, -1)}) {
      pool.push_back(detail::qubit_from_direction(n));
    }
    return pool;
  }
  for (int k = 0; k < dim; ++k) pool.push_back(PureState::basis(dim, k).amplitudes());
  for (int k = 0; k < dim; ++k) {
    Vector f(dim);
    for (int j = 0; j < dim; ++j) f(j) = std::polar(1.0 / std::sqrt(dim), 2.0 * std::numbers::pi * j * k / dim);
    pool.push_back(f);
  }
  for (int r = 0; r < 150 * dim; ++r) pool.push_back(detail::random_pure(dim, rng));
  return pool;
}

// log2 of a PSD matrix with eigenvalues floored at a tiny positive value.
Matrix log2_psd(const Matrix& sigma) {
  return hermitian_function(sigma, [](double x) { return std::log2(std::max(x, 1e-300)); });
}

double divergence_to(const Matrix& rho, double entropy_rho, const Matrix& log_sigma) {
  return -entropy_rho - (rho * log_sigma).trace().real();
}

struct BlahutArimoto {
  std::vector<double> weights;
  double chi = 0.0;
  double upper = 0.0;
  int iterations = 0;
};

// Classical-quantum Blahut-Arimoto over a fixed output set:
// p(x) <- p(x) 2^{D(rho_x || sigma_p)} / Z. max_x D(rho_x || sigma) bounds the
// pool capacity from above at every iterate.
BlahutArimoto blahut_arimoto(const std::vector<Matrix>& outputs, const std::vector<double>& entropies, int max_iter,
                             double gap_tol) {
  const std::size_t n = outputs.size();
  BlahutArimoto ba;
  ba.weights.assign(n, 1.0 / static_cast<double>(n));
  std::vector<double> div(n);
  for (int it = 0; it < max_iter; ++it) {
    Matrix sigma = Matrix::Zero(outputs.front().rows(), outputs.front().cols());
    for (std::size_t x = 0; x < n; ++x) sigma += ba.weights[x] * outputs[x];
    const Matrix log_sigma = log2_psd(sigma);
    double chi = 0.0;
    double upper = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < n; ++x) {
      div[x] = divergence_to(outputs[x], entropies[x], log_sigma);
      chi += ba.weights[x] * div[x];
      upper = std::max(upper, div[x]);
    }
    ba.chi = chi;
    ba.upper = upper;
    ba.iterations = it + 1;
    if (upper - chi <= gap_tol) break;
    double z = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      ba.weights[x] *= std::exp2(div[x] - upper);
      z += ba.weights[x];
    }
    for (double& w : ba.weights) w /= z;
  }
  return ba;
}

// Real coordinates of a Hermitian matrix modulo its (fixed) trace.
Eigen::VectorXd hermitian_coordinates(const Matrix& m) {
  const auto d = m.rows();
  Eigen::VectorXd v(d * d - 1);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i + 1 < d) v(k++) = m(i, i).real();
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v(k++) = m(i, j).real();
      v(k++) = m(i, j).imag();
    }
  }
  return v;
}

// Caratheodory reduction: same weighted mean of `points` on at most
// dim + 1 of them.
std::vector<double> caratheodory(const std::vector<Eigen::VectorXd>& points, std::vector<double> w) {
  const auto dim = points.front().size();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) active.push_back(i);
  }
  while (static_cast<Eigen::Index>(active.size()) > dim + 1) {
    const auto cols = dim + 2;
    Eigen::MatrixXd m(dim + 1, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      m.col(c).head(dim) = points[active[static_cast<std::size_t>(c)]];
      m(dim, c) = 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    Eigen::VectorXd null = svd.matrixV().col(cols - 1);
    if (null.maxCoeff() <= 0.0) null = -null;
    double alpha = std::numeric_limits<double>::infinity();
    Eigen::Index hit = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (null(c) > 1e-14) {
        const double ratio = w[active[static_cast<std::size_t>(c)]] / null(c);
        if (ratio < alpha) {
          alpha = ratio;
          hit = c;
        }
      }
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      auto& wi = w[active[static_cast<std::size_t>(c)]];
      wi = std::max(0.0, wi - alpha * null(c));
    }
    w[active[static_cast<std::size_t>(hit)]] = 0.0;
    std::vector<std::size_t> next;
    for (std::size_t i : active) {
      if (w[i] > 1e-15) next.push_back(i);
    }
    active.swap(next);
  }
  return w;
}

struct EnsembleCandidate {
  std::vector<Vector> states;
  std::vector<double> weights;
  double value = -std::numeric_limits<double>::infinity();
};

// Largest-weight members (at most `limit`), weights renormalized.
EnsembleCandidate top_members(const std::vector<Vector>& states, const std::vector<double>& w, std::size_t limit) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  EnsembleCandidate c;
  double total = 0.0;
  for (std::size_t i = 0; i < idx.size() && c.states.size() < limit; ++i) {
    if (w[idx[i]] <= 0.0) break;
    c.states.push_back(states[idx[i]]);
    c.weights.push_back(w[idx[i]]);
    total += w[idx[i]];
  }
  for (double& v : c.weights) v /= total;
  return c;
}

EnsembleCandidate random_ensemble(int dim, int members, detail::Rng& rng) {
  EnsembleCandidate c;
  for (int i = 0; i < members; ++i) {
    c.states.push_back(detail::random_pure(dim, rng));
    c.weights.push_back(1.0 / members);
  }
  return c;
}

// Local refinement of a pure-state ensemble against `objective` (maximized).
struct EnsembleRefiner {
  int dim;
  std::function<double(const std::vector<Vector>&, const std::vector<double>&)> objective;
  OptimizerStats* stats;

  EnsembleCandidate refine(const EnsembleCandidate& start) const {
    const EnsembleParams layout{dim, static_cast<int>(start.states.size())};
    const detail::Objective f = [&](std::span<const double> x) {
      std::vector<Vector> states;
      states.reserve(static_cast<std::size_t>(layout.members));
      for (int i = 0; i < layout.members; ++i) states.push_back(layout.state(x, i));
      return -objective(states, layout.weights(x));
    };
    detail::NelderMeadOptions opts;
    opts.initial_step = 0.2;
    opts.max_evaluations = 500 * static_cast<int>(layout.size());
    const auto res = detail::nelder_mead(f, layout.encode(start.states, start.weights), opts);
    stats->iterations += res.evaluations;
    ++stats->restarts;
    EnsembleCandidate out;
    for (int i = 0; i < layout.members; ++i) out.states.push_back(layout.state(res.x, i));
    out.weights = layout.weights(res.x);
    out.value = -res.value;
    return out;
  }

  double evaluate(EnsembleCandidate& c) const {
    c.value = objective(c.states, c.weights);
    return c.value;
  }
};

// Drops members with negligible prior and merges the remainder.
EnsembleCandidate prune(const EnsembleCandidate& c, double min_weight) {
  EnsembleCandidate out;
  double total = 0.0;
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    if (c.weights[i] >= min_weight) {
      out.states.push_back(c.states[i]);
      out.weights.push_back(c.weights[i]);
      total += c.weights[i];
    }
  }
  for (double& w : out.weights) w /= total;
  return out;
}

Ensemble to_ensemble(const EnsembleCandidate& c) {
  std::vector<DensityMatrix> states;
  for (const auto& psi : c.states) states.emplace_back(PureState(psi, Validation::repair));
  std::vector<double> w = c.weights;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return Ensemble(std::move(w), std::move(states));
}

// max over pure inputs of D(N(psi) || sigma): pool scan plus local polish.
double max_divergence(const QuantumChannel& ch, const std::vector<Vector>& pool, const Matrix& sigma,
                      OptimizerStats& stats) {
  const Matrix log_sigma = log2_psd(sigma);
  const int d = ch.dim_in();
  auto div = [&](const Vector& psi) {
    const Matrix out = output_of(ch, psi);
    return divergence_to(out, von_neumann_of(out), log_sigma);
  };
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < pool.size(); ++i) ranked.emplace_back(-div(pool[i]), i);
  std::sort(ranked.begin(), ranked.end());
  double best = -ranked.front().first;
  for (std::size_t r = 0; r < std::min<std::size_t>(3, ranked.size()); ++r) {
    std::vector<double> x0(2 * static_cast<std::size_t>(d));
    detail::params_from_amplitudes(pool[ranked[r].second], x0);
    detail::NelderMeadOptions opts;
    opts.initial_step = 0.05;
    opts.max_evaluations = 300 * d;
    const auto res = detail::nelder_mead(
        [&](std::span<const double> x) { return -div(detail::amplitudes_from_params(x, d)); }, x0, opts);
    stats.iterations += res.evaluations;
    best = std::max(best, -res.value);
  }
  return best;
}

// Shared driver for ensemble maximization (HSW and private information).
EnsembleCandidate optimize_ensemble(const QuantumChannel& ch, const OptimizerConfig& cfg,
                                    const EnsembleRefiner& refiner, std::vector<EnsembleCandidate> seeds,
                                    detail::Rng& rng) {
  const int d = ch.dim_in();
  for (int r = 0; r < cfg.restarts; ++r) seeds.push_back(random_ensemble(d, cfg.max_inputs, rng));
  for (auto& s : seeds) refiner.evaluate(s);
  // the structured seeds (listed first) are always refined; random ones by rank
  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return seeds[a].value > seeds[b].value; });
  const std::size_t structured = seeds.size() - static_cast<std::size_t>(cfg.restarts);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < structured; ++i) chosen.push_back(i);
  for (std::size_t i : order) {
    if (chosen.size() >= structured + 3) break;
    if (i >= structured) chosen.push_back(i);
  }

  EnsembleCandidate best;
  for (std::size_t i : chosen) {
    EnsembleCandidate refined = refiner.refine(seeds[i]);
    if (refined.value > best.value + 1e-15) best = std::move(refined);
  }
  for (const auto& s : seeds) {
    if (s.value > best.value) best = s;
  }
  EnsembleCandidate pruned = prune(best, 1e-4);
  if (pruned.states.size() < best.states.size() && !pruned.states.empty()) {
    EnsembleCandidate polished = refiner.refine(pruned);
    if (polished.value >= best.value - 1e-9) best = std::move(polished);
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

void CapacityReport::merge(const CapacityReport& other) {
  auto take = [](std::optional<double>& mine, const std::optional<double>& theirs) {
    if (!mine && theirs) mine = theirs;
  };
  if (channel_label.empty()) channel_label = other.channel_label;
  take(chi, other.chi);
  take(chi_ae, other.chi_ae);
  take(C_hsw, other.C_hsw);
  take(Q1, other.Q1);
  take(Q1_raw, other.Q1_raw);
  take(C_E, other.C_E);
  take(P1, other.P1);
  take(r_star, other.r_star);
  take(S_min, other.S_min);
  if (!optimal_ensemble && other.optimal_ensemble) optimal_ensemble = other.optimal_ensemble;
  if (!optimal_input && other.optimal_input) optimal_input = other.optimal_input;
  if (!certificate && other.certificate) certificate = other.certificate;
  optimizer.iterations += other.optimizer.iterations;
  optimizer.restarts += other.optimizer.restarts;
  optimizer.achieved_tolerance = std::max(optimizer.achieved_tolerance, other.optimizer.achieved_tolerance);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

double holevo_of_outputs(const QuantumChannel& channel, const Ensemble& inputs) {
  std::vector<Matrix> outs;
  for (const auto& s : inputs.states()) outs.push_back(channel.apply_linear(s.matrix()));
  return std::max(0.0, holevo_fast(outs, inputs.weights()));
}

double private_difference(const QuantumChannel& channel, const Ensemble& inputs) {
  return holevo_of_outputs(channel, inputs) - holevo_of_outputs(complementary(channel), inputs);
}

CapacityReport hsw_numeric(const QuantumChannel& channel, const OptimizerConfig& cfg) {
  require_solver_channel(channel, cfg, "hsw_numeric");
  const QuantumChannel ch = canonical_kraus_order(channel);
  const int d = ch.dim_in();
  detail::Rng rng(cfg.seed);

  CapacityReport report;
  report.channel_label = channel.label();

  const std::vector<Vector> pool = input_pool(d, rng);
  std::vector<Matrix> outputs;
  std::vector<double> entropies;
  for (const auto& psi : pool) {
    outputs.push_back(output_of(ch, psi));
    entropies.push_back(von_neumann_of(outputs.back()));
  }
  const BlahutArimoto ba = blahut_arimoto(outputs, entropies, 4000, 1e-10);
  report.optimizer.iterations += ba.iterations;

  std::vector<Eigen::VectorXd> coords;
  for (const auto& o : outputs) coords.push_back(hermitian_coordinates(o));
  std::vector<double> ba_weights = ba.weights;
  for (double& w : ba_weights) {
    if (w < 1e-9) w = 0.0;
  }
  const std::vector<double> reduced = caratheodory(coords, ba_weights);

  const EnsembleRefiner refiner{
      d,
      [&](const std::vector<Vector>& states, const std::vector<double>& w) {
        std::vector<Matrix> outs;
        outs.reserve(states.size());
        for (const auto& psi : states) outs.push_back(output_of(ch, psi));
        return holevo_fast(outs, w);
      },
      &report.optimizer};

  std::vector<EnsembleCandidate> seeds;
  seeds.push_back(top_members(pool, reduced, static_cast<std::size_t>(cfg.max_inputs)));
  seeds.push_back(top_members(pool, ba.weights, 2));
  EnsembleCandidate best = optimize_ensemble(ch, cfg, refiner, std::move(seeds), rng);

  // duality gap: chi <= C <= max_psi D(N(psi) || sigma) for any sigma
  Matrix sigma = Matrix::Zero(ch.dim_out(), ch.dim_out());
  for (std::size_t i = 0; i < best.states.size(); ++i) sigma += best.weights[i] * output_of(ch, best.states[i]);
  const double upper = max_divergence(ch, pool, sigma, report.optimizer);

  // chi never exceeds log of the smaller dimension; only rounding can push it past
  const double ceiling = std::log2(static_cast<double>(std::min(ch.dim_in(), ch.dim_out())));
  report.chi = std::clamp(best.value, 0.0, ceiling);
  report.C_hsw = report.chi;
  report.optimizer.achieved_tolerance = std::max(0.0, upper - best.value);
  report.optimal_ensemble = to_ensemble(best);
  return report;
}

CapacityReport quantum_capacity_single_use(const QuantumChannel& channel, const OptimizerConfig& cfg) {
  require_solver_channel(channel, cfg, "quantum_capacity_single_use");
  const QuantumChannel ch = canonical_kraus_order(channel);
  const QuantumChannel env = complementary(ch);
  const int d = ch.dim_in();
  detail::Rng rng(cfg.seed);

  CapacityReport report;
  report.channel_label = channel.label();

  auto coherent = [&](const Matrix& rho) {
    return von_neumann_of(ch.apply_linear(rho)) - von_neumann_of(env.apply_linear(rho));
  };

  // parameter seeds, scored before refinement
  std::vector<std::vector<double>> seeds;
  std::function<Matrix(std::span<const double>)> decode;
  if (d == 2) {
    decode = [](std::span<const double> x) { return from_bloch(BlochVector::from(detail::ball_from_params(x))).matrix(); };
    seeds.push_back({0.0, 0.0, 0.0});
    for (double radius : {0.3, 0.6, 0.9, 0.999}) {
      for (const auto& n : detail::sphere_points(60)) {
        std::vector<double> x(3);
        detail::params_from_ball(n * radius, x);
        seeds.push_back(std::move(x));
      }
    }
    for (int r = 0; r < cfg.restarts; ++r) {
      std::vector<double> x{rng.normal(), rng.normal(), rng.normal()};
      seeds.push_back(std::move(x));
    }
  } else {
    decode = [d](std::span<const double> x) { return detail::mixed_from_params(x, d); };
    const std::size_t n = 2 * static_cast<std::size_t>(d * d);
    std::vector<double> mixed(n, 0.0);
    for (int i = 0; i < d; ++i) mixed[2 * static_cast<std::size_t>(i * d + i)] = 1.0;
    seeds.push_back(mixed);
    for (int k = 0; k < d; ++k) {
      std::vector<double> x(n, 0.0);
      for (int i = 0; i < d; ++i) x[2 * static_cast<std::size_t>(i * d + i)] = i == k ? 1.0 : 0.2;
      seeds.push_back(std::move(x));
    }
    for (int r = 0; r < cfg.restarts; ++r) {
      std::vector<double> x(n);
      for (double& v : x) v = rng.normal();
      seeds.push_back(std::move(x));
    }
  }
  const detail::Objective objective = [&](std::span<const double> x) { return -coherent(decode(x)); };

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < seeds.size(); ++i) ranked.emplace_back(objective(seeds[i]), i);
  std::stable_sort(ranked.begin(), ranked.end());
  report.optimizer.iterations += static_cast<int>(seeds.size());

  double best = -ranked.front().first;
  std::vector<double> best_x = seeds[ranked.front().second];
  const std::size_t polish = std::min<std::size_t>(ranked.size(), 4);
  for (std::size_t r = 0; r < polish; ++r) {
    detail::NelderMeadOptions opts;
    opts.initial_step = 0.2;
    opts.max_evaluations = 400 * static_cast<int>(seeds[ranked[r].second].size());
    const auto res = detail::nelder_mead(objective, seeds[ranked[r].second], opts);
    report.optimizer.iterations += res.evaluations;
    ++report.optimizer.restarts;
    if (-res.value > best) {
      report.optimizer.achieved_tolerance = -res.value - best;
      best = -res.value;
      best_x = res.x;
    }
  }
  report.Q1_raw = best;
  report.Q1 = std::max(0.0, best);
  report.optimal_input = DensityMatrix::trusted(decode(best_x));
  try {
    if (is_degradable(ch).verdict == Verdict::yes) {
      report.notes.emplace_back("degradable channel: single-use quantum capacity equals the asymptotic one");
    }
  } catch (const Error&) {
    // classification is informational only
  }
  return report;
}

CapacityReport entanglement_assisted(const QuantumChannel& channel, const OptimizerConfig& cfg) {
  require_solver_channel(channel, cfg, "entanglement_assisted", 4);
  const QuantumChannel ch = canonical_kraus_order(channel);
  const int d = ch.dim_in();
  const int dout = ch.dim_out();
  detail::Rng rng(cfg.seed);

  CapacityReport report;
  report.channel_label = channel.label();

  // I(P:B) of (I (x) N)(|phi><phi|) for the purification |phi>_PA of rho
  auto mutual = [&](const Matrix& rho) {
    const PureState phi = purify(DensityMatrix::trusted(rho));
    Matrix joint = Matrix::Zero(d * dout, d * dout);
    Matrix amplitudes(d, d);  // row: purifier index, column: system index
    for (int p = 0; p < d; ++p)
      for (int a = 0; a < d; ++a) amplitudes(p, a) = phi[p * d + a];
    for (const auto& k : ch.kraus()) {
      const Matrix moved = amplitudes * k.transpose();  // d x dout
      Vector v(d * dout);
      for (int p = 0; p < d; ++p)
        for (int b = 0; b < dout; ++b) v(p * dout + b) = moved(p, b);
      joint.noalias() += v * v.adjoint();
    }
    const double s_p = von_neumann_of(partial_trace(joint, d, dout, Subsystem::A));
    const double s_b = von_neumann_of(partial_trace(joint, d, dout, Subsystem::B));
    return s_p + s_b - von_neumann_of(joint);
  };

  std::function<Matrix(std::span<const double>)> decode;
  std::vector<std::vector<double>> seeds;
  if (d == 2) {
    decode = [](std::span<const double> x) { return from_bloch(BlochVector::from(detail::ball_from_params(x))).matrix(); };
    seeds.push_back({0.0, 0.0, 0.0});
    for (const auto& n : detail::sphere_points(24)) {
      std::vector<double> x(3);
      detail::params_from_ball(n * 0.5, x);
      seeds.push_back(std::move(x));
    }
  } else {
    decode = [d](std::span<const double> x) { return detail::mixed_from_params(x, d); };
    std::vector<double> mixed(2 * static_cast<std::size_t>(d * d), 0.0);
    for (int i = 0; i < d; ++i) mixed[2 * static_cast<std::size_t>(i * d + i)] = 1.0;
    seeds.push_back(std::move(mixed));
  }
  for (int r = 0; r < std::max(1, cfg.restarts / 4); ++r) {
    std::vector<double> x(seeds.front().size());
    for (double& v : x) v = 0.5 * rng.normal();
    seeds.push_back(std::move(x));
  }
  const detail::Objective objective = [&](std::span<const double> x) { return -mutual(decode(x)); };

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < seeds.size(); ++i) ranked.emplace_back(objective(seeds[i]), i);
  std::stable_sort(ranked.begin(), ranked.end());
  double best = -ranked.front().first;
  std::vector<double> best_x = seeds[ranked.front().second];
  for (std::size_t r = 0; r < std::min<std::size_t>(3, ranked.size()); ++r) {
    detail::NelderMeadOptions opts;
    opts.initial_step = 0.2;
    opts.max_evaluations = 400 * static_cast<int>(best_x.size());
    const auto res = detail::nelder_mead(objective, seeds[ranked[r].second], opts);
    report.optimizer.iterations += res.evaluations;
    ++report.optimizer.restarts;
    if (-res.value > best) {
      report.optimizer.achieved_tolerance = -res.value - best;
      best = -res.value;
      best_x = res.x;
    }
  }
  report.C_E = std::max(0.0, best);
  report.optimal_input = DensityMatrix::trusted(decode(best_x));
  return report;
}

CapacityReport private_information(const QuantumChannel& channel, const OptimizerConfig& cfg) {
  require_solver_channel(channel, cfg, "private_information", 4);
  const QuantumChannel ch = canonical_kraus_order(channel);
  const QuantumChannel env = complementary(ch);
  const int d = ch.dim_in();
  detail::Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  CapacityReport report;
  report.channel_label = channel.label();

  auto chi_pair = [&](const std::vector<Vector>& states, const std::vector<double>& w) {
    std::vector<Matrix> bob, eve;
    for (const auto& psi : states) {
      const Matrix in = psi * psi.adjoint();
      bob.push_back(ch.apply_linear(in));
      eve.push_back(env.apply_linear(in));
    }
    return std::pair{holevo_fast(bob, w), holevo_fast(eve, w)};
  };
  const EnsembleRefiner refiner{d,
                                [&](const std::vector<Vector>& states, const std::vector<double>& w) {
                                  const auto [ab, ae] = chi_pair(states, w);
                                  return ab - ae;
                                },
                                &report.optimizer};

  // eigen-ensemble of the best coherent-information input: its private
  // difference equals I_coh, so P1 >= Q1_raw is built in
  std::vector<EnsembleCandidate> seeds;
  const CapacityReport q = quantum_capacity_single_use(ch, cfg);
  report.optimizer.iterations += q.optimizer.iterations;
  {
    EnsembleCandidate eig;
    for (const auto& [value, vec] : spectral_decompose(q.optimal_input->matrix())) {
      eig.states.push_back(vec);
      eig.weights.push_back(std::max(value, 0.0));
    }
    const double total = std::accumulate(eig.weights.begin(), eig.weights.end(), 0.0);
    for (double& w : eig.weights) w /= total;
    seeds.push_back(std::move(eig));
  }
  EnsembleCandidate best = optimize_ensemble(ch, cfg, refiner, std::move(seeds), rng);
  const auto [ab, ae] = chi_pair(best.states, best.weights);
  report.P1 = std::max(0.0, best.value);
  report.chi = ab;
  report.chi_ae = ae;
  report.optimal_ensemble = to_ensemble(best);
  return report;
}

// ---------------------------------------------------------------------------
// Closed forms

double amplitude_damping_quantum_capacity(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorCode::InvalidParameter, "damping must lie in [0, 1]");
  auto f = [gamma](double tau) {
    return binary_entropy((1.0 - gamma) * tau).value - binary_entropy(gamma * tau).value;
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-8) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({0.0, f(0.5 * (lo + hi)), f(1.0)});
}

CapacityReport analytic_capacity(const ChannelKind& kind) {
  CapacityReport r;
  r.channel_label = make_channel(kind.type == ChannelType::custom ? ChannelKind{} : kind).label();
  const double log_d = std::log2(static_cast<double>(kind.dim));
  const double p = kind.p;
  const double q = kind.q;
  switch (kind.type) {
    case ChannelType::erasure:
      r.C_hsw = (1.0 - p) * log_d;
      r.Q1_raw = (1.0 - 2.0 * p) * log_d;
      r.Q1 = std::max(0.0, *r.Q1_raw);
      break;
    case ChannelType::phase_erasure:
      r.C_hsw = log_d;
      r.Q1_raw = (1.0 - q) * log_d;
      r.Q1 = r.Q1_raw;
      break;
    case ChannelType::mixed_erasure:
      r.C_hsw = (1.0 - p) * log_d;
      r.Q1_raw = (1.0 - q - 2.0 * p) * log_d;
      r.Q1 = std::max(0.0, *r.Q1_raw);
      break;
    case ChannelType::depolarizing:
      r.C_hsw = 1.0 - binary_entropy(p / 2.0).value;
      break;
    case ChannelType::amplitude_damping:
      r.Q1 = amplitude_damping_quantum_capacity(kind.damping());
      r.Q1_raw = r.Q1;
      r.notes.emplace_back("classical capacity of amplitude damping is not available in closed form; use hsw_numeric");
      break;
    case ChannelType::bsc:
      r.C_hsw = 1.0 - binary_entropy(p).value;
      break;
    default:
      throw Error(ErrorCode::Unsupported, "no closed form for channel kind " + std::string(to_string(kind.type)));
  }
  if (r.C_hsw) r.chi = r.C_hsw;
  return r;
}

}  // namespace qcap
