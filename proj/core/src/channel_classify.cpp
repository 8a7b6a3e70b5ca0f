#include <algorithm>
#include <cmath>
#include <limits>

#include "nelder_mead.hpp"
#include "qcap/channels.hpp"

namespace qcap {

void OptimizerConfig::validate() const {
  if (max_inputs < 2) throw Error(ErrorCode::InvalidConfig, "max_inputs must be at least 2");
  if (restarts < 1) throw Error(ErrorCode::InvalidConfig, "restarts must be at least 1");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");
}

MinOutputEntropy min_output_entropy(const QuantumChannel& channel, const OptimizerConfig& cfg) {
  cfg.validate();
  require_cptp_kraus(channel, "min_output_entropy");
  const QuantumChannel ch = canonical_kraus_order(channel);
  const int d = ch.dim_in();

  auto entropy_of = [&](const Vector& psi) { return von_neumann_of(ch.apply_linear(psi * psi.adjoint())); };
  const detail::Objective objective = [&](std::span<const double> x) {
    return entropy_of(detail::amplitudes_from_params(x, d));
  };

  // seeds: a sphere grid for qubits, basis states plus Haar samples otherwise
  std::vector<Vector> seeds;
  if (d == 2) {
    for (const auto& n : detail::sphere_points(200)) seeds.push_back(detail::qubit_from_direction(n));
  } else {
    for (int k = 0; k < d; ++k) seeds.push_back(PureState::basis(d, k).amplitudes());
  }
  detail::Rng rng(cfg.seed);
  for (int r = 0; r < cfg.restarts; ++r) seeds.push_back(detail::random_pure(d, rng));

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < seeds.size(); ++i) ranked.emplace_back(entropy_of(seeds[i]), i);
  std::stable_sort(ranked.begin(), ranked.end());
  const std::size_t polish = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(std::max(4, cfg.restarts / 4)));

  OptimizerStats stats;
  stats.iterations = static_cast<int>(seeds.size());
  double best = std::numeric_limits<double>::infinity();
  Vector best_psi = seeds[ranked.front().second];
  for (std::size_t i = 0; i < polish; ++i) {
    std::vector<double> x0(2 * static_cast<std::size_t>(d));
    detail::params_from_amplitudes(seeds[ranked[i].second], x0);
    detail::NelderMeadOptions opts;
    opts.initial_step = 0.1;
    opts.max_evaluations = 600 * d;
    const auto res = detail::nelder_mead(objective, x0, opts);
    stats.iterations += res.evaluations;
    ++stats.restarts;
    if (res.value < best) {
      stats.achieved_tolerance = best - res.value;
      best = res.value;
      best_psi = detail::amplitudes_from_params(res.x, d);
    }
  }
  if (!std::isfinite(stats.achieved_tolerance)) stats.achieved_tolerance = 0.0;
  return {{std::max(0.0, best), EntropyKind::von_neumann}, PureState(best_psi, Validation::repair), stats};
}

namespace {

Matrix choi_from_superoperator(const Matrix& s, int dim_in, int dim_out) {
  Matrix c = Matrix::Zero(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      const Vector col = s.col(i + j * dim_in);
      c.block(i * dim_out, j * dim_out, dim_out, dim_out) = Eigen::Map<const Matrix>(col.data(), dim_out, dim_out);
    }
  }
  c /= static_cast<double>(dim_in);
  return (c + c.adjoint()) * 0.5;
}

std::optional<QuantumChannel> channel_from_choi(const Matrix& c, int dim_in, int dim_out, const std::string& label) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(c);
  std::vector<Matrix> ops;
  for (Eigen::Index m = 0; m < c.rows(); ++m) {
    const double lambda = solver.eigenvalues()(m);
    if (lambda <= 1e-12) continue;
    Matrix k(dim_out, dim_in);
    for (int i = 0; i < dim_in; ++i)
      for (int e = 0; e < dim_out; ++e) k(e, i) = std::sqrt(dim_in * lambda) * solver.eigenvectors()(i * dim_out + e, m);
    ops.push_back(std::move(k));
  }
  if (ops.empty()) return std::nullopt;
  return QuantumChannel(dim_in, dim_out, std::move(ops), label);
}

}  // namespace

DegradabilityResult is_degradable(const QuantumChannel& channel) {
  require_cptp_kraus(channel, "is_degradable");
  const QuantumChannel env = complementary(channel);
  const Matrix s1 = superoperator(channel);
  const Matrix s2 = superoperator(env);
  const int dout = channel.dim_out();
  const int denv = env.dim_out();

  DegradabilityResult result;
  if (dout < channel.dim_in()) return result;  // N1 cannot be injective

  Eigen::JacobiSVD<Matrix> svd(s1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  result.condition_number = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(result.condition_number <= 1e12)) return result;

  // D S1 = S2. Square S1: D is unique. Tall S1: D is fixed only on the range
  // of N1; the pseudo-inverse gives the minimum-norm extension.
  const bool unique = s1.rows() == s1.cols();
  const Matrix s1_pinv = svd.matrixV() * sv.cwiseInverse().cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
  const Matrix sd = s2 * s1_pinv;

  const Matrix c = choi_from_superoperator(sd, dout, denv);
  result.choi_min_eigenvalue = eigenvalues(c).back();
  const Matrix marginal = partial_trace(c, dout, denv, Subsystem::A) * static_cast<double>(dout);
  const bool tp = (marginal - identity(dout)).cwiseAbs().maxCoeff() <= 1e-7;
  const bool cp = result.choi_min_eigenvalue >= -1e-7;
  if (tp && cp) {
    result.verdict = Verdict::yes;
    result.degrading_map = channel_from_choi(c, dout, denv, "degrading(" + channel.label() + ")");
  } else {
    result.verdict = unique ? Verdict::no : Verdict::undetermined;
  }
  return result;
}

bool is_entanglement_breaking(const QuantumChannel& channel) {
  const int din = channel.dim_in();
  const int dout = channel.dim_out();
  if (din < 2 || dout < 2 || din * dout > 6) {
    throw Error(ErrorCode::Unsupported, "PPT test decides entanglement breaking only for 2x2 and 2x3 Choi states");
  }
  const ChoiMatrix c = choi(channel);
  const Matrix pt = partial_transpose(c.matrix, din, dout);
  return eigenvalues((pt + pt.adjoint()) * 0.5).back() >= -tol::completeness;
}

}  // namespace qcap
