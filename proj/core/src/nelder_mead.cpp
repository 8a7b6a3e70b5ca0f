#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace qcap::detail {

namespace {

double finite_or_inf(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

// One adaptive Nelder-Mead descent (dimension-dependent coefficients).
NelderMeadResult descend(const Objective& f, const std::vector<double>& x0, const NelderMeadOptions& opts,
                         int budget) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return finite_or_inf(f(x));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double step = x0[i] != 0.0 ? opts.initial_step * std::max(1.0, std::abs(x0[i])) : opts.initial_step;
    simplex[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
    }
    if (std::abs(values[worst] - values[best]) <= opts.f_tolerance && diameter <= std::sqrt(opts.x_tolerance)) break;
    if (diameter <= opts.x_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / dn;
    }
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + alpha * (centroid[k] - simplex[worst][k]);
    const double f_reflect = eval(trial);

    if (f_reflect < values[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < values[second]) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    const bool outside = f_reflect < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      trial2[k] = outside ? centroid[k] + gamma * (trial[k] - centroid[k])
                          : centroid[k] - gamma * (centroid[k] - simplex[worst][k]);
    }
    const double f_contract = eval(trial2);
    if (f_contract < std::min(f_reflect, values[worst])) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) simplex[i][k] = simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(it - values.begin());
  return {simplex[idx], values[idx], evals};
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts) {
  if (x0.empty()) return {x0, finite_or_inf(f(x0)), 1};
  NelderMeadResult result = descend(f, x0, opts, opts.max_evaluations);
  NelderMeadOptions polish = opts;
  for (int round = 0; round < opts.polish_rounds; ++round) {
    polish.initial_step *= 0.1;
    const int remaining = std::max(200, opts.max_evaluations / 4);
    NelderMeadResult next = descend(f, result.x, polish, remaining);
    next.evaluations += result.evaluations;
    if (next.value <= result.value) {
      result = std::move(next);
    } else {
      result.evaluations = next.evaluations;
    }
  }
  return result;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector amplitudes_from_params(std::span<const double> x, int dim) {
  Vector psi(dim);
  for (int k = 0; k < dim; ++k) psi(k) = Complex(x[2 * static_cast<std::size_t>(k)], x[2 * static_cast<std::size_t>(k) + 1]);
  const double n = psi.norm();
  if (n < 1e-300) {
    psi.setZero();
    psi(0) = 1.0;
    return psi;
  }
  return psi / n;
}

void params_from_amplitudes(const Vector& psi, std::span<double> out) {
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    out[2 * static_cast<std::size_t>(k)] = psi(k).real();
    out[2 * static_cast<std::size_t>(k) + 1] = psi(k).imag();
  }
}

Vector random_pure(int dim, Rng& rng) {
  Vector psi(dim);
  for (int k = 0; k < dim; ++k) psi(k) = Complex(rng.normal(), rng.normal());
  return psi / psi.norm();
}

std::vector<double> weights_from_logits(std::span<const double> logits) {
  std::vector<double> w(logits.size());
  if (logits.empty()) return w;
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    w[i] = std::exp(std::clamp(logits[i] - top, -700.0, 0.0));
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

Eigen::Vector3d ball_from_params(std::span<const double> u) {
  const Eigen::Vector3d v(u[0], u[1], u[2]);
  const double n = v.norm();
  if (n < 1e-300) return Eigen::Vector3d::Zero();
  return v * (std::tanh(n) / n);
}

void params_from_ball(const Eigen::Vector3d& m, std::span<double> out) {
  const double n = std::min(m.norm(), 1.0 - 1e-12);
  if (n < 1e-300) {
    out[0] = out[1] = out[2] = 0.0;
    return;
  }
  const Eigen::Vector3d u = m.normalized() * std::atanh(n);
  out[0] = u.x();
  out[1] = u.y();
  out[2] = u.z();
}

Matrix mixed_from_params(std::span<const double> x, int dim) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const auto k = 2 * static_cast<std::size_t>(i * dim + j);
      m(i, j) = Complex(x[k], x[k + 1]);
    }
  }
  Matrix rho = m * m.adjoint();
  const double tr = rho.trace().real();
  if (tr < 1e-300) return identity(dim) / static_cast<double>(dim);
  return rho / tr;
}

std::vector<Eigen::Vector3d> sphere_points(int count) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(static_cast<std::size_t>(count));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

Vector qubit_from_direction(const Eigen::Vector3d& n) {
  const Eigen::Vector3d u = n.norm() > 0 ? n.normalized() : Eigen::Vector3d(0, 0, 1);
  const double theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  const double phi = std::atan2(u.y(), u.x());
  Vector psi(2);
  psi(0) = std::cos(theta / 2.0);
  psi(1) = std::polar(std::sin(theta / 2.0), phi);
  return psi;
}

}  // namespace qcap::detail
