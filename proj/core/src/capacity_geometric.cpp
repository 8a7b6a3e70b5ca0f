#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "nelder_mead.hpp"
#include "qcap/capacity.hpp"

namespace qcap {

namespace {

using Vec3 = Eigen::Vector3d;

double div(const Vec3& r, const Vec3& s) { return relative_entropy_bloch_unchecked(r, s); }

Vec3 direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct Farthest {
  Vec3 output;
  double value;
};

// max over the output surface of D(A n + b || s): grid scan, then angle polish
// of the best few grid points.
Farthest farthest_output(const AffineMap& map, const std::vector<Vec3>& grid, const Vec3& s, OptimizerStats& stats) {
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) ranked.emplace_back(-div(map(grid[i]), s), i);
  std::partial_sort(ranked.begin(), ranked.begin() + 3, ranked.end());
  Farthest best{map(grid[ranked.front().second]), -ranked.front().first};
  for (int r = 0; r < 3; ++r) {
    const Vec3& n = grid[ranked[static_cast<std::size_t>(r)].second];
    std::vector<double> x0{std::acos(std::clamp(n.z(), -1.0, 1.0)), std::atan2(n.y(), n.x())};
    detail::NelderMeadOptions opts;
    opts.initial_step = 0.05;
    opts.max_evaluations = 300;
    opts.polish_rounds = 1;
    const auto res = detail::nelder_mead(
        [&](std::span<const double> x) { return -div(map(direction(x[0], x[1])), s); }, x0, opts);
    stats.iterations += res.evaluations;
    if (-res.value > best.value) best = {map(direction(res.x[0], res.x[1])), -res.value};
  }
  return best;
}

// Blahut-Arimoto on a finite set of Bloch outputs; returns the weights that
// make sum_k w_k r_k the centre of the smallest enclosing divergence ball of
// that set.
std::vector<double> enclosing_weights(const std::vector<Vec3>& pts, std::vector<double> w, int max_iter,
                                      int& iterations) {
  std::vector<double> d(pts.size());
  for (int it = 0; it < max_iter; ++it) {
    Vec3 s = Vec3::Zero();
    for (std::size_t k = 0; k < pts.size(); ++k) s += w[k] * pts[k];
    double mean = 0.0, top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      d[k] = div(pts[k], s);
      mean += w[k] * d[k];
      top = std::max(top, d[k]);
    }
    ++iterations;
    if (!std::isfinite(top) || top - mean <= 1e-11) break;
    double z = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      w[k] *= std::exp2(d[k] - top);
      z += w[k];
    }
    for (double& v : w) v /= z;
  }
  return w;
}

// Closest point of conv(pts) to target by Frank-Wolfe with exact line search.
std::vector<double> hull_projection(const std::vector<Vec3>& pts, const Vec3& target) {
  std::vector<double> w(pts.size(), 1.0 / static_cast<double>(pts.size()));
  Vec3 x = Vec3::Zero();
  for (std::size_t k = 0; k < pts.size(); ++k) x += w[k] * pts[k];
  for (int it = 0; it < 20000; ++it) {
    const Vec3 grad = x - target;
    std::size_t best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double g = grad.dot(pts[k]);
      if (g < best_dot) {
        best_dot = g;
        best = k;
      }
    }
    const Vec3 step = pts[best] - x;
    const double denom = step.squaredNorm();
    if (denom < 1e-30) break;
    const double gamma = std::clamp(-grad.dot(step) / denom, 0.0, 1.0);
    if (gamma <= 1e-15) break;
    for (double& v : w) v *= 1.0 - gamma;
    w[best] += gamma;
    x += gamma * step;
  }
  return w;
}

}  // namespace

CapacityReport hsw_geometric(const QuantumChannel& channel, const OptimizerConfig& cfg) {
  cfg.validate();
  if (channel.dim_in() != 2 || channel.dim_out() != 2) {
    throw Error(ErrorCode::Unsupported, "hsw_geometric: qubit channels only");
  }
  require_cptp_kraus(channel, "hsw_geometric");
  const QuantumChannel ch = canonical_kraus_order(channel);
  const AffineMap map = affine_representation(ch);

  CapacityReport report;
  report.channel_label = channel.label();

  const std::vector<Vec3> grid = detail::sphere_points(400);
  std::vector<Vec3> core;
  core.reserve(grid.size() + 64);
  for (const auto& n : grid) core.push_back(map(n));

  // Core-set refinement: centre of the current core set, then add the output
  // farthest from it until no output lies outside the ball.
  std::vector<double> w(core.size(), 1.0 / static_cast<double>(core.size()));
  Vec3 sigma = Vec3::Zero();
  Farthest far{Vec3::Zero(), 0.0};
  double radius = 0.0;
  double best_upper = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int round = 0; round < 60; ++round) {
    w = enclosing_weights(core, std::move(w), 3000, report.optimizer.iterations);
    // keep only the support; later rounds then iterate over a handful of points
    std::vector<Vec3> kept;
    std::vector<double> kept_w;
    const double top_w = *std::max_element(w.begin(), w.end());
    for (std::size_t k = 0; k < core.size(); ++k) {
      if (w[k] >= 1e-9 * top_w) {
        kept.push_back(core[k]);
        kept_w.push_back(w[k]);
      }
    }
    core.swap(kept);
    w.swap(kept_w);
    const double kept_total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= kept_total;
    sigma.setZero();
    for (std::size_t k = 0; k < core.size(); ++k) sigma += w[k] * core[k];
    radius = 0.0;
    for (std::size_t k = 0; k < core.size(); ++k) radius += w[k] * div(core[k], sigma);
    far = farthest_output(map, grid, sigma, report.optimizer);
    ++report.optimizer.restarts;
    if (far.value - radius <= 1e-2 * cfg.tolerance) break;
    // the upper bound has stopped moving: further rounds only shuffle weights
    if (far.value < best_upper - 1e-10) {
      best_upper = far.value;
      stalled = 0;
    } else if (++stalled >= 3) {
      break;
    }
    core.push_back(far.output);
    w.push_back(1e-3);
    double z = 0.0;
    for (double v : w) z += v;
    for (double& v : w) v /= z;
  }
  const double r_star = std::max(far.value, radius);
  report.r_star = std::clamp(r_star, 0.0, 1.0);
  report.optimizer.achieved_tolerance = std::max(0.0, far.value - radius);

  // Certificate: the outputs at divergence r* must have sigma* in their
  // convex hull, and that mixture must have Holevo quantity r*.
  GeometricCertificate cert;
  cert.sigma_star = BlochVector::from(sigma);
  const double equal_tol = std::max(1e-6, 10.0 * cfg.tolerance);
  std::vector<Vec3> maxi;
  for (std::size_t k = 0; k < core.size(); ++k) {
    if (w[k] > 1e-9 && div(core[k], sigma) >= r_star - equal_tol) maxi.push_back(core[k]);
  }
  if (maxi.empty()) maxi.push_back(far.output);
  const std::vector<double> cw = hull_projection(maxi, sigma);
  Vec3 mix = Vec3::Zero();
  for (std::size_t k = 0; k < maxi.size(); ++k) mix += cw[k] * maxi[k];
  double chi = 0.0;
  for (std::size_t k = 0; k < maxi.size(); ++k) chi += cw[k] * div(maxi[k], mix);
  for (std::size_t k = 0; k < maxi.size(); ++k) {
    if (cw[k] > 1e-6) {
      cert.maximizers.push_back(BlochVector::from(maxi[k]));
      cert.weights.push_back(cw[k]);
    }
  }
  cert.hull_distance = (mix - sigma).norm();
  cert.chi_of_maximizers = chi;
  cert.ok = cert.hull_distance <= 1e-3 && std::abs(chi - r_star) <= 1e-3;
  if (is_unital(ch)) {
    cert.centred = sigma.norm() <= 1e-3;
    cert.ok = cert.ok && *cert.centred;
  }
  report.certificate = cert;
  if (!cert.ok) report.notes.emplace_back("min-max certificate not met within tolerance");
  return report;
}

}  // namespace qcap
