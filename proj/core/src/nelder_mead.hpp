#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "qcap/qmath.hpp"

namespace qcap::detail {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double initial_step = 0.3;
  double f_tolerance = 1e-13;  // spread of simplex values
  double x_tolerance = 1e-11;  // simplex diameter
  int polish_rounds = 2;       // restarts from the incumbent with a fresh simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

// Minimizes f. Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts = {});

// Deterministic random source shared by the solvers.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Real parameters -> normalized amplitudes (2 reals per component).
Vector amplitudes_from_params(std::span<const double> x, int dim);
void params_from_amplitudes(const Vector& psi, std::span<double> out);
// Haar-random pure state.
Vector random_pure(int dim, Rng& rng);

// Softmax over logits.
std::vector<double> weights_from_logits(std::span<const double> logits);

// R^3 -> closed unit ball, u -> tanh(|u|) u / |u|.
Eigen::Vector3d ball_from_params(std::span<const double> u);
void params_from_ball(const Eigen::Vector3d& m, std::span<double> out);

// R^(2 d^2) -> M M^dag / Tr(M M^dag).
Matrix mixed_from_params(std::span<const double> x, int dim);

// Roughly uniform points on the unit sphere (Fibonacci lattice).
std::vector<Eigen::Vector3d> sphere_points(int count);
// Pure qubit state with the given Bloch direction.
Vector qubit_from_direction(const Eigen::Vector3d& n);

}  // namespace qcap::detail
