#include "qcap/repeater.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "nelder_mead.hpp"
#include "qcap/error.hpp"

namespace qcap {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

int RepeaterConfig::levels() const {
  int n = 0;
  while ((1 << n) < segments) ++n;
  return n;
}

void RepeaterConfig::validate() const {
  if (segments < 1 || (segments & (segments - 1)) != 0) {
    throw Error(ErrorCode::InvalidConfig, "segments must be a power of two");
  }
  if (!(total_length > 0.0)) throw Error(ErrorCode::InvalidConfig, "distance must be positive");
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidConfig, "signal speed must be positive");
  if (!in_unit(P0) || !in_unit(eta) || !in_unit(F0)) {
    throw Error(ErrorCode::InvalidConfig, "P0, eta and F0 must lie in [0, 1]");
  }
}

double link_success_probability(double F, double eta) {
  if (!(F >= 0.5 && F <= 1.0)) throw Error(ErrorCode::InvalidParameter, "link fidelity must lie in [0.5, 1]");
  if (eta == 1.0) throw Error(ErrorCode::DegenerateLoss, "loss fraction 1 leaves the exponent undefined");
  if (!(eta >= 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidParameter, "loss fraction must lie in [0, 1)");
  return std::clamp(1.0 - std::pow(2.0 * F - 1.0, eta / (1.0 - eta)), 0.0, 1.0);
}

PurifyOutcome purify_pair(double F1, double F2) {
  if (!in_unit(F1) || !in_unit(F2)) throw Error(ErrorCode::InvalidParameter, "fidelities must lie in [0, 1]");
  const double p = F1 * F2 + (1.0 - F1) * (1.0 - F2);
  if (p <= 0.0) throw Error(ErrorCode::DegeneratePair, "purification succeeds with probability 0");
  return {p, F1 * F2 / p};
}

double swap_pair(double F) {
  if (!in_unit(F)) throw Error(ErrorCode::InvalidParameter, "fidelity must lie in [0, 1]");
  return F * F + (1.0 - F) * (1.0 - F);
}

SwapLevelStats swap_level_stats(int n, int i) {
  if (n < 0 || n > 40) throw Error(ErrorCode::InvalidLevel, "swap level count out of range");
  if (i < 0 || i > n) throw Error(ErrorCode::InvalidLevel, "level must lie in [0, n]");
  SwapLevelStats s;
  s.spanned = 1LL << i;
  s.shared_pairs = 1LL << (n - i);
  s.freed = ((1LL << i) - 1) * 2;
  return s;
}

double expected_rounds(int n, double P0) {
  if (!(P0 >= 0.0 && P0 <= 1.0)) throw Error(ErrorCode::InvalidProbability, "P0 must lie in [0, 1]");
  if (P0 == 0.0) throw Error(ErrorCode::Divergent, "P0 = 0: links never succeed");
  if (n < 0) throw Error(ErrorCode::InvalidLevel, "level count must be non-negative");
  if (n > 8) throw Error(ErrorCode::TooLarge, "expected_rounds supports at most 256 segments");
  const int N = 1 << n;

  // Inclusion-exclusion sum; consecutive terms of opposite sign are added in
  // pairs before accumulation.
  if (N <= 16) {
    const double log_q = std::log1p(-P0);
    auto term = [&](int i) {
      const double denom = -std::expm1(i * log_q);
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      return sign * boost::math::binomial_coefficient<double>(static_cast<unsigned>(N), static_cast<unsigned>(i)) / denom;
    };
    double sum = 0.0;
    for (int i = 1; i <= N; i += 2) sum += i + 1 <= N ? term(i) + term(i + 1) : term(i);
    return sum;
  }
  using Big = boost::multiprecision::cpp_bin_float_100;
  const Big q = Big(1) - Big(P0);
  Big sum = 0;
  Big binom = 1;
  Big q_pow = 1;
  for (int i = 1; i <= N; ++i) {
    binom = binom * (N - i + 1) / i;
    q_pow *= q;
    const Big t = binom / (Big(1) - q_pow);
    if (i % 2 == 1) {
      sum += t;
    } else {
      sum -= t;
    }
  }
  return static_cast<double>(sum);
}

RateReport generation_rate(const RepeaterConfig& cfg) {
  cfg.validate();
  RateReport r;
  r.levels = cfg.levels();
  r.T0 = 2.0 * cfg.segment_length() / cfg.c;
  r.Z_n = expected_rounds(r.levels, cfg.P0);
  r.R_n = 1.0 / (r.T0 * r.Z_n);
  r.R_n_approx = cfg.P0 / r.T0 * std::pow(2.0 / 3.0, r.levels);
  return r;
}

double monte_carlo_rounds(int n, double P0, int trials, std::uint64_t seed) {
  if (!(P0 > 0.0 && P0 <= 1.0)) throw Error(ErrorCode::InvalidProbability, "P0 must lie in (0, 1]");
  if (trials < 1) throw Error(ErrorCode::InvalidParameter, "trials must be positive");
  if (n < 0 || n > 20) throw Error(ErrorCode::InvalidLevel, "level count out of range");
  detail::Rng rng(seed);
  const int N = 1 << n;
  const double log_q = std::log1p(-P0);
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    double worst = 1.0;
    if (P0 < 1.0) {
      for (int k = 0; k < N; ++k) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        worst = std::max(worst, std::ceil(std::log(u) / log_q));
      }
    }
    total += worst;
  }
  return total / trials;
}

std::string_view to_string(Policy p) noexcept {
  switch (p) {
    case Policy::symmetric: return "symmetric";
    case Policy::pumping: return "pumping";
    case Policy::greedy: return "greedy";
    case Policy::banded: return "banded";
  }
  return "?";
}

std::optional<Policy> parse_policy(std::string_view name) noexcept {
  for (Policy p : {Policy::symmetric, Policy::pumping, Policy::greedy, Policy::banded}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(EventAction a) noexcept {
  switch (a) {
    case EventAction::generate: return "generate";
    case EventAction::purify: return "purify";
    case EventAction::discard: return "discard";
  }
  return "?";
}

std::string_view to_string(ScheduleOutcome o) noexcept {
  switch (o) {
    case ScheduleOutcome::reached: return "reached";
    case ScheduleOutcome::exhausted: return "exhausted";
    case ScheduleOutcome::round_cap: return "round_cap";
  }
  return "?";
}

namespace {

class Scheduler {
public:
  Scheduler(Policy policy, double target, const RepeaterConfig& cfg, std::uint64_t seed, const ScheduleOptions& opts)
      : target_(target), cfg_(cfg), opts_(opts), rng_(seed) {
    trace_.policy = policy;
    trace_.seed = seed;
  }

  ScheduleTrace run() {
    for (round_ = 1; round_ <= opts_.max_rounds; ++round_) {
      trace_.rounds = round_;
      if (trace_.raw_pairs_consumed >= opts_.raw_pair_budget) return finish(ScheduleOutcome::exhausted);
      generate();
      switch (trace_.policy) {
        case Policy::symmetric: step_symmetric(); break;
        case Policy::pumping: step_pumping(); break;
        case Policy::greedy: step_greedy(); break;
        case Policy::banded: step_banded(); break;
      }
      if (stalled_) return finish(ScheduleOutcome::exhausted);
      if (reached()) return finish(ScheduleOutcome::reached);
      for (auto& pair : live_) ++pair.age;
    }
    trace_.rounds = opts_.max_rounds;
    return finish(ScheduleOutcome::round_cap);
  }

private:
  bool coin(double p) { return opts_.forced_success || rng_.uniform() < p; }

  void generate() {
    if (!coin(cfg_.P0)) return;
    live_.push_back({cfg_.F0, 0, 0});
    ++trace_.raw_pairs_consumed;
    trace_.events.push_back({round_, EventAction::generate, {}, true, cfg_.F0});
  }

  // Purifies live_[a] and live_[b] (removed either way). Returns the index of
  // the output pair on success.
  std::optional<std::size_t> purify(std::size_t a, std::size_t b) {
    const PairState x = live_[a];
    const PairState y = live_[b];
    live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(std::max(a, b)));
    live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(std::min(a, b)));
    const PurifyOutcome out = purify_pair(x.fidelity, y.fidelity);
    const bool ok = coin(out.success_probability);
    ScheduleEvent ev{round_, EventAction::purify, {x.fidelity, y.fidelity}, ok, std::nullopt};
    if (ok) ev.output = out.fidelity;
    trace_.events.push_back(std::move(ev));
    if (!ok) return std::nullopt;
    if (out.fidelity <= std::max(x.fidelity, y.fidelity)) stalled_ = true;
    live_.push_back({out.fidelity, std::max(x.level, y.level) + 1, 0});
    return live_.size() - 1;
  }

  void discard(std::size_t i) {
    trace_.events.push_back({round_, EventAction::discard, {live_[i].fidelity}, true, std::nullopt});
    live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  bool reached() const {
    for (const auto& p : live_) {
      if (trace_.policy == Policy::symmetric && opts_.max_level && p.level >= *opts_.max_level) return true;
      if (p.fidelity >= target_) return true;
    }
    return false;
  }

  // Equal-level pairs only, lowest level first, oldest pairs first.
  void step_symmetric() {
    for (bool again = true; again && !stalled_;) {
      again = false;
      std::map<int, std::vector<std::size_t>> by_level;
      for (std::size_t i = 0; i < live_.size(); ++i) by_level[live_[i].level].push_back(i);
      for (const auto& [level, idx] : by_level) {
        if (idx.size() >= 2) {
          purify(idx[0], idx[1]);
          again = true;
          break;
        }
      }
    }
  }

  std::size_t best_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < live_.size(); ++i) {
      if (live_[i].fidelity > live_[best].fidelity) best = i;
    }
    return best;
  }

  // One held pair, pumped with each fresh raw pair.
  void step_pumping() {
    while (live_.size() >= 2 && !stalled_) {
      const std::size_t held = best_index();
      std::size_t raw = live_.size();
      for (std::size_t i = 0; i < live_.size(); ++i) {
        if (i != held && live_[i].level == 0) {
          raw = i;
          break;
        }
      }
      if (raw == live_.size()) break;
      purify(held, raw);
    }
  }

  // The two highest-fidelity live pairs, once per round.
  void step_greedy() {
    if (live_.size() < 2) return;
    std::vector<std::size_t> order(live_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return live_[a].fidelity > live_[b].fidelity; });
    purify(order[0], order[1]);
  }

  int band_of(double F) const {
    const double width = (1.0 - cfg_.F0) / opts_.bands;
    if (!(width > 0.0)) return 0;
    return std::clamp(static_cast<int>(std::floor((F - cfg_.F0) / width)), 0, opts_.bands - 1);
  }

  // Within-band pairing, highest band and highest fidelities first. Lone
  // pairs that wait too long are dropped so the pool cannot deadlock.
  void step_banded() {
    for (int band = opts_.bands - 1; band >= 0 && !stalled_; --band) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < live_.size(); ++i) {
        if (band_of(live_[i].fidelity) == band) members.push_back(i);
      }
      if (members.size() >= 2) {
        std::stable_sort(members.begin(), members.end(),
                         [&](std::size_t a, std::size_t b) { return live_[a].fidelity > live_[b].fidelity; });
        purify(members[0], members[1]);
      }
    }
    for (std::size_t i = live_.size(); i-- > 0;) {
      if (live_[i].age > opts_.band_wait_cap) discard(i);
    }
  }

  ScheduleTrace finish(ScheduleOutcome outcome) {
    trace_.outcome = outcome;
    trace_.final_fidelity = live_.empty() ? 0.0 : live_[best_index()].fidelity;
    return std::move(trace_);
  }

  double target_;
  RepeaterConfig cfg_;
  ScheduleOptions opts_;
  detail::Rng rng_;
  ScheduleTrace trace_;
  std::vector<PairState> live_;
  int round_ = 0;
  bool stalled_ = false;
};

}  // namespace

ScheduleTrace simulate_schedule(Policy policy, double target_fidelity, const RepeaterConfig& cfg, std::uint64_t seed,
                                const ScheduleOptions& opts) {
  cfg.validate();
  if (!(target_fidelity > cfg.F0 && target_fidelity <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "target fidelity must lie in (F0, 1]");
  }
  if (opts.max_rounds < 1 || opts.bands < 1 || opts.band_wait_cap < 1 || opts.raw_pair_budget < 1) {
    throw Error(ErrorCode::InvalidConfig, "schedule options must be positive");
  }
  if (opts.max_level && *opts.max_level < 1) throw Error(ErrorCode::InvalidLevel, "max_level must be at least 1");
  return Scheduler(policy, target_fidelity, cfg, seed, opts).run();
}

}  // namespace qcap
