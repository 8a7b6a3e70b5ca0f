#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Entanglement distribution arithmetic and purification scheduling.
namespace qcap {

struct PairState {
  double fidelity = 1.0;
  int level = 0;  // purification level (symmetric policy) or swap level
  int age = 0;    // rounds spent waiting
};

struct RepeaterConfig {
  double total_length = 20000.0;  // meters
  int segments = 1;               // power of two
  double P0 = 1.0;                // per-attempt link success probability
  double eta = 0.0;               // photon loss fraction
  double F0 = 0.9;                // raw pair fidelity
  double c = 2e8;                 // signal speed in fiber, m/s

  double segment_length() const { return total_length / segments; }
  int levels() const;  // log2(segments)
  // Throws InvalidConfig.
  void validate() const;
};

struct RateReport {
  int levels = 0;
  double T0 = 0.0;          // seconds
  double Z_n = 0.0;         // expected rounds until all segments hold a pair
  double R_n = 0.0;         // pairs per second
  double R_n_approx = 0.0;  // (P0 / T0) (2/3)^n
};

struct PurifyOutcome {
  double success_probability;
  double fidelity;
};

struct SwapLevelStats {
  long long spanned = 0;
  long long freed = 0;
  long long shared_pairs = 0;
};

// 1 - (2F - 1)^(eta / (1 - eta)), clamped to [0, 1].
double link_success_probability(double F, double eta);
PurifyOutcome purify_pair(double F1, double F2);
double swap_pair(double F);
SwapLevelStats swap_level_stats(int n, int i);
double expected_rounds(int n, double P0);
RateReport generation_rate(const RepeaterConfig& cfg);
// Mean over `trials` of the maximum of 2^n independent geometric variables.
double monte_carlo_rounds(int n, double P0, int trials, std::uint64_t seed);

enum class Policy { symmetric, pumping, greedy, banded };
std::string_view to_string(Policy p) noexcept;
std::optional<Policy> parse_policy(std::string_view name) noexcept;

enum class EventAction { generate, purify, discard };
std::string_view to_string(EventAction a) noexcept;

struct ScheduleEvent {
  int round = 0;
  EventAction action = EventAction::generate;
  std::vector<double> inputs;  // fidelities consumed
  bool success = true;
  std::optional<double> output;  // fidelity produced
};

enum class ScheduleOutcome { reached, exhausted, round_cap };
std::string_view to_string(ScheduleOutcome o) noexcept;

struct ScheduleOptions {
  bool forced_success = false;     // every generation and purification succeeds
  int max_rounds = 100000;
  long long raw_pair_budget = 1 << 20;
  std::optional<int> max_level;    // symmetric: stop once a pair reaches this level
  int bands = 8;                   // banded policy
  int band_wait_cap = 64;          // banded: rounds a lone pair may wait before it is discarded
};

struct ScheduleTrace {
  Policy policy = Policy::symmetric;
  std::vector<ScheduleEvent> events;
  long long raw_pairs_consumed = 0;
  double final_fidelity = 0.0;
  ScheduleOutcome outcome = ScheduleOutcome::reached;
  int rounds = 0;
  std::uint64_t seed = 0;
};

ScheduleTrace simulate_schedule(Policy policy, double target_fidelity, const RepeaterConfig& cfg,
                                std::uint64_t seed, const ScheduleOptions& opts = {});

}  // namespace qcap
