#pragma once

#include <cstdint>

namespace qcap {

struct OptimizerConfig {
  int max_inputs = 4;        // pure states per ensemble
  int restarts = 32;         // seeded multi-start count
  double tolerance = 1e-6;   // bits
  std::uint64_t seed = 0;

  // Throws InvalidConfig when max_inputs < 2, restarts < 1 or tolerance <= 0.
  void validate() const;
};

struct OptimizerStats {
  int iterations = 0;  // objective evaluations across all restarts
  int restarts = 0;
  double achieved_tolerance = 0.0;
};

}  // namespace qcap
