#pragma once

#include <cstdint>
#include <vector>

#include "bcfw/rng.hpp"

namespace bcfw::engine {

// Expected number of uniform block draws needed to see tau distinct blocks
// among n: tau + sum_{i=1}^{tau-1} i/(n-i) (coupon collector).
double collision_expected_calls(int n, int tau);

struct CollisionStats {
  double mean = 0.0;
  double stddev = 0.0;    // of a single trial
  double stderr_ = 0.0;   // of the mean
  double q50 = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
  double p_within_2tau = 0.0;  // fraction of trials finishing within 2*tau draws
  int trials = 0;
};

CollisionStats collision_simulate(int n, int tau, int trials, rng::Engine& eng);

struct MaxLoadStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  // Regime reference bounds (reported, asserted loosely by callers):
  // 3 log n / log(n/m) when m < n/log n; 3 log n in the middle regime;
  // m/n + 3 sqrt(2 m/n log n) when m >> n log n.
  double reference_bound = 0.0;
  int trials = 0;
};

MaxLoadStats max_load_simulate(std::int64_t balls, std::int64_t bins, int trials,
                               rng::Engine& eng);

}  // namespace bcfw::engine
