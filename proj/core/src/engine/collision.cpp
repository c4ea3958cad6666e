#include "bcfw/engine/collision.hpp"

#include <algorithm>
#include <cmath>

#include "bcfw/errors.hpp"

namespace bcfw::engine {

double collision_expected_calls(int n, int tau) {
  if (tau < 1 || tau > n) throw InvalidConfigError("collision_expected_calls: tau outside [1, n]");
  double e = tau;
  for (int i = 1; i <= tau - 1; ++i) e += static_cast<double>(i) / (n - i);
  return e;
}

CollisionStats collision_simulate(int n, int tau, int trials, rng::Engine& eng) {
  if (tau < 1 || tau > n) throw InvalidConfigError("collision_simulate: tau outside [1, n]");
  if (trials < 1) throw ContractViolation("collision_simulate: trials must be >= 1");
  std::vector<double> draws(trials);
  std::vector<std::int64_t> mark(n, -1);
  long long within = 0;
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    int distinct = 0;
    long long count = 0;
    while (distinct < tau) {
      const int b = rng::uniform_int(eng, n);
      ++count;
      if (mark[b] != t) {
        mark[b] = t;
        ++distinct;
      }
    }
    draws[t] = static_cast<double>(count);
    sum += draws[t];
    sumsq += draws[t] * draws[t];
    if (count <= 2LL * tau) ++within;
  }
  CollisionStats s;
  s.trials = trials;
  s.mean = sum / trials;
  const double var = std::max(0.0, sumsq / trials - s.mean * s.mean);
  s.stddev = std::sqrt(var);
  s.stderr_ = s.stddev / std::sqrt(static_cast<double>(trials));
  std::sort(draws.begin(), draws.end());
  auto quantile = [&](double q) { return draws[static_cast<std::size_t>(q * (trials - 1))]; };
  s.q50 = quantile(0.50);
  s.q90 = quantile(0.90);
  s.q99 = quantile(0.99);
  s.p_within_2tau = static_cast<double>(within) / trials;
  return s;
}

MaxLoadStats max_load_simulate(std::int64_t balls, std::int64_t bins, int trials,
                               rng::Engine& eng) {
  if (balls < 1 || bins < 1) throw ContractViolation("max_load_simulate: need balls, bins >= 1");
  MaxLoadStats s;
  s.trials = trials;
  std::vector<std::int64_t> load(bins);
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::fill(load.begin(), load.end(), 0);
    for (std::int64_t b = 0; b < balls; ++b)
      ++load[rng::uniform_int(eng, static_cast<int>(bins))];
    const double mx = static_cast<double>(*std::max_element(load.begin(), load.end()));
    sum += mx;
    sumsq += mx * mx;
  }
  s.mean = sum / trials;
  const double var = std::max(0.0, sumsq / trials - s.mean * s.mean);
  s.stderr_ = std::sqrt(var / trials);

  const double m = static_cast<double>(balls), n = static_cast<double>(bins);
  const double logn = std::log(n);
  if (n >= 3 && m < n / logn) {
    s.reference_bound = 3.0 * logn / std::log(n / m);
  } else if (m <= n * logn || n < 3) {
    s.reference_bound = std::max(1.0, 3.0 * logn);
  } else {
    s.reference_bound = m / n + 3.0 * std::sqrt(2.0 * m / n * logn);
  }
  return s;
}

}  // namespace bcfw::engine
