#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "bcfw/errors.hpp"

// Seedable randomness with hand-rolled samplers so that traces are
// bit-reproducible across platforms and standard-library versions.

namespace bcfw::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive an independent stream seed from (seed, tag, idx).
inline std::uint64_t sub_seed(std::uint64_t seed, std::string_view tag, std::uint64_t idx = 0) {
  std::uint64_t s = seed;
  for (char c : tag) {
    s ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    (void)splitmix64(s);
  }
  s ^= 0x51c64ab1u + (idx << 1);
  (void)splitmix64(s);
  return splitmix64(s);
}

inline Engine make_engine(std::uint64_t seed, std::string_view tag, std::uint64_t idx = 0) {
  return Engine(sub_seed(seed, tag, idx));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n), rejection sampled (no modulo bias).
inline int uniform_int(Engine& eng, int n) {
  if (n <= 0) throw ContractViolation("uniform_int: n must be positive");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

inline double normal(Engine& eng) {
  // Box-Muller; spends two uniforms per draw, which keeps streams simple.
  double u1 = uniform(eng);
  while (u1 <= 0.0) u1 = uniform(eng);
  const double u2 = uniform(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Eigen::VectorXd gaussian_vector(Engine& eng, int d) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(eng);
  return v;
}

// Poisson via Knuth's product method, chunked so large means do not
// underflow exp(-mean).
inline long long poisson(Engine& eng, double mean) {
  if (mean < 0.0) throw ContractViolation("poisson: mean must be >= 0");
  long long total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = remaining > 500.0 ? 500.0 : remaining;
    remaining -= chunk;
    const double l = std::exp(-chunk);
    long long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform(eng);
    } while (p > l);
    total += k - 1;
  }
  return total;
}

// Pareto with shape alpha and scale xm via inverse CDF.
inline double pareto(Engine& eng, double alpha, double xm) {
  if (alpha <= 0.0 || xm <= 0.0) throw ContractViolation("pareto: alpha and xm must be positive");
  double u = uniform(eng);
  while (u <= 0.0) u = uniform(eng);
  return xm / std::pow(u, 1.0 / alpha);
}

// Number of Bernoulli(p) attempts up to and including the first success.
inline long long geometric_attempts(Engine& eng, double p) {
  if (p <= 0.0 || p > 1.0) throw ContractViolation("geometric_attempts: p must lie in (0, 1]");
  if (p == 1.0) return 1;
  double u = uniform(eng);
  while (u <= 0.0) u = uniform(eng);
  return 1 + static_cast<long long>(std::floor(std::log(u) / std::log1p(-p)));
}

}  // namespace bcfw::rng
