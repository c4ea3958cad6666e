#pragma once

#include <cstdint>

#include "bcfw/engine/config.hpp"
#include "bcfw/rng.hpp"

namespace bcfw::engine {

// Draw one staleness value (in server iterations): Poisson(kappa), or
// Pareto(alpha=2, x_m=kappa/2) rounded to the nearest integer so that the
// mean is kappa with infinite variance. kappa = 0 degenerates to 0.
std::int64_t delay_sample(const DelayModel& model, rng::Engine& eng);

// The Theorem-4 drop predicate: an update with this delay arriving at
// iteration k is discarded when delay > k/2.
inline bool drop_rule_applies(std::int64_t delay, std::int64_t k) {
  return static_cast<double>(delay) > static_cast<double>(k) / 2.0;
}

// The rule is only enforced once k >= ceil(4*kappa): enforcing it from
// k = 0 would discard every update a heavy-delay model can produce
// (Pareto's minimum delay is kappa/2) and the run could never start.
std::int64_t drop_rule_warmup(const DelayModel& model);

}  // namespace bcfw::engine
