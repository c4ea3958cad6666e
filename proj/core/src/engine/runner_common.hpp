#pragma once

#include <chrono>
#include <cmath>
#include <optional>

#include "bcfw/engine/config.hpp"
#include "bcfw/engine/driver.hpp"
#include "bcfw/engine/trace.hpp"

namespace bcfw::engine::internal {

// Row emission, gap cadences and stop-rule evaluation shared by the
// solver drivers. Rows appear on the trace_every cadence and whenever a
// stop fires; the full gap is evaluated on its own cadence and the most
// recent value feeds the gap-eps stop.
class Telemetry {
 public:
  Telemetry(IterateDriver& driver, const SolverConfig& cfg, int n)
      : driver_(driver),
        cfg_(cfg),
        n_(n),
        full_every_(cfg.resolved_gap_full_every(n)),
        t0_(std::chrono::steady_clock::now()) {
    trace_.config_line = cfg.describe(n);
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

  void emit_initial() {
    TraceRecord r = base_row(0);
    r.primal = driver_.objective();
    if (full_every_ > 0) {
      r.gap_full = driver_.full_gap_current();
      last_full_gap_ = r.gap_full;
    }
    trace_.rows.push_back(r);
    last_emitted_ = 0;
  }

  // Call with the completed iteration count k (the iterate version).
  // Returns true when a stop rule fired.
  bool after_iteration(std::int64_t k, double gap_est, std::int64_t dropped_delay,
                       std::int64_t dropped_collision,
                       std::optional<double> wall_ms_override = std::nullopt) {
    const double epoch = static_cast<double>(k) * cfg_.tau / n_;
    const bool want_full = full_every_ > 0 && k % full_every_ == 0;
    double gap_full = std::numeric_limits<double>::quiet_NaN();
    if (want_full) {
      gap_full = driver_.full_gap_current();
      last_full_gap_ = gap_full;
    }

    bool stop = false;
    if (cfg_.stop.max_epochs && epoch >= *cfg_.stop.max_epochs) stop = true;
    if (cfg_.stop.gap_eps && std::isfinite(last_full_gap_) && last_full_gap_ <= *cfg_.stop.gap_eps)
      stop = true;
    if (k >= cfg_.stop.max_iterations) stop = true;

    const bool cadence = cfg_.trace_every > 0 && k % cfg_.trace_every == 0;
    bool want_row = cadence || stop;
    double primal = std::numeric_limits<double>::quiet_NaN();
    if (want_row || (cfg_.stop.primal_target && cadence)) {
      primal = driver_.objective();
      if (cfg_.stop.primal_target && primal <= *cfg_.stop.primal_target) {
        stop = true;
        want_row = true;
      }
    }
    if (want_row && k != last_emitted_) {
      TraceRecord r = base_row(k);
      r.epoch = epoch;
      r.wallclock_ms = wall_ms_override.value_or(elapsed_ms());
      r.primal = primal;
      r.gap_est = gap_est;
      r.gap_full = gap_full;
      r.dropped_delay = dropped_delay;
      r.dropped_collision = dropped_collision;
      trace_.rows.push_back(r);
      last_emitted_ = k;
    }
    return stop;
  }

  Trace finalize(std::int64_t iterations) {
    trace_.iterations = iterations;
    trace_.final_primal = driver_.objective();
    trace_.total_wallclock_ms = elapsed_ms();
    if (cfg_.average_iterates && driver_.supports_averaging())
      trace_.final_primal_averaged = driver_.averaged_objective();
    trace_.final_gap = last_full_gap_;
    return std::move(trace_);
  }

  Trace& trace() { return trace_; }

 private:
  TraceRecord base_row(std::int64_t k) const {
    TraceRecord r;
    r.iter = k;
    r.tau = cfg_.tau;
    r.workers = cfg_.workers;
    r.seed = cfg_.seed;
    return r;
  }

  IterateDriver& driver_;
  const SolverConfig& cfg_;
  int n_;
  std::int64_t full_every_;
  std::chrono::steady_clock::time_point t0_;
  Trace trace_;
  double last_full_gap_ = std::numeric_limits<double>::quiet_NaN();
  std::int64_t last_emitted_ = -1;
};

// Unbiased batch estimator (n/|S|) sum_{i in S} g^(i) at the current
// iterate, evaluated with fresh oracles.
inline double batch_gap_estimate(IterateDriver& driver, const std::vector<BlockUpdate>& batch,
                                 int n) {
  double sum = 0.0;
  for (const auto& u : batch) sum += driver.block_gap_current(u.block);
  return sum * static_cast<double>(n) / static_cast<double>(batch.size());
}

}  // namespace bcfw::engine::internal
