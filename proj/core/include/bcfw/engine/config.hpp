#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bcfw::engine {

enum class SolverMode { Sync, AsyncEventSim, AsyncThreads, LockFree };

std::string to_string(SolverMode mode);

// Staleness model for the event simulation (delay in server iterations).
struct DelayModel {
  enum class Kind { None, Poisson, Pareto };
  Kind kind = Kind::None;
  double kappa = 0.0;  // expected delay; Pareto uses alpha=2, x_m=kappa/2

  static DelayModel none() { return {}; }
  static DelayModel poisson(double kappa) { return {Kind::Poisson, kappa}; }
  static DelayModel pareto(double kappa) { return {Kind::Pareto, kappa}; }
};

struct StopRule {
  std::int64_t max_iterations = 1'000'000;
  std::optional<double> max_epochs;       // effective data passes (n block solves)
  std::optional<double> gap_eps;          // stop when an evaluated full gap <= eps
  std::optional<double> primal_target;    // stop when f(x) <= target (e.g. f* + eps)
};

struct SolverConfig {
  int tau = 1;
  int workers = 1;  // T
  SolverMode mode = SolverMode::Sync;
  bool line_search = false;

  DelayModel delay;                   // event-sim staleness
  std::vector<double> return_prob;    // straggler model: p_i per worker; empty = full speed
  bool drop_rule = false;             // discard updates with delay > k/2

  StopRule stop;
  std::uint64_t seed = 0;

  // Telemetry cadence. gap_est_every = 0 disables the batch estimator;
  // gap_full_every = -1 picks the default (every n/tau iterations when
  // n <= 10^4, else never).
  std::int64_t gap_est_every = 1;
  std::int64_t gap_full_every = -1;
  std::int64_t trace_every = 1;

  // Optional k-weighted iterate averaging (dense problems; reported in the
  // run summary, the trace stays on the raw iterate).
  bool average_iterates = false;

  // Throws InvalidConfigError when inconsistent for a problem with n blocks.
  void validate(int n) const;

  std::int64_t resolved_gap_full_every(int n) const;
  std::string describe(int n) const;  // one-line key=value summary for CSV comments
};

}  // namespace bcfw::engine
