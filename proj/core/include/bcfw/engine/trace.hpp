#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace bcfw::engine {

// One row per server iteration. gap columns hold NaN when not evaluated
// (serialized as empty cells). Dropped counters are cumulative.
struct TraceRecord {
  std::int64_t iter = 0;
  double epoch = 0.0;
  double wallclock_ms = 0.0;
  double primal = std::numeric_limits<double>::quiet_NaN();
  double gap_est = std::numeric_limits<double>::quiet_NaN();
  double gap_full = std::numeric_limits<double>::quiet_NaN();
  std::int64_t dropped_delay = 0;
  std::int64_t dropped_collision = 0;
  int tau = 1;
  int workers = 1;
  std::uint64_t seed = 0;
};

struct Trace {
  std::vector<TraceRecord> rows;
  std::string config_line;   // full config echo for the CSV comment
  bool deterministic = true; // async-threads runs flip this off
  bool aborted = false;      // worker failure; rows hold the partial run
  std::string abort_reason;

  // Final objective on the raw iterate and (when enabled) the averaged one.
  double final_primal = std::numeric_limits<double>::quiet_NaN();
  double final_primal_averaged = std::numeric_limits<double>::quiet_NaN();
  double final_gap = std::numeric_limits<double>::quiet_NaN();
  std::int64_t iterations = 0;
  double total_wallclock_ms = 0.0;

  // First iteration whose row satisfies the predicate, or -1.
  std::int64_t first_iter_with_gap_below(double eps) const;
  std::int64_t first_iter_with_primal_below(double target) const;

  // Schema: iter,epoch,wallclock_ms,primal,gap_est,gap_full,dropped_delay,
  //         dropped_collision,tau,T,seed
  std::string to_csv() const;
  void save_csv(const std::string& path) const;
};

}  // namespace bcfw::engine
