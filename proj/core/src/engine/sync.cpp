#include <algorithm>
#include <set>

#include "bcfw/engine/solver.hpp"
#include "bcfw/rng.hpp"
#include "bcfw/step.hpp"
#include "runner_common.hpp"

namespace bcfw::engine {

Trace run_sync(IterateDriver& driver, const SolverConfig& cfg) {
  const int n = driver.num_blocks();
  cfg.validate(n);
  // The block stream is shared with the event sim (worker 0 stream) so a
  // zero-delay event sim replays the same subset sequence.
  rng::Engine block_eng = rng::make_engine(cfg.seed, "blocks", 0);
  rng::Engine clock_eng = rng::make_engine(cfg.seed, "clock");
  internal::Telemetry tel(driver, cfg, n);
  tel.emit_initial();

  const bool straggler = !cfg.return_prob.empty();
  double sim_clock = 0.0;  // attempt units; only meaningful with stragglers

  std::int64_t k = 0;
  while (k < cfg.stop.max_iterations) {
    // Uniform size-tau subset via repeated uniform draws until tau
    // distinct blocks are seen.
    std::set<int> subset;
    while (static_cast<int>(subset.size()) < cfg.tau)
      subset.insert(rng::uniform_int(block_eng, n));

    std::vector<BlockUpdate> batch;
    batch.reserve(cfg.tau);
    double gap_sum = 0.0;
    const bool want_est = cfg.gap_est_every > 0 && (k + 1) % cfg.gap_est_every == 0;
    for (int i : subset) {
      BlockUpdate u;
      u.block = i;
      u.birth_version = k;
      double g = 0.0;
      u.payload = driver.oracle_with_gap(i, driver.shared_params(), want_est ? &g : nullptr);
      gap_sum += g;
      batch.push_back(std::move(u));
    }
    const double gap_est = want_est
                               ? gap_sum * static_cast<double>(n) / static_cast<double>(cfg.tau)
                               : std::numeric_limits<double>::quiet_NaN();

    double gamma = step_size(k, n, cfg.tau);
    if (cfg.line_search) {
      const double ls = driver.line_search_gamma(batch);
      if (std::isfinite(ls)) gamma = ls;
    }
    driver.apply(batch, gamma);
    ++k;
    if (cfg.average_iterates && driver.supports_averaging()) driver.accumulate_average();

    std::optional<double> wall;
    if (straggler) {
      // The server assigns tau/T subproblems per worker and waits for all
      // of them; a worker re-solves until its answer is reported, so the
      // iteration lasts as long as the slowest worker's attempts.
      double slowest = 0.0;
      for (int w = 0; w < cfg.workers; ++w) {
        const int quota = cfg.tau / cfg.workers + (w < cfg.tau % cfg.workers ? 1 : 0);
        double t = 0.0;
        for (int q = 0; q < quota; ++q)
          t += static_cast<double>(rng::geometric_attempts(clock_eng, cfg.return_prob[w]));
        slowest = std::max(slowest, t);
      }
      sim_clock += slowest;
      wall = sim_clock;
    }

    if (tel.after_iteration(k, gap_est, 0, 0, wall)) break;
  }
  return tel.finalize(k);
}

}  // namespace bcfw::engine
