#include <algorithm>
#include <deque>

#include "bcfw/engine/solver.hpp"
#include "bcfw/errors.hpp"
#include "bcfw/rng.hpp"
#include "bcfw/step.hpp"
#include "runner_common.hpp"

namespace bcfw::engine {

Trace run_async_event_sim(IterateDriver& driver, const SolverConfig& cfg) {
  const int n = driver.num_blocks();
  cfg.validate(n);
  rng::Engine block_eng = rng::make_engine(cfg.seed, "blocks", 0);
  rng::Engine delay_eng = rng::make_engine(cfg.seed, "delay");
  internal::Telemetry tel(driver, cfg, n);
  tel.emit_initial();

  const std::int64_t warmup = drop_rule_warmup(cfg.delay);
  const bool has_delay = cfg.delay.kind != DelayModel::Kind::None && cfg.delay.kappa > 0.0;

  // Parameter archive: versions [base, k] of the worker-visible params.
  std::deque<Eigen::VectorXd> archive;
  std::int64_t base_version = 0;
  archive.push_back(driver.snapshot());

  BatchAccumulator acc(cfg.tau, /*drop_rule=*/false, 0);  // drops are pre-filtered below
  std::int64_t dropped_delay = 0;
  std::int64_t draws = 0;  // simulated clock: one unit per oracle draw
  int worker_rr = 0;

  std::int64_t k = 0;
  while (k < cfg.stop.max_iterations) {
    while (!acc.ready()) {
      const int block = rng::uniform_int(block_eng, n);
      ++draws;
      std::int64_t staleness = 0;
      if (has_delay) {
        const std::int64_t drawn = delay_sample(cfg.delay, delay_eng);
        staleness = std::min(drawn, k);  // history starts at version 0
        if (cfg.drop_rule && k >= warmup && drop_rule_applies(staleness, k)) {
          ++dropped_delay;
          continue;
        }
      }
      const std::int64_t birth = k - staleness;
      if (birth < base_version)
        throw InvalidConfigError(
            "event sim: archive window exhausted (delay larger than retained history; enable "
            "the drop rule or raise kappa-derived retention)");
      BlockUpdate u;
      u.block = block;
      u.birth_version = birth;
      u.worker = worker_rr++ % cfg.workers;
      u.payload = driver.oracle(block, archive[birth - base_version]);
      acc.add(std::move(u), k);
    }
    std::vector<BlockUpdate> batch = acc.take_batch();

    const bool want_est = cfg.gap_est_every > 0 && (k + 1) % cfg.gap_est_every == 0;
    const double gap_est = want_est ? internal::batch_gap_estimate(driver, batch, n)
                                    : std::numeric_limits<double>::quiet_NaN();

    double gamma = step_size(k, n, cfg.tau);
    if (cfg.line_search) {
      const double ls = driver.line_search_gamma(batch);
      if (std::isfinite(ls)) gamma = ls;
    }
    driver.apply(batch, gamma);
    ++k;
    if (cfg.average_iterates && driver.supports_averaging()) driver.accumulate_average();

    archive.push_back(driver.snapshot());
    const std::int64_t window = std::max<std::int64_t>(
        {64, static_cast<std::int64_t>(std::ceil(4.0 * cfg.delay.kappa)), k / 2 + 1});
    while (static_cast<std::int64_t>(archive.size()) > window + 1) {
      archive.pop_front();
      ++base_version;
    }

    // Simulated wall clock (total subroutine draws) keeps traces
    // byte-identical across replays of the same seed.
    if (tel.after_iteration(k, gap_est, dropped_delay, acc.dropped_collision(),
                            static_cast<double>(draws)))
      break;
  }
  return tel.finalize(k);
}

}  // namespace bcfw::engine
