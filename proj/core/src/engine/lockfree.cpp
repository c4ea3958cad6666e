#include <atomic>
#include <mutex>
#include <thread>

#include "bcfw/engine/solver.hpp"
#include "bcfw/rng.hpp"
#include "bcfw/step.hpp"
#include "runner_common.hpp"

namespace bcfw::engine {

// Lock-free tau = 1 variant: no server. Every worker loops
//   draw i, solve the LMO against the shared parameters, read the global
//   counter k, step with gamma = 2n/(k+2n), write its block, k <- k+1.
// Block writes are synchronized at block granularity inside the driver;
// parameter reads are unsynchronized by design.
Trace run_lockfree(IterateDriver& driver, const SolverConfig& cfg) {
  const int n = driver.num_blocks();
  cfg.validate(n);
  internal::Telemetry tel(driver, cfg, n);
  if (cfg.workers > 1) tel.trace().deterministic = false;
  tel.emit_initial();

  std::atomic<std::int64_t> counter{0};
  std::atomic<bool> stop{false};
  std::mutex trace_m;
  const std::int64_t stride = std::max<std::int64_t>(1, cfg.trace_every);

  auto worker_body = [&](int w) {
    rng::Engine eng = rng::make_engine(cfg.seed, "blocks", static_cast<std::uint64_t>(w));
    while (!stop.load(std::memory_order_relaxed)) {
      BlockUpdate u;
      u.block = rng::uniform_int(eng, n);
      u.worker = w;
      const std::int64_t k_read = counter.load(std::memory_order_acquire);
      u.birth_version = k_read;
      u.payload = driver.oracle(u.block, driver.shared_params());
      const double gamma = step_size(counter.load(std::memory_order_acquire), n, 1);
      driver.apply_block_lockfree(u, gamma);
      const std::int64_t k_done = counter.fetch_add(1, std::memory_order_acq_rel) + 1;
      if (k_done >= cfg.stop.max_iterations) stop.store(true, std::memory_order_relaxed);
      if (k_done % stride == 0) {
        std::lock_guard<std::mutex> lk(trace_m);
        if (tel.after_iteration(k_done, std::numeric_limits<double>::quiet_NaN(), 0, 0))
          stop.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (cfg.workers == 1) {
    worker_body(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(cfg.workers);
    for (int w = 0; w < cfg.workers; ++w) threads.emplace_back(worker_body, w);
    for (auto& t : threads) t.join();
  }
  return tel.finalize(counter.load());
}

}  // namespace bcfw::engine
