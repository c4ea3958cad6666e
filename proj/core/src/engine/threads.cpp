#include <atomic>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <thread>

#include "bcfw/engine/solver.hpp"
#include "bcfw/rng.hpp"
#include "bcfw/step.hpp"
#include "runner_common.hpp"

namespace bcfw::engine {

namespace {

struct Snapshot {
  Eigen::VectorXd params;
  std::int64_t version = 0;
};

class SnapshotBox {
 public:
  explicit SnapshotBox(Snapshot s) : snap_(std::make_shared<const Snapshot>(std::move(s))) {}
  std::shared_ptr<const Snapshot> load() const {
    std::lock_guard<std::mutex> lk(m_);
    return snap_;
  }
  void store(Snapshot s) {
    auto p = std::make_shared<const Snapshot>(std::move(s));
    std::lock_guard<std::mutex> lk(m_);
    snap_ = std::move(p);
  }

 private:
  mutable std::mutex m_;
  std::shared_ptr<const Snapshot> snap_;
};

// Bounded many-producer single-consumer queue. The server never blocks on
// a slow worker; workers block only on backpressure when the server lags.
class UpdateQueue {
 public:
  explicit UpdateQueue(std::size_t cap) : cap_(cap) {}

  bool push(BlockUpdate u, const std::atomic<bool>& stop) {
    std::unique_lock<std::mutex> lk(m_);
    not_full_.wait(lk, [&] { return items_.size() < cap_ || stop.load(); });
    if (stop.load()) return false;
    items_.push_back(std::move(u));
    lk.unlock();
    not_empty_.notify_one();
    return true;
  }

  bool pop(BlockUpdate& out, const std::atomic<bool>& abort) {
    std::unique_lock<std::mutex> lk(m_);
    not_empty_.wait_for(lk, std::chrono::milliseconds(20),
                        [&] { return !items_.empty() || abort.load(); });
    if (items_.empty()) return false;
    out = std::move(items_.front());
    items_.pop_front();
    lk.unlock();
    not_full_.notify_all();
    return true;
  }

  void wake_all() {
    not_full_.notify_all();
    not_empty_.notify_all();
  }

 private:
  std::size_t cap_;
  std::mutex m_;
  std::condition_variable not_full_, not_empty_;
  std::deque<BlockUpdate> items_;
};

}  // namespace

Trace run_async_threads(IterateDriver& driver, const SolverConfig& cfg) {
  const int n = driver.num_blocks();
  cfg.validate(n);
  internal::Telemetry tel(driver, cfg, n);
  tel.trace().deterministic = false;
  tel.emit_initial();

  SnapshotBox box(Snapshot{driver.snapshot(), 0});
  UpdateQueue queue(std::max<std::size_t>(64, 8 * static_cast<std::size_t>(cfg.tau)));
  std::atomic<bool> stop{false};
  std::atomic<bool> abort{false};
  std::mutex abort_m;
  std::string abort_reason;

  std::vector<std::thread> workers;
  workers.reserve(cfg.workers);
  for (int w = 0; w < cfg.workers; ++w) {
    workers.emplace_back([&, w] {
      rng::Engine eng = rng::make_engine(cfg.seed, "worker", static_cast<std::uint64_t>(w));
      const double p = cfg.return_prob.empty() ? 1.0 : cfg.return_prob[w];
      try {
        while (!stop.load()) {
          auto snap = box.load();
          BlockUpdate u;
          u.block = rng::uniform_int(eng, n);
          u.worker = w;
          u.birth_version = snap->version;
          u.payload = driver.oracle(u.block, snap->params);
          // Straggler model: the solve is done but only reported with
          // probability p; unreported work is simply wasted compute.
          if (p < 1.0 && rng::uniform(eng) > p) continue;
          if (!queue.push(std::move(u), stop)) break;
        }
      } catch (const std::exception& e) {
        {
          std::lock_guard<std::mutex> lk(abort_m);
          if (abort_reason.empty()) abort_reason = e.what();
        }
        abort.store(true);
        stop.store(true);
        queue.wake_all();
      }
    });
  }

  BatchAccumulator acc(cfg.tau, cfg.drop_rule, /*warmup=*/0);
  std::int64_t k = 0;
  while (k < cfg.stop.max_iterations && !abort.load()) {
    while (!acc.ready() && !abort.load()) {
      BlockUpdate u;
      if (queue.pop(u, abort)) acc.add(std::move(u), k);
    }
    if (abort.load()) break;
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
    box.store(Snapshot{driver.snapshot(), k});

    if (tel.after_iteration(k, gap_est, acc.dropped_delay(), acc.dropped_collision())) break;
  }

  stop.store(true);
  queue.wake_all();
  for (auto& t : workers) t.join();

  Trace trace = tel.finalize(k);
  if (abort.load()) {
    trace.aborted = true;
    std::lock_guard<std::mutex> lk(abort_m);
    trace.abort_reason = abort_reason;
  }
  return trace;
}

}  // namespace bcfw::engine
