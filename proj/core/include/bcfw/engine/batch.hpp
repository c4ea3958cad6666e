#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <vector>

#include "bcfw/engine/delay.hpp"

namespace bcfw::engine {

// A worker's answer for one block: the oracle vertex (or an encoded label
// for implicit problems) plus the parameter version it was computed from.
struct BlockUpdate {
  int block = 0;
  Eigen::VectorXd payload;
  std::int64_t birth_version = 0;
  int worker = 0;

  std::int64_t delay(std::int64_t current_version) const {
    return current_version - birth_version;
  }
};

// Server-side accumulation of updates until tau disjoint blocks are held.
// Colliding blocks are overwritten (latest arrival wins); when the drop
// rule is armed, updates with delay > k/2 are discarded before
// accumulation. Both event counts are kept separately.
class BatchAccumulator {
 public:
  BatchAccumulator(int tau, bool drop_rule, std::int64_t drop_warmup)
      : tau_(tau), drop_rule_(drop_rule), drop_warmup_(drop_warmup) {}

  enum class Outcome { Accepted, Collision, DroppedDelay };

  Outcome add(BlockUpdate update, std::int64_t current_iteration);

  bool ready() const { return static_cast<int>(pending_.size()) >= tau_; }
  // Pending updates in ascending block order; clears the buffer.
  std::vector<BlockUpdate> take_batch();

  std::int64_t dropped_delay() const { return dropped_delay_; }
  std::int64_t dropped_collision() const { return dropped_collision_; }
  std::size_t pending_size() const { return pending_.size(); }

 private:
  int tau_;
  bool drop_rule_;
  std::int64_t drop_warmup_;
  std::map<int, BlockUpdate> pending_;
  std::int64_t dropped_delay_ = 0;
  std::int64_t dropped_collision_ = 0;
};

}  // namespace bcfw::engine
