#include "bcfw/engine/batch.hpp"

namespace bcfw::engine {

BatchAccumulator::Outcome BatchAccumulator::add(BlockUpdate update,
                                                std::int64_t current_iteration) {
  if (drop_rule_ && current_iteration >= drop_warmup_ &&
      drop_rule_applies(update.delay(current_iteration), current_iteration)) {
    ++dropped_delay_;
    return Outcome::DroppedDelay;
  }
  const int block = update.block;
  auto [it, inserted] = pending_.insert_or_assign(block, std::move(update));
  (void)it;
  if (!inserted) {
    ++dropped_collision_;
    return Outcome::Collision;
  }
  return Outcome::Accepted;
}

std::vector<BlockUpdate> BatchAccumulator::take_batch() {
  std::vector<BlockUpdate> batch;
  batch.reserve(pending_.size());
  for (auto& [block, upd] : pending_) batch.push_back(std::move(upd));
  pending_.clear();
  return batch;
}

}  // namespace bcfw::engine
