#include "bcfw/engine/delay.hpp"

#include <cmath>

namespace bcfw::engine {

std::int64_t delay_sample(const DelayModel& model, rng::Engine& eng) {
  if (model.kappa <= 0.0) return 0;
  switch (model.kind) {
    case DelayModel::Kind::None:
      return 0;
    case DelayModel::Kind::Poisson:
      return rng::poisson(eng, model.kappa);
    case DelayModel::Kind::Pareto:
      return std::llround(rng::pareto(eng, 2.0, model.kappa / 2.0));
  }
  return 0;
}

std::int64_t drop_rule_warmup(const DelayModel& model) {
  if (model.kind == DelayModel::Kind::None || model.kappa <= 0.0) return 0;
  return static_cast<std::int64_t>(std::ceil(4.0 * model.kappa));
}

}  // namespace bcfw::engine
