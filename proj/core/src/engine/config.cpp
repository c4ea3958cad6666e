#include "bcfw/engine/config.hpp"

#include <sstream>

#include "bcfw/errors.hpp"

namespace bcfw::engine {

std::string to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::Sync: return "sync";
    case SolverMode::AsyncEventSim: return "async-event-sim";
    case SolverMode::AsyncThreads: return "async-threads";
    case SolverMode::LockFree: return "lockfree";
  }
  return "?";
}

void SolverConfig::validate(int n) const {
  if (tau < 1 || tau > n) throw InvalidConfigError("SolverConfig: tau must lie in [1, n]");
  if (workers < 1) throw InvalidConfigError("SolverConfig: need at least one worker");
  if (delay.kappa < 0.0) throw InvalidConfigError("SolverConfig: kappa must be >= 0");
  for (double p : return_prob)
    if (!(p > 0.0) || p > 1.0)
      throw InvalidConfigError("SolverConfig: return probabilities must lie in (0, 1]");
  if (!return_prob.empty() && static_cast<int>(return_prob.size()) != workers)
    throw InvalidConfigError("SolverConfig: one return probability per worker required");
  if (mode == SolverMode::LockFree && tau != 1)
    throw InvalidConfigError("SolverConfig: lock-free mode requires tau = 1");
  if (mode == SolverMode::AsyncEventSim && !return_prob.empty())
    throw InvalidConfigError("SolverConfig: return-prob stragglers are a threads/sync model");
  if (delay.kind != DelayModel::Kind::None &&
      (mode == SolverMode::Sync || mode == SolverMode::AsyncThreads ||
       mode == SolverMode::LockFree))
    throw InvalidConfigError("SolverConfig: sampled delay models apply to the event sim only");
  if (stop.max_iterations < 1) throw InvalidConfigError("SolverConfig: max_iterations must be >= 1");
}

std::int64_t SolverConfig::resolved_gap_full_every(int n) const {
  if (gap_full_every >= 0) return gap_full_every;
  if (n <= 10000) return std::max<std::int64_t>(1, n / tau);
  return 0;
}

std::string SolverConfig::describe(int n) const {
  std::ostringstream os;
  os << "mode=" << to_string(mode) << " n=" << n << " tau=" << tau << " T=" << workers
     << " line_search=" << (line_search ? 1 : 0) << " seed=" << seed;
  switch (delay.kind) {
    case DelayModel::Kind::None: break;
    case DelayModel::Kind::Poisson: os << " delay=poisson kappa=" << delay.kappa; break;
    case DelayModel::Kind::Pareto: os << " delay=pareto kappa=" << delay.kappa; break;
  }
  if (!return_prob.empty()) {
    os << " return_prob=";
    for (std::size_t i = 0; i < return_prob.size(); ++i) os << (i ? ";" : "") << return_prob[i];
  }
  if (drop_rule) os << " drop_rule=1";
  if (stop.gap_eps) os << " gap_eps=" << *stop.gap_eps;
  if (stop.primal_target) os << " primal_target=" << *stop.primal_target;
  if (stop.max_epochs) os << " max_epochs=" << *stop.max_epochs;
  os << " max_iterations=" << stop.max_iterations;
  return os.str();
}

}  // namespace bcfw::engine
