#include "bcfw/engine/solver.hpp"

#include "bcfw/errors.hpp"

namespace bcfw::engine {

Trace run(IterateDriver& driver, const SolverConfig& config) {
  switch (config.mode) {
    case SolverMode::Sync: return run_sync(driver, config);
    case SolverMode::AsyncEventSim: return run_async_event_sim(driver, config);
    case SolverMode::AsyncThreads: return run_async_threads(driver, config);
    case SolverMode::LockFree: return run_lockfree(driver, config);
  }
  throw InvalidConfigError("run: unknown solver mode");
}

Trace run(const DenseProblem& problem, const SolverConfig& config) {
  DenseDriver driver(problem);
  return run(driver, config);
}

Trace run(StructSvmProblem& problem, const SolverConfig& config) {
  problem.reset();
  SvmDriver driver(problem);
  return run(driver, config);
}

}  // namespace bcfw::engine
