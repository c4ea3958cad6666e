#pragma once

#include "bcfw/engine/config.hpp"
#include "bcfw/engine/driver.hpp"
#include "bcfw/engine/trace.hpp"
#include "bcfw/problem.hpp"
#include "bcfw/problems/struct_svm.hpp"

namespace bcfw::engine {

// Individual solver drivers. All of them honor SolverConfig::stop and the
// telemetry cadences; see each mode's notes.

// Synchronous mini-batch: a uniform size-tau subset per iteration, all
// oracles at the current iterate. A straggler model (return_prob) only
// stretches the simulated wall-clock, never staleness.
Trace run_sync(IterateDriver& driver, const SolverConfig& config);

// Deterministic discrete-event simulation of the server/worker scheme:
// each update carries birth_version = k - sampled delay and its vertex is
// computed from the archived parameters of that version; collisions
// overwrite (latest wins); the drop rule discards updates with delay >
// k/2 once past warmup.
Trace run_async_event_sim(IterateDriver& driver, const SolverConfig& config);

// Real worker threads against the latest published snapshot; a single
// applier enforces disjointness/overwrite/drop semantics. Trajectories
// are not reproducible across runs; wall-clock telemetry is the point.
Trace run_async_threads(IterateDriver& driver, const SolverConfig& config);

// Lock-free tau = 1: workers read the shared counter k, use
// gamma = 2n/(k+2n), write their block delta under a block-granular lock,
// and increment the counter.
Trace run_lockfree(IterateDriver& driver, const SolverConfig& config);

// Mode dispatch.
Trace run(IterateDriver& driver, const SolverConfig& config);
Trace run(const DenseProblem& problem, const SolverConfig& config);
Trace run(StructSvmProblem& problem, const SolverConfig& config);

}  // namespace bcfw::engine
