#pragma once

#include <Eigen/Core>
#include <vector>

#include "bcfw/block_vector.hpp"
#include "bcfw/problem.hpp"

namespace bcfw {

// Step size 2*n*tau / (tau^2*k + 2*n), clamped to [0, 1]. The raw value
// exceeds 1 for small k when tau > 1; feasibility needs gamma <= 1 and the
// clamp leaves every step past the crossover untouched.
double step_size(std::int64_t k, int n, int tau);

struct StepSchedule {
  enum class Mode { Schedule, LineSearch };
  int n = 1;
  int tau = 1;
  Mode mode = Mode::Schedule;

  double at(std::int64_t k) const { return step_size(k, n, tau); }
};

// x <- x + gamma * sum_{i in S} (s_[i] - x_[i]); blocks outside S are
// untouched, the version is bumped. Vertices must be feasible; duplicate
// indices in S are a contract violation. After the convex step each
// touched block is residual-checked: <=1e-9 passes, <=1e-6 is re-projected
// onto its set, anything worse raises FeasibilityError.
void apply_update(BlockVector& x, const DomainDescriptor& desc, const std::vector<int>& S,
                  const std::vector<Eigen::VectorXd>& s, double gamma);

// Exact minimizer of f along x + gamma * sum_{i in S}(s_[i] - x_[i]) over
// gamma in [0, 1]. Closed form when the problem reports directional
// curvature (quadratics); otherwise 64-iteration bisection on the
// directional derivative with a golden-section fallback.
double line_search(const DenseProblem& problem, const BlockVector& x, const std::vector<int>& S,
                   const std::vector<Eigen::VectorXd>& s);

}  // namespace bcfw
