#pragma once

#include <Eigen/Core>

#include "bcfw/domain.hpp"
#include "bcfw/rng.hpp"

namespace bcfw {

// Linear minimization oracles: argmin_{s in M_i} <s, g>. All argmin ties
// resolve to the lowest index so replays are deterministic.

// Unit simplex: the indicator of the smallest gradient entry.
int lmo_simplex_index(const Eigen::Ref<const Eigen::VectorXd>& g);
Eigen::VectorXd lmo_simplex(const Eigen::Ref<const Eigen::VectorXd>& g);

// Euclidean ball of the given radius; g = 0 returns the origin.
Eigen::VectorXd lmo_l2ball(const Eigen::Ref<const Eigen::VectorXd>& g, double radius);

// Explicit vertex list (rows of `vertices`).
int lmo_vertex_list_index(const Eigen::Ref<const Eigen::VectorXd>& g,
                          const Eigen::MatrixXd& vertices);
Eigen::VectorXd lmo_vertex_list(const Eigen::Ref<const Eigen::VectorXd>& g,
                                const Eigen::MatrixXd& vertices);

// Dispatch on the block's domain kind.
Eigen::VectorXd lmo(const BlockDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& g);

// Wraps an exact LMO into an approximate one: with some probability the
// exact vertex is returned, otherwise a uniformly random extreme point.
// The exact-branch probability is calibrated per call so that the expected
// additive suboptimality stays within the supplied budget; the exact
// probability never exceeds the requested mixing cap (default 1/2 floor on
// the random branch disappears when the budget demands better).
class ApproxOracle {
 public:
  // delta_target >= 0 scales budgets; a zero target makes the oracle exact.
  ApproxOracle(double delta_target, std::uint64_t seed);

  // budget = delta * gamma_k * C_f^tau / 2 for the current iteration.
  // Requires an enumerable domain (the mean suboptimality of a random
  // vertex must be computable).
  Eigen::VectorXd solve(const BlockDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& g,
                        double budget);

  double delta_target() const { return delta_target_; }

 private:
  double delta_target_;
  rng::Engine eng_;
};

}  // namespace bcfw
