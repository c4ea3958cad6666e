#include "bcfw/gap.hpp"

#include "bcfw/errors.hpp"
#include "bcfw/oracles.hpp"

namespace bcfw {

double block_gap(const DenseProblem& problem, const BlockVector& x, int i) {
  const DomainDescriptor& desc = problem.domains();
  Eigen::VectorXd grad(desc.block_dim(i));
  problem.block_gradient(x.flat(), i, grad);
  const Eigen::VectorXd s = lmo(desc.block(i), grad);
  return (x.block(i) - s).dot(grad);
}

double full_gap(const DenseProblem& problem, const BlockVector& x) {
  double g = 0.0;
  for (int i = 0; i < problem.num_blocks(); ++i) g += block_gap(problem, x, i);
  return g;
}

GapEstimate gap_estimate(const DenseProblem& problem, const BlockVector& x,
                         const std::vector<int>& S) {
  if (S.empty()) throw ContractViolation("gap_estimate: empty subset");
  GapEstimate est;
  est.subset = S;
  double sum = 0.0;
  for (int i : S) sum += block_gap(problem, x, i);
  est.value = sum * static_cast<double>(problem.num_blocks()) / static_cast<double>(S.size());
  est.is_exact = static_cast<int>(S.size()) == problem.num_blocks();
  return est;
}

}  // namespace bcfw
