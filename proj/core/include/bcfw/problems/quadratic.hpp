#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "bcfw/problem.hpp"

namespace bcfw {

// f(x) = 1/2 x^T H x + c^T x over a product domain. H is stored either
// dense (coupled blocks) or as a list of diagonal blocks (mu = 0 family
// used for the mini-batch speedup studies).
class QuadraticProblem : public DenseProblem, public HessianOracle {
 public:
  // Dense coupled quadratic; H must be symmetric to 1e-12.
  QuadraticProblem(Eigen::MatrixXd H, Eigen::VectorXd c, DomainDescriptor domains);
  // Block-diagonal quadratic (H_ij = 0 for i != j).
  QuadraticProblem(std::vector<Eigen::MatrixXd> diag_blocks, Eigen::VectorXd c,
                   DomainDescriptor domains);

  std::string name() const override { return "quadratic"; }
  const DomainDescriptor& domains() const override { return domains_; }

  double value(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  void block_gradient(const Eigen::Ref<const Eigen::VectorXd>& x, int i,
                      Eigen::Ref<Eigen::VectorXd> out) const override;
  double directional_curvature(const std::vector<int>& S,
                               const std::vector<Eigen::VectorXd>& dirs) const override;
  const HessianOracle* hessian() const override { return this; }

  // HessianOracle
  int num_blocks() const override { return domains_.num_blocks(); }
  Eigen::MatrixXd block(int i, int j) const override;
  bool is_block_diagonal() const override { return !diag_blocks_.empty(); }

  const Eigen::VectorXd& linear_term() const { return c_; }

  // Random strictly convex instance over a product of simplices
  // (H = G^T G + ridge I with N(0,1) entries scaled by `scale`).
  static QuadraticProblem random_simplex_instance(int n, int block_dim, std::uint64_t seed,
                                                  double scale = 1.0, double ridge = 0.05);
  // Random block-diagonal instance (zero incoherence).
  static QuadraticProblem random_blockdiag_instance(int n, int block_dim, std::uint64_t seed,
                                                    double scale = 1.0, double ridge = 0.05);

 private:
  DomainDescriptor domains_;
  Eigen::MatrixXd H_;                        // dense mode
  std::vector<Eigen::MatrixXd> diag_blocks_; // block-diagonal mode
  Eigen::VectorXd c_;
};

}  // namespace bcfw
