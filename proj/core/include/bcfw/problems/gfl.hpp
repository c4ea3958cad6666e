#pragma once

#include <Eigen/Core>

#include "bcfw/problem.hpp"

namespace bcfw {

// Group Fused Lasso dual. The primal filters a d x n signal Y:
//   min_X 1/2 ||X - Y||_F^2 + lambda ||X D||_{1,2}
// with D the n x (n-1) differencing matrix (D_{t,t} = +1, D_{t+1,t} = -1).
// The dual minimizes
//   f(U) = 1/2 ||U D^T||_F^2 - tr(U D^T Y^T)
// over columns ||U_{:,t}||_2 <= lambda, t = 1..n-1. Each column of U is a
// coordinate block.
class GflProblem : public DenseProblem, public HessianOracle {
 public:
  GflProblem(Eigen::MatrixXd Y, double lambda);

  std::string name() const override { return "gfl"; }
  const DomainDescriptor& domains() const override { return domains_; }

  double value(const Eigen::Ref<const Eigen::VectorXd>& u) const override;
  void block_gradient(const Eigen::Ref<const Eigen::VectorXd>& u, int t,
                      Eigen::Ref<Eigen::VectorXd> out) const override;
  double directional_curvature(const std::vector<int>& S,
                               const std::vector<Eigen::VectorXd>& dirs) const override;
  const HessianOracle* hessian() const override { return this; }
  BlockVector initial_point() const override;  // U = 0

  // HessianOracle: H_ts = (D^T D)_{ts} I_d (tridiagonal 2 / -1 structure).
  int num_blocks() const override { return time_points_ - 1; }
  Eigen::MatrixXd block(int i, int j) const override;

  // Primal recovery X = Y - U D^T and the primal objective.
  Eigen::MatrixXd primal_recover(const Eigen::Ref<const Eigen::VectorXd>& u) const;
  double primal_objective(const Eigen::MatrixXd& X) const;
  // dual(U) = -f(U); primal(X(U)) - dual(U) is the duality gap.
  double dual_objective(const Eigen::Ref<const Eigen::VectorXd>& u) const;

  int signal_dim() const { return d_; }
  int time_points() const { return time_points_; }
  double lambda() const { return lambda_; }
  const Eigen::MatrixXd& observations() const { return Y_; }

  // Paper-style constants for the report: B <= 2 lambda^2 d, mu <= lambda^2 d,
  // simplified claim C_f^tau <= 4 tau lambda^2 d.
  double paper_B_bound() const { return 2.0 * lambda_ * lambda_ * d_; }
  double paper_mu_bound() const { return lambda_ * lambda_ * d_; }
  double paper_cf_tau_claim(int tau) const { return 4.0 * tau * lambda_ * lambda_ * d_; }

 private:
  Eigen::MatrixXd Y_;  // d x n
  double lambda_;
  int d_ = 0;
  int time_points_ = 0;  // n
  DomainDescriptor domains_;

  Eigen::MatrixXd as_matrix(const Eigen::Ref<const Eigen::VectorXd>& u) const;
};

// Piecewise-constant synthetic signal: `segments` constant pieces with
// shared change points across dimensions plus N(0, sigma^2) noise.
struct GflSynthetic {
  Eigen::MatrixXd Y;                  // d x n
  std::vector<int> change_points;     // segment boundaries (size segments-1)
};
GflSynthetic gfl_synthetic(int d, int n, int segments, double sigma, std::uint64_t seed);

}  // namespace bcfw
