#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <vector>

#include "bcfw/block_vector.hpp"
#include "bcfw/problem.hpp"
#include "bcfw/problems/quadratic.hpp"
#include "bcfw/problems/struct_svm.hpp"
#include "bcfw/rng.hpp"

namespace bcfw::testing {

// ---- independent oracles (kept out of the shipped library on purpose) ----

// Projection onto the unit simplex (Duchi et al. style sort-based).
Eigen::VectorXd project_simplex(const Eigen::Ref<const Eigen::VectorXd>& v);

// Brute-force minimizer of a strictly convex quadratic over the product
// domain via accelerated projected gradient run to machine precision.
struct QpSolution {
  Eigen::VectorXd x;
  double value = 0.0;
};
QpSolution qp_brute_force(const QuadraticProblem& problem, int max_iters = 500000,
                          double tol = 1e-13);

// Central finite differences of f restricted to block i.
Eigen::VectorXd fd_block_gradient(const DenseProblem& problem,
                                  const Eigen::Ref<const Eigen::VectorXd>& x, int i,
                                  double h = 1e-6);

// Random feasible iterate.
BlockVector random_feasible(const DomainDescriptor& desc, rng::Engine& eng);

// ---- explicit-alpha structural SVM oracle ----

// Materializes the dual (all K^ell labels per block) and carries alpha
// explicitly; the implicit (w, w_i, loss-sum) bookkeeping must agree with
// this object after any update sequence.
class ExplicitAlphaSim {
 public:
  explicit ExplicitAlphaSim(const StructSvmProblem& problem);

  void apply(int i, const std::vector<int>& ystar, double gamma);

  Eigen::VectorXd w() const;                  // A alpha
  Eigen::VectorXd w_i(int i) const;           // A_i alpha_(i)
  double loss_sum(int i) const;               // b_(i)^T alpha_(i)
  double objective() const;                   // lambda/2 ||A alpha||^2 - b^T alpha
  double block_gap(int i) const;              // <alpha_i - s*, grad_i>
  const Eigen::VectorXd& alpha(int i) const { return alpha_[i]; }

  // The dual as an explicit quadratic over the product of label simplices.
  std::unique_ptr<QuadraticProblem> materialize() const;

 private:
  const StructSvmProblem& problem_;
  std::vector<Eigen::MatrixXd> A_;      // per block: total_dim x label_count
  std::vector<Eigen::VectorXd> b_;      // per block: label_count
  std::vector<Eigen::VectorXd> alpha_;  // per block simplex point
};

}  // namespace bcfw::testing
