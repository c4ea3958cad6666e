#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

#include "bcfw/block_vector.hpp"
#include "bcfw/domain.hpp"

namespace bcfw {

// Access to the quadratic upper-bound matrix H (block structure follows
// the domain partition). For quadratics H is the Hessian itself.
class HessianOracle {
 public:
  virtual ~HessianOracle() = default;
  virtual int num_blocks() const = 0;
  // The m_i x m_j block H_ij.
  virtual Eigen::MatrixXd block(int i, int j) const = 0;
  virtual bool is_block_diagonal() const { return false; }
};

// A block-separable problem with an explicit iterate: objective value,
// per-block gradients, domains, and (optionally) the matrix H.
class DenseProblem {
 public:
  virtual ~DenseProblem() = default;

  virtual std::string name() const = 0;
  virtual const DomainDescriptor& domains() const = 0;
  int num_blocks() const { return domains().num_blocks(); }
  int dim() const { return domains().total_dim(); }

  virtual double value(const Eigen::Ref<const Eigen::VectorXd>& x) const = 0;
  virtual void block_gradient(const Eigen::Ref<const Eigen::VectorXd>& x, int i,
                              Eigen::Ref<Eigen::VectorXd> out) const = 0;

  // d^T H d for a direction supported on blocks S (dirs[j] lives on S[j]).
  // NaN means "not available" and sends line search down the generic path.
  virtual double directional_curvature(const std::vector<int>& S,
                                       const std::vector<Eigen::VectorXd>& dirs) const {
    (void)S;
    (void)dirs;
    return std::numeric_limits<double>::quiet_NaN();
  }

  virtual const HessianOracle* hessian() const { return nullptr; }

  virtual BlockVector initial_point() const { return BlockVector::centers(domains()); }
};

}  // namespace bcfw
