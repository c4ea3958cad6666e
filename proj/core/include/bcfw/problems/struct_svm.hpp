#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "bcfw/domain.hpp"

namespace bcfw {

// One training pair. Multiclass: `features` is 1 x d and `label` has one
// entry; chains: one row of features per position and `label` holds the
// state sequence.
struct SvmInstance {
  Eigen::MatrixXd features;
  std::vector<int> label;
};

// Structural SVM dual over the product of label simplices, solved through
// the primal bookkeeping (w, w_i, loss sums) so the exponential dual
// variable alpha is never materialized. Updates keep each implicit
// alpha_(i) inside its simplex because only convex steps are applied.
//
// Feature map: one d-dim unary block per class/state; chains optionally
// add K*K transition indicators (on by default) so the max oracle is a
// genuine dynamic program.
class StructSvmProblem {
 public:
  enum class Structure { Multiclass, Chain };

  StructSvmProblem(Structure structure, std::vector<SvmInstance> data, int num_classes,
                   double lambda, bool transition_features = true);

  Structure structure() const { return structure_; }
  int num_blocks() const { return static_cast<int>(data_.size()); }
  int num_classes() const { return K_; }
  int chain_length() const { return ell_; }
  int feature_dim() const { return d_; }
  int total_dim() const { return total_dim_; }  // K*d (+ K*K for chains with transitions)
  double lambda() const { return lambda_; }
  const SvmInstance& instance(int i) const { return data_[i]; }

  // ----- pure label-structure queries (thread-safe) -----

  // L_i(y): 0-1 loss for multiclass, position-wise Hamming scaled by
  // 1/chain-length for chains.
  double structured_loss(int i, const std::vector<int>& y) const;

  Eigen::VectorXd feature_map(int i, const std::vector<int>& y) const;   // phi(x_i, y)
  Eigen::VectorXd psi(int i, const std::vector<int>& y) const;           // phi(x_i,y_i)-phi(x_i,y)
  Eigen::VectorXd a_column(int i, const std::vector<int>& y) const;      // psi / (lambda n)

  double h_value(int i, const std::vector<int>& y,
                 const Eigen::Ref<const Eigen::VectorXd>& w) const;      // L_i(y) - <w, psi_i(y)>

  struct OracleResult {
    std::vector<int> label;
    double h_value = 0.0;
  };
  // argmax_y H_i(y; w); exhaustive over K labels for multiclass, Viterbi
  // for chains. Ties resolve to the lexicographically smallest label.
  OracleResult max_oracle(int i, const Eigen::Ref<const Eigen::VectorXd>& w) const;

  // Label enumeration helpers (tiny instances / test oracles). Chains use
  // big-endian mixed radix so index order equals lexicographic order.
  std::int64_t label_count(int i) const;
  std::vector<int> label_from_index(int i, std::int64_t index) const;
  std::int64_t label_to_index(int i, const std::vector<int>& y) const;

  // ----- mutable primal state (single applier) -----

  // alpha_(i) = corner at the true label: w = 0, w_i = 0, loss sums 0.
  void reset();

  // alpha_(i) <- (1-gamma) alpha_(i) + gamma e^{y*}, carried on the primal:
  //   w_i <- w_i + gamma (A_{i,y*} - w_i)
  //   w   <- w + gamma (A_{i,y*} - w_i_old)
  //   l_i <- (1-gamma) l_i + gamma L_i(y*) / n
  // Every n updates w is refreshed to sum_i w_i to cap float drift.
  void block_update(int i, const std::vector<int>& ystar, double gamma);

  // g^(i) at the current state: lambda <w, w_i> - l_i + H_i(y*; w)/n.
  double block_gap(int i) const;
  double full_gap() const;

  // Dual objective lambda/2 ||w||^2 - sum_i l_i (the quantity minimized).
  double dual_objective() const;

  const Eigen::VectorXd& primal_w() const { return w_; }
  Eigen::VectorXd w_i(int i) const { return W_.col(i); }
  double loss_sum(int i) const { return loss_sums_[i]; }

 private:
  Structure structure_;
  std::vector<SvmInstance> data_;
  int K_;
  int ell_ = 1;
  int d_ = 0;
  int total_dim_ = 0;
  double lambda_;
  bool transition_features_;

  Eigen::VectorXd w_;
  Eigen::MatrixXd W_;  // w_i as columns
  Eigen::VectorXd loss_sums_;
  std::int64_t updates_since_refresh_ = 0;

  int unary_offset(int cls) const { return cls * d_; }
  int trans_offset(int a, int b) const { return K_ * d_ + a * K_ + b; }
  OracleResult multiclass_oracle(int i, const Eigen::Ref<const Eigen::VectorXd>& w) const;
  OracleResult viterbi_oracle(int i, const Eigen::Ref<const Eigen::VectorXd>& w) const;
};

// Example-1 style generator: K class centroids drawn uniformly from the
// unit sphere in R^d; n points assigned round-robin, feature = centroid.
StructSvmProblem svm_synthetic_multiclass(int n, int K, int d, double lambda, std::uint64_t seed);

// Chain generator: per-state centroids on the unit sphere, uniform state
// sequences, per-position feature = centroid(state) + noise.
StructSvmProblem svm_synthetic_chain(int n, int K, int ell, int d, double lambda,
                                     std::uint64_t seed, double noise = 0.1,
                                     bool transition_features = true);

}  // namespace bcfw
