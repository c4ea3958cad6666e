#pragma once

#include <Eigen/Core>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bcfw/block_vector.hpp"
#include "bcfw/engine/batch.hpp"
#include "bcfw/problem.hpp"
#include "bcfw/problems/struct_svm.hpp"

namespace bcfw::engine {

// Uniform view of an iterate for the solver drivers. Dense problems carry
// the iterate itself; the structural SVM carries the primal bookkeeping
// (w, w_i, loss sums) and exchanges encoded labels as payloads. Oracles
// are pure and thread-safe; `apply` is reserved for the single applier.
class IterateDriver {
 public:
  virtual ~IterateDriver() = default;

  virtual int num_blocks() const = 0;
  virtual std::string problem_name() const = 0;

  // Copy of the worker-visible parameters at the current version.
  virtual Eigen::VectorXd snapshot() const = 0;
  // Reference to the live shared parameters (lock-free workers read this
  // without copying; torn reads are part of that mode's semantics).
  virtual const Eigen::VectorXd& shared_params() const = 0;

  virtual Eigen::VectorXd oracle(int block,
                                 const Eigen::Ref<const Eigen::VectorXd>& params) const = 0;

  // Oracle plus the block gap at `params` (only meaningful when `params`
  // is the current version — that is the synchronous mode's free
  // estimator). gap_out may be null.
  virtual Eigen::VectorXd oracle_with_gap(int block,
                                          const Eigen::Ref<const Eigen::VectorXd>& params,
                                          double* gap_out) const = 0;

  // Batch update with a common step; batch blocks are pairwise distinct
  // and sorted ascending.
  virtual void apply(const std::vector<BlockUpdate>& batch, double gamma) = 0;

  // One-block update with block-granular synchronization (lock-free mode).
  virtual void apply_block_lockfree(const BlockUpdate& update, double gamma) = 0;

  // Exact line-search step for the batch from the current state.
  virtual double line_search_gamma(const std::vector<BlockUpdate>& batch) const = 0;

  virtual double objective() const = 0;
  virtual double block_gap_current(int block) const = 0;
  virtual double full_gap_current() const = 0;

  virtual bool supports_averaging() const { return false; }
  virtual void accumulate_average() {}
  virtual double averaged_objective() const {
    return std::numeric_limits<double>::quiet_NaN();
  }
};

class DenseDriver : public IterateDriver {
 public:
  explicit DenseDriver(const DenseProblem& problem);

  int num_blocks() const override { return problem_.num_blocks(); }
  std::string problem_name() const override { return problem_.name(); }
  Eigen::VectorXd snapshot() const override { return x_.flat(); }
  const Eigen::VectorXd& shared_params() const override { return x_.flat(); }
  Eigen::VectorXd oracle(int block,
                         const Eigen::Ref<const Eigen::VectorXd>& params) const override;
  Eigen::VectorXd oracle_with_gap(int block, const Eigen::Ref<const Eigen::VectorXd>& params,
                                  double* gap_out) const override;
  void apply(const std::vector<BlockUpdate>& batch, double gamma) override;
  void apply_block_lockfree(const BlockUpdate& update, double gamma) override;
  double line_search_gamma(const std::vector<BlockUpdate>& batch) const override;
  double objective() const override { return problem_.value(x_.flat()); }
  double block_gap_current(int block) const override;
  double full_gap_current() const override;

  bool supports_averaging() const override { return true; }
  void accumulate_average() override;
  double averaged_objective() const override;

  const BlockVector& iterate() const { return x_; }
  const DenseProblem& problem() const { return problem_; }

 private:
  const DenseProblem& problem_;
  BlockVector x_;
  std::vector<std::unique_ptr<std::mutex>> block_locks_;
  Eigen::VectorXd average_;
  std::int64_t average_count_ = 0;
};

class SvmDriver : public IterateDriver {
 public:
  explicit SvmDriver(StructSvmProblem& problem);

  int num_blocks() const override { return problem_.num_blocks(); }
  std::string problem_name() const override {
    return problem_.structure() == StructSvmProblem::Structure::Multiclass ? "svm-multiclass"
                                                                           : "svm-chain";
  }
  Eigen::VectorXd snapshot() const override { return problem_.primal_w(); }
  const Eigen::VectorXd& shared_params() const override { return problem_.primal_w(); }
  Eigen::VectorXd oracle(int block,
                         const Eigen::Ref<const Eigen::VectorXd>& params) const override;
  Eigen::VectorXd oracle_with_gap(int block, const Eigen::Ref<const Eigen::VectorXd>& params,
                                  double* gap_out) const override;
  void apply(const std::vector<BlockUpdate>& batch, double gamma) override;
  void apply_block_lockfree(const BlockUpdate& update, double gamma) override;
  double line_search_gamma(const std::vector<BlockUpdate>& batch) const override;
  double objective() const override { return problem_.dual_objective(); }
  double block_gap_current(int block) const override { return problem_.block_gap(block); }
  double full_gap_current() const override { return problem_.full_gap(); }

  static std::vector<int> decode_label(const Eigen::VectorXd& payload);

 private:
  StructSvmProblem& problem_;
  std::mutex apply_lock_;  // the primal accumulator w is global state
};

}  // namespace bcfw::engine
