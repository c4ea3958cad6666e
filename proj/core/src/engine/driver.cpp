#include "bcfw/engine/driver.hpp"

#include <algorithm>

#include "bcfw/errors.hpp"
#include "bcfw/gap.hpp"
#include "bcfw/oracles.hpp"
#include "bcfw/step.hpp"

namespace bcfw::engine {

namespace {

void split_batch(const std::vector<BlockUpdate>& batch, std::vector<int>& S,
                 std::vector<Eigen::VectorXd>& payloads) {
  S.clear();
  payloads.clear();
  S.reserve(batch.size());
  payloads.reserve(batch.size());
  for (const auto& u : batch) {
    S.push_back(u.block);
    payloads.push_back(u.payload);
  }
}

}  // namespace

DenseDriver::DenseDriver(const DenseProblem& problem)
    : problem_(problem), x_(problem.initial_point()) {
  block_locks_.reserve(problem_.num_blocks());
  for (int i = 0; i < problem_.num_blocks(); ++i)
    block_locks_.push_back(std::make_unique<std::mutex>());
}

Eigen::VectorXd DenseDriver::oracle(int block,
                                    const Eigen::Ref<const Eigen::VectorXd>& params) const {
  return oracle_with_gap(block, params, nullptr);
}

Eigen::VectorXd DenseDriver::oracle_with_gap(int block,
                                             const Eigen::Ref<const Eigen::VectorXd>& params,
                                             double* gap_out) const {
  const DomainDescriptor& desc = problem_.domains();
  Eigen::VectorXd grad(desc.block_dim(block));
  problem_.block_gradient(params, block, grad);
  Eigen::VectorXd s = lmo(desc.block(block), grad);
  if (gap_out != nullptr)
    *gap_out = (params.segment(desc.offset(block), desc.block_dim(block)) - s).dot(grad);
  return s;
}

void DenseDriver::apply(const std::vector<BlockUpdate>& batch, double gamma) {
  std::vector<int> S;
  std::vector<Eigen::VectorXd> payloads;
  split_batch(batch, S, payloads);
  apply_update(x_, problem_.domains(), S, payloads, gamma);
}

void DenseDriver::apply_block_lockfree(const BlockUpdate& update, double gamma) {
  const int i = update.block;
  std::lock_guard<std::mutex> lock(*block_locks_[i]);
  auto blk = x_.block(i);
  blk = (1.0 - gamma) * blk + gamma * update.payload;
}

double DenseDriver::line_search_gamma(const std::vector<BlockUpdate>& batch) const {
  std::vector<int> S;
  std::vector<Eigen::VectorXd> payloads;
  split_batch(batch, S, payloads);
  return line_search(problem_, x_, S, payloads);
}

double DenseDriver::block_gap_current(int block) const {
  return block_gap(problem_, x_, block);
}

double DenseDriver::full_gap_current() const { return full_gap(problem_, x_); }

void DenseDriver::accumulate_average() {
  // k-weighted running average: xbar_k = (k-1)/(k+1) xbar_{k-1} + 2/(k+1) x_k.
  ++average_count_;
  const double k = static_cast<double>(average_count_);
  if (average_count_ == 1) {
    average_ = x_.flat();
  } else {
    average_ = average_ * ((k - 1.0) / (k + 1.0)) + x_.flat() * (2.0 / (k + 1.0));
  }
}

double DenseDriver::averaged_objective() const {
  if (average_count_ == 0) return std::numeric_limits<double>::quiet_NaN();
  return problem_.value(average_);
}

SvmDriver::SvmDriver(StructSvmProblem& problem) : problem_(problem) {}

std::vector<int> SvmDriver::decode_label(const Eigen::VectorXd& payload) {
  std::vector<int> y(payload.size());
  for (int p = 0; p < payload.size(); ++p) y[p] = static_cast<int>(payload[p]);
  return y;
}

Eigen::VectorXd SvmDriver::oracle(int block,
                                  const Eigen::Ref<const Eigen::VectorXd>& params) const {
  return oracle_with_gap(block, params, nullptr);
}

Eigen::VectorXd SvmDriver::oracle_with_gap(int block,
                                           const Eigen::Ref<const Eigen::VectorXd>& params,
                                           double* gap_out) const {
  const auto res = problem_.max_oracle(block, params);
  if (gap_out != nullptr) {
    // lambda <w, w_i> - l_i + H_i(y*; w)/n, with w_i and l_i from the
    // current state (valid because sync oracles run at the live version).
    *gap_out = problem_.lambda() * params.dot(problem_.w_i(block)) - problem_.loss_sum(block) +
               res.h_value / problem_.num_blocks();
  }
  Eigen::VectorXd payload(res.label.size());
  for (std::size_t p = 0; p < res.label.size(); ++p) payload[p] = res.label[p];
  return payload;
}

void SvmDriver::apply(const std::vector<BlockUpdate>& batch, double gamma) {
  for (std::size_t j = 1; j < batch.size(); ++j)
    if (batch[j].block == batch[j - 1].block)
      throw ContractViolation("SvmDriver::apply: duplicate block in batch");
  for (const auto& u : batch) problem_.block_update(u.block, decode_label(u.payload), gamma);
}

void SvmDriver::apply_block_lockfree(const BlockUpdate& update, double gamma) {
  std::lock_guard<std::mutex> lock(apply_lock_);
  problem_.block_update(update.block, decode_label(update.payload), gamma);
}

double SvmDriver::line_search_gamma(const std::vector<BlockUpdate>& batch) const {
  // f(gamma) = lambda/2 ||w + gamma delta||^2 - (b'alpha + gamma db) with
  // delta = sum_i (A_{i,y*} - w_i) and db = sum_i (L_i(y*)/n - l_i).
  const double lambda = problem_.lambda();
  const int n = problem_.num_blocks();
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(problem_.total_dim());
  double db = 0.0;
  for (const auto& u : batch) {
    const auto y = decode_label(u.payload);
    delta += problem_.a_column(u.block, y) - problem_.w_i(u.block);
    db += problem_.structured_loss(u.block, y) / n - problem_.loss_sum(u.block);
  }
  const double den = lambda * delta.squaredNorm();
  if (den <= 0.0) return 0.0;
  const double num = db - lambda * problem_.primal_w().dot(delta);
  return std::clamp(num / den, 0.0, 1.0);
}

}  // namespace bcfw::engine
