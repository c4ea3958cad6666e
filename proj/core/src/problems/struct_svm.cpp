#include "bcfw/problems/struct_svm.hpp"

#include <algorithm>
#include <cmath>

#include "bcfw/errors.hpp"
#include "bcfw/rng.hpp"

namespace bcfw {

StructSvmProblem::StructSvmProblem(Structure structure, std::vector<SvmInstance> data,
                                   int num_classes, double lambda, bool transition_features)
    : structure_(structure),
      data_(std::move(data)),
      K_(num_classes),
      lambda_(lambda),
      transition_features_(structure == Structure::Chain && transition_features) {
  if (data_.empty()) throw ContractViolation("StructSvmProblem: no training data");
  if (K_ < 1) throw ContractViolation("StructSvmProblem: need at least one class");
  if (!(lambda_ > 0.0)) throw ContractViolation("StructSvmProblem: lambda must be positive");
  d_ = static_cast<int>(data_[0].features.cols());
  ell_ = structure_ == Structure::Chain ? static_cast<int>(data_[0].features.rows()) : 1;
  for (const auto& inst : data_) {
    const int rows = structure_ == Structure::Chain ? ell_ : 1;
    if (inst.features.rows() != rows || inst.features.cols() != d_)
      throw ContractViolation("StructSvmProblem: inconsistent feature shapes");
    if (static_cast<int>(inst.label.size()) != rows)
      throw ContractViolation("StructSvmProblem: label length mismatch");
    for (int y : inst.label)
      if (y < 0 || y >= K_) throw ContractViolation("StructSvmProblem: label out of range");
  }
  total_dim_ = K_ * d_ + (transition_features_ ? K_ * K_ : 0);
  reset();
}

double StructSvmProblem::structured_loss(int i, const std::vector<int>& y) const {
  const auto& truth = data_[i].label;
  if (structure_ == Structure::Multiclass) return y[0] == truth[0] ? 0.0 : 1.0;
  double mismatches = 0.0;
  for (int p = 0; p < ell_; ++p)
    if (y[p] != truth[p]) mismatches += 1.0;
  return mismatches / ell_;
}

Eigen::VectorXd StructSvmProblem::feature_map(int i, const std::vector<int>& y) const {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(total_dim_);
  const auto& F = data_[i].features;
  const int positions = structure_ == Structure::Chain ? ell_ : 1;
  for (int p = 0; p < positions; ++p)
    phi.segment(unary_offset(y[p]), d_) += F.row(p).transpose();
  if (transition_features_) {
    for (int p = 0; p + 1 < ell_; ++p) phi[trans_offset(y[p], y[p + 1])] += 1.0;
  }
  return phi;
}

Eigen::VectorXd StructSvmProblem::psi(int i, const std::vector<int>& y) const {
  return feature_map(i, data_[i].label) - feature_map(i, y);
}

Eigen::VectorXd StructSvmProblem::a_column(int i, const std::vector<int>& y) const {
  return psi(i, y) / (lambda_ * num_blocks());
}

double StructSvmProblem::h_value(int i, const std::vector<int>& y,
                                 const Eigen::Ref<const Eigen::VectorXd>& w) const {
  return structured_loss(i, y) - w.dot(psi(i, y));
}

StructSvmProblem::OracleResult StructSvmProblem::multiclass_oracle(
    int i, const Eigen::Ref<const Eigen::VectorXd>& w) const {
  const auto& inst = data_[i];
  const Eigen::VectorXd x = inst.features.row(0).transpose();
  const int truth = inst.label[0];
  // H(y) = [y != y_i] + <w_y, x> - <w_{y_i}, x>
  const double truth_score = w.segment(unary_offset(truth), d_).dot(x);
  int best = 0;
  double best_h = (0 == truth ? 0.0 : 1.0) + w.segment(unary_offset(0), d_).dot(x) - truth_score;
  for (int y = 1; y < K_; ++y) {
    const double h =
        (y == truth ? 0.0 : 1.0) + w.segment(unary_offset(y), d_).dot(x) - truth_score;
    if (h > best_h) {
      best_h = h;
      best = y;
    }
  }
  return {{best}, best_h};
}

StructSvmProblem::OracleResult StructSvmProblem::viterbi_oracle(
    int i, const Eigen::Ref<const Eigen::VectorXd>& w) const {
  const auto& inst = data_[i];
  // Maximize score(y) = sum_p [Ham_p(y_p)/ell + <w_unary[y_p], x_p>]
  //                   + sum_p trans(y_p, y_{p+1});
  // H(y) = score(y) - <w, phi(x_i, y_i)>.
  Eigen::MatrixXd unary(ell_, K_);
  for (int p = 0; p < ell_; ++p) {
    const Eigen::VectorXd xp = inst.features.row(p).transpose();
    for (int s = 0; s < K_; ++s) {
      unary(p, s) = (s == inst.label[p] ? 0.0 : 1.0 / ell_) +
                    w.segment(unary_offset(s), d_).dot(xp);
    }
  }
  auto trans = [&](int a, int b) -> double {
    return transition_features_ ? w[trans_offset(a, b)] : 0.0;
  };

  // Backward DP. M(p, s) = max_t [trans(s, t) + V(p+1, t)] is kept apart
  // from V so the reconstruction can compare against the exact float max.
  Eigen::MatrixXd V(ell_, K_), M = Eigen::MatrixXd::Zero(ell_, K_);
  for (int s = 0; s < K_; ++s) V(ell_ - 1, s) = unary(ell_ - 1, s);
  for (int p = ell_ - 2; p >= 0; --p) {
    for (int s = 0; s < K_; ++s) {
      double best = trans(s, 0) + V(p + 1, 0);
      for (int t = 1; t < K_; ++t) best = std::max(best, trans(s, t) + V(p + 1, t));
      M(p, s) = best;
      V(p, s) = unary(p, s) + best;
    }
  }

  std::vector<int> y(ell_);
  int s0 = 0;
  for (int s = 1; s < K_; ++s)
    if (V(0, s) > V(0, s0)) s0 = s;
  y[0] = s0;
  for (int p = 0; p + 1 < ell_; ++p) {
    for (int t = 0; t < K_; ++t) {
      if (trans(y[p], t) + V(p + 1, t) == M(p, y[p])) {
        y[p + 1] = t;
        break;
      }
    }
  }

  const double score = V(0, y[0]);
  const double truth_score = w.dot(feature_map(i, inst.label));
  return {std::move(y), score - truth_score};
}

StructSvmProblem::OracleResult StructSvmProblem::max_oracle(
    int i, const Eigen::Ref<const Eigen::VectorXd>& w) const {
  if (!w.allFinite()) throw NumericalError("svm max oracle: non-finite w");
  return structure_ == Structure::Multiclass ? multiclass_oracle(i, w) : viterbi_oracle(i, w);
}

std::int64_t StructSvmProblem::label_count(int i) const {
  (void)i;
  if (structure_ == Structure::Multiclass) return K_;
  std::int64_t c = 1;
  for (int p = 0; p < ell_; ++p) {
    c *= K_;
    if (c > (std::int64_t{1} << 40)) throw CapacityError("label_count: K^ell too large");
  }
  return c;
}

std::vector<int> StructSvmProblem::label_from_index(int i, std::int64_t index) const {
  if (structure_ == Structure::Multiclass) return {static_cast<int>(index)};
  (void)i;
  std::vector<int> y(ell_);
  for (int p = ell_ - 1; p >= 0; --p) {
    y[p] = static_cast<int>(index % K_);
    index /= K_;
  }
  return y;
}

std::int64_t StructSvmProblem::label_to_index(int i, const std::vector<int>& y) const {
  (void)i;
  if (structure_ == Structure::Multiclass) return y[0];
  std::int64_t idx = 0;
  for (int p = 0; p < ell_; ++p) idx = idx * K_ + y[p];
  return idx;
}

void StructSvmProblem::reset() {
  w_ = Eigen::VectorXd::Zero(total_dim_);
  W_ = Eigen::MatrixXd::Zero(total_dim_, num_blocks());
  loss_sums_ = Eigen::VectorXd::Zero(num_blocks());
  updates_since_refresh_ = 0;
}

void StructSvmProblem::block_update(int i, const std::vector<int>& ystar, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw ContractViolation("svm block_update: gamma outside [0,1]");
  const Eigen::VectorXd a = a_column(i, ystar);
  w_ += gamma * (a - W_.col(i));
  W_.col(i) += gamma * (a - W_.col(i));
  loss_sums_[i] = (1.0 - gamma) * loss_sums_[i] +
                  gamma * structured_loss(i, ystar) / num_blocks();
  if (++updates_since_refresh_ >= num_blocks()) {
    w_ = W_.rowwise().sum();
    updates_since_refresh_ = 0;
  }
}

double StructSvmProblem::block_gap(int i) const {
  const OracleResult best = max_oracle(i, w_);
  return lambda_ * w_.dot(W_.col(i)) - loss_sums_[i] + best.h_value / num_blocks();
}

double StructSvmProblem::full_gap() const {
  double g = 0.0;
  for (int i = 0; i < num_blocks(); ++i) g += block_gap(i);
  return g;
}

double StructSvmProblem::dual_objective() const {
  return 0.5 * lambda_ * w_.squaredNorm() - loss_sums_.sum();
}

StructSvmProblem svm_synthetic_multiclass(int n, int K, int d, double lambda,
                                          std::uint64_t seed) {
  if (d < 2) throw ContractViolation("svm_synthetic_multiclass: d must be >= 2");
  rng::Engine eng = rng::make_engine(seed, "svm-multiclass");
  std::vector<Eigen::VectorXd> centroids;
  centroids.reserve(K);
  for (int c = 0; c < K; ++c) {
    Eigen::VectorXd v = rng::gaussian_vector(eng, d);
    const double nrm = v.norm();
    centroids.push_back(nrm > 0 ? Eigen::VectorXd(v / nrm) : Eigen::VectorXd::Unit(d, 0));
  }
  std::vector<SvmInstance> data(n);
  for (int i = 0; i < n; ++i) {
    const int cls = i % K;
    data[i].features = centroids[cls].transpose();
    data[i].label = {cls};
  }
  return StructSvmProblem(StructSvmProblem::Structure::Multiclass, std::move(data), K, lambda);
}

StructSvmProblem svm_synthetic_chain(int n, int K, int ell, int d, double lambda,
                                     std::uint64_t seed, double noise,
                                     bool transition_features) {
  rng::Engine eng = rng::make_engine(seed, "svm-chain");
  std::vector<Eigen::VectorXd> centroids;
  centroids.reserve(K);
  for (int c = 0; c < K; ++c) {
    Eigen::VectorXd v = rng::gaussian_vector(eng, d);
    const double nrm = v.norm();
    centroids.push_back(nrm > 0 ? Eigen::VectorXd(v / nrm) : Eigen::VectorXd::Unit(d, 0));
  }
  std::vector<SvmInstance> data(n);
  for (int i = 0; i < n; ++i) {
    data[i].features.resize(ell, d);
    data[i].label.resize(ell);
    for (int p = 0; p < ell; ++p) {
      const int s = rng::uniform_int(eng, K);
      data[i].label[p] = s;
      Eigen::VectorXd x = centroids[s];
      if (noise > 0.0) x += noise * rng::gaussian_vector(eng, d);
      data[i].features.row(p) = x.transpose();
    }
  }
  return StructSvmProblem(StructSvmProblem::Structure::Chain, std::move(data), K, lambda,
                          transition_features);
}

}  // namespace bcfw
