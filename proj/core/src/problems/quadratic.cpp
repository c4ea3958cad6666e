#include "bcfw/problems/quadratic.hpp"

#include <cmath>

#include "bcfw/errors.hpp"
#include "bcfw/rng.hpp"

namespace bcfw {

QuadraticProblem::QuadraticProblem(Eigen::MatrixXd H, Eigen::VectorXd c, DomainDescriptor domains)
    : domains_(std::move(domains)), H_(std::move(H)), c_(std::move(c)) {
  if (H_.rows() != domains_.total_dim() || H_.cols() != domains_.total_dim())
    throw ContractViolation("QuadraticProblem: H dimension mismatch");
  if (c_.size() != domains_.total_dim())
    throw ContractViolation("QuadraticProblem: c dimension mismatch");
  if ((H_ - H_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ContractViolation("QuadraticProblem: H must be symmetric to 1e-12");
}

QuadraticProblem::QuadraticProblem(std::vector<Eigen::MatrixXd> diag_blocks, Eigen::VectorXd c,
                                   DomainDescriptor domains)
    : domains_(std::move(domains)), diag_blocks_(std::move(diag_blocks)), c_(std::move(c)) {
  if (static_cast<int>(diag_blocks_.size()) != domains_.num_blocks())
    throw ContractViolation("QuadraticProblem: one diagonal block per domain block required");
  for (int i = 0; i < domains_.num_blocks(); ++i) {
    const auto& B = diag_blocks_[i];
    if (B.rows() != domains_.block_dim(i) || B.cols() != domains_.block_dim(i))
      throw ContractViolation("QuadraticProblem: diagonal block dimension mismatch");
    if ((B - B.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw ContractViolation("QuadraticProblem: H must be symmetric to 1e-12");
  }
  if (c_.size() != domains_.total_dim())
    throw ContractViolation("QuadraticProblem: c dimension mismatch");
}

double QuadraticProblem::value(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (diag_blocks_.empty()) return 0.5 * x.dot(H_ * x) + c_.dot(x);
  double v = 0.0;
  for (int i = 0; i < domains_.num_blocks(); ++i) {
    const auto xi = x.segment(domains_.offset(i), domains_.block_dim(i));
    const auto ci = c_.segment(domains_.offset(i), domains_.block_dim(i));
    v += 0.5 * xi.dot(diag_blocks_[i] * xi) + ci.dot(xi);
  }
  return v;
}

void QuadraticProblem::block_gradient(const Eigen::Ref<const Eigen::VectorXd>& x, int i,
                                      Eigen::Ref<Eigen::VectorXd> out) const {
  const int off = domains_.offset(i);
  const int m = domains_.block_dim(i);
  if (diag_blocks_.empty()) {
    out = H_.middleRows(off, m) * x + c_.segment(off, m);
  } else {
    out = diag_blocks_[i] * x.segment(off, m) + c_.segment(off, m);
  }
}

double QuadraticProblem::directional_curvature(const std::vector<int>& S,
                                               const std::vector<Eigen::VectorXd>& dirs) const {
  double q = 0.0;
  for (std::size_t a = 0; a < S.size(); ++a) {
    for (std::size_t b = 0; b < S.size(); ++b) {
      if (!diag_blocks_.empty() && a != b) continue;
      q += dirs[a].dot(block(S[a], S[b]) * dirs[b]);
    }
  }
  return q;
}

Eigen::MatrixXd QuadraticProblem::block(int i, int j) const {
  if (diag_blocks_.empty())
    return H_.block(domains_.offset(i), domains_.offset(j), domains_.block_dim(i),
                    domains_.block_dim(j));
  if (i == j) return diag_blocks_[i];
  return Eigen::MatrixXd::Zero(domains_.block_dim(i), domains_.block_dim(j));
}

QuadraticProblem QuadraticProblem::random_simplex_instance(int n, int block_dim,
                                                           std::uint64_t seed, double scale,
                                                           double ridge) {
  auto desc = DomainDescriptor::simplex_product(n, block_dim);
  const int d = desc.total_dim();
  rng::Engine eng = rng::make_engine(seed, "quad-instance");
  Eigen::MatrixXd G(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) G(r, c) = rng::normal(eng);
  Eigen::MatrixXd H = scale * (G.transpose() * G / d) +
                      ridge * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd c(d);
  for (int r = 0; r < d; ++r) c[r] = scale * rng::normal(eng);
  return QuadraticProblem(std::move(H), std::move(c), std::move(desc));
}

QuadraticProblem QuadraticProblem::random_blockdiag_instance(int n, int block_dim,
                                                             std::uint64_t seed, double scale,
                                                             double ridge) {
  auto desc = DomainDescriptor::simplex_product(n, block_dim);
  rng::Engine eng = rng::make_engine(seed, "quad-blockdiag");
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(n);
  Eigen::VectorXd c(desc.total_dim());
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd G(block_dim, block_dim);
    for (int r = 0; r < block_dim; ++r)
      for (int cc = 0; cc < block_dim; ++cc) G(r, cc) = rng::normal(eng);
    blocks.push_back(scale * (G.transpose() * G / block_dim) +
                     ridge * Eigen::MatrixXd::Identity(block_dim, block_dim));
    for (int r = 0; r < block_dim; ++r) c[desc.offset(i) + r] = scale * rng::normal(eng);
  }
  return QuadraticProblem(std::move(blocks), std::move(c), std::move(desc));
}

}  // namespace bcfw
