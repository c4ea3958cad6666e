#include "bcfw/problems/gfl.hpp"

#include <algorithm>
#include <cmath>

#include "bcfw/errors.hpp"
#include "bcfw/rng.hpp"

namespace bcfw {

GflProblem::GflProblem(Eigen::MatrixXd Y, double lambda)
    : Y_(std::move(Y)),
      lambda_(lambda),
      d_(static_cast<int>(Y_.rows())),
      time_points_(static_cast<int>(Y_.cols())) {
  if (time_points_ < 2) throw ContractViolation("GflProblem: need at least two time points");
  if (!(lambda_ > 0.0)) throw ContractViolation("GflProblem: lambda must be positive");
  domains_ = DomainDescriptor::ball_product(time_points_ - 1, d_, lambda_);
}

Eigen::MatrixXd GflProblem::as_matrix(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  return Eigen::Map<const Eigen::MatrixXd>(u.data(), d_, time_points_ - 1);
}

double GflProblem::value(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  const Eigen::MatrixXd U = as_matrix(u);
  // R = U D^T, column r = u_r - u_{r-1} (out-of-range columns are zero).
  double v = 0.0;
  const int n = time_points_;
  for (int r = 0; r < n; ++r) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(d_);
    if (r < n - 1) col += U.col(r);
    if (r >= 1) col -= U.col(r - 1);
    v += 0.5 * col.squaredNorm() - col.dot(Y_.col(r));
  }
  return v;
}

void GflProblem::block_gradient(const Eigen::Ref<const Eigen::VectorXd>& u, int t,
                                Eigen::Ref<Eigen::VectorXd> out) const {
  // grad_t = (U D^T - Y) D_{:,t} = 2 u_t - u_{t-1} - u_{t+1} - (y_t - y_{t+1})
  const int N = time_points_ - 1;
  if (t < 0 || t >= N) throw ContractViolation("gfl gradient: block index out of range");
  const Eigen::MatrixXd U = as_matrix(u);
  out = 2.0 * U.col(t) - Y_.col(t) + Y_.col(t + 1);
  if (t >= 1) out -= U.col(t - 1);
  if (t + 1 < N) out -= U.col(t + 1);
}

double GflProblem::directional_curvature(const std::vector<int>& S,
                                         const std::vector<Eigen::VectorXd>& dirs) const {
  // d^T H d with H_ts = (D^T D)_{ts} I_d: 2 on the diagonal, -1 adjacent.
  double q = 0.0;
  for (std::size_t a = 0; a < S.size(); ++a) {
    q += 2.0 * dirs[a].squaredNorm();
    for (std::size_t b = 0; b < S.size(); ++b) {
      if (std::abs(S[a] - S[b]) == 1) q -= dirs[a].dot(dirs[b]);
    }
  }
  return q;
}

Eigen::MatrixXd GflProblem::block(int i, int j) const {
  double coef = 0.0;
  if (i == j) coef = 2.0;
  else if (std::abs(i - j) == 1) coef = -1.0;
  return coef * Eigen::MatrixXd::Identity(d_, d_);
}

BlockVector GflProblem::initial_point() const { return BlockVector::zeros(domains_); }

Eigen::MatrixXd GflProblem::primal_recover(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  const Eigen::MatrixXd U = as_matrix(u);
  Eigen::MatrixXd X = Y_;
  const int n = time_points_;
  for (int r = 0; r < n; ++r) {
    if (r < n - 1) X.col(r) -= U.col(r);
    if (r >= 1) X.col(r) += U.col(r - 1);
  }
  return X;
}

double GflProblem::primal_objective(const Eigen::MatrixXd& X) const {
  double obj = 0.5 * (X - Y_).squaredNorm();
  for (int t = 0; t + 1 < time_points_; ++t)
    obj += lambda_ * (X.col(t) - X.col(t + 1)).norm();
  return obj;
}

double GflProblem::dual_objective(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  return -value(u);
}

GflSynthetic gfl_synthetic(int d, int n, int segments, double sigma, std::uint64_t seed) {
  if (segments < 1 || segments > n)
    throw ContractViolation("gfl_synthetic: segments must lie in [1, n]");
  rng::Engine eng = rng::make_engine(seed, "gfl-data");
  GflSynthetic out;
  out.Y.resize(d, n);

  // Distinct interior change points, shared across dimensions.
  std::vector<int> cuts;
  if (segments > 1) {
    std::vector<int> all(n - 1);
    for (int i = 0; i < n - 1; ++i) all[i] = i + 1;
    for (int j = 0; j < segments - 1; ++j)
      std::swap(all[j], all[j + rng::uniform_int(eng, static_cast<int>(all.size()) - j)]);
    cuts.assign(all.begin(), all.begin() + (segments - 1));
    std::sort(cuts.begin(), cuts.end());
  }
  out.change_points = cuts;

  std::vector<int> bounds;
  bounds.push_back(0);
  for (int c : cuts) bounds.push_back(c);
  bounds.push_back(n);

  for (int s = 0; s + 1 < static_cast<int>(bounds.size()); ++s) {
    const Eigen::VectorXd mean = rng::gaussian_vector(eng, d);
    for (int t = bounds[s]; t < bounds[s + 1]; ++t) out.Y.col(t) = mean;
  }
  if (sigma > 0.0) {
    for (int t = 0; t < n; ++t)
      for (int r = 0; r < d; ++r) out.Y(r, t) += sigma * rng::normal(eng);
  }
  return out;
}

}  // namespace bcfw
