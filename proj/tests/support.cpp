#include "support.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "bcfw/errors.hpp"

namespace bcfw::testing {

Eigen::VectorXd project_simplex(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    css += u[i];
    const double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      theta = t;
    }
  }
  (void)rho;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(0.0, v[i] - theta);
  return out;
}

namespace {

Eigen::VectorXd project_domain(const DomainDescriptor& desc,
                               const Eigen::Ref<const Eigen::VectorXd>& v) {
  Eigen::VectorXd out(v.size());
  for (int i = 0; i < desc.num_blocks(); ++i) {
    const auto& dom = desc.block(i);
    const auto vi = v.segment(desc.offset(i), dom.dim);
    switch (dom.kind) {
      case BlockDomain::Kind::Simplex:
        out.segment(desc.offset(i), dom.dim) = project_simplex(vi);
        break;
      case BlockDomain::Kind::L2Ball: {
        const double nrm = vi.norm();
        out.segment(desc.offset(i), dom.dim) =
            nrm > dom.radius ? Eigen::VectorXd(vi * (dom.radius / nrm)) : Eigen::VectorXd(vi);
        break;
      }
      case BlockDomain::Kind::VertexList:
        throw ContractViolation("qp_brute_force: vertex-list projection not supported");
    }
  }
  return out;
}

}  // namespace

QpSolution qp_brute_force(const QuadraticProblem& problem, int max_iters, double tol) {
  const DomainDescriptor& desc = problem.domains();
  const int d = desc.total_dim();
  Eigen::MatrixXd H(d, d);
  for (int i = 0; i < desc.num_blocks(); ++i)
    for (int j = 0; j < desc.num_blocks(); ++j)
      H.block(desc.offset(i), desc.offset(j), desc.block_dim(i), desc.block_dim(j)) =
          problem.block(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  const double L = std::max(1e-12, es.eigenvalues().maxCoeff());
  const Eigen::VectorXd& c = problem.linear_term();

  Eigen::VectorXd x = BlockVector::centers(desc).flat();
  Eigen::VectorXd y = x;
  double t = 1.0;
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXd grad = H * y + c;
    const Eigen::VectorXd xn = project_domain(desc, y - grad / L);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = xn + ((t - 1.0) / tn) * (xn - x);
    const double move = (xn - x).lpNorm<Eigen::Infinity>();
    x = xn;
    t = tn;
    if (move < tol && it > 32) break;
  }
  // Polish with plain projected-gradient steps.
  for (int it = 0; it < 2000; ++it) {
    const Eigen::VectorXd xn = project_domain(desc, x - (H * x + c) / L);
    if ((xn - x).lpNorm<Eigen::Infinity>() < tol / 10) {
      x = xn;
      break;
    }
    x = xn;
  }
  return {x, problem.value(x)};
}

Eigen::VectorXd fd_block_gradient(const DenseProblem& problem,
                                  const Eigen::Ref<const Eigen::VectorXd>& x, int i, double h) {
  const DomainDescriptor& desc = problem.domains();
  Eigen::VectorXd g(desc.block_dim(i));
  Eigen::VectorXd xp = x, xm = x;
  for (int j = 0; j < desc.block_dim(i); ++j) {
    const int idx = desc.offset(i) + j;
    xp[idx] = x[idx] + h;
    xm[idx] = x[idx] - h;
    g[j] = (problem.value(xp) - problem.value(xm)) / (2.0 * h);
    xp[idx] = x[idx];
    xm[idx] = x[idx];
  }
  return g;
}

BlockVector random_feasible(const DomainDescriptor& desc, rng::Engine& eng) {
  BlockVector x = BlockVector::zeros(desc);
  for (int i = 0; i < desc.num_blocks(); ++i) x.block(i) = desc.block(i).sample_point(eng);
  return x;
}

ExplicitAlphaSim::ExplicitAlphaSim(const StructSvmProblem& problem) : problem_(problem) {
  const int n = problem.num_blocks();
  A_.resize(n);
  b_.resize(n);
  alpha_.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto count = problem.label_count(i);
    if (count > 4096) throw CapacityError("ExplicitAlphaSim: label space too large");
    A_[i].resize(problem.total_dim(), count);
    b_[i].resize(count);
    for (std::int64_t y = 0; y < count; ++y) {
      const auto label = problem.label_from_index(i, y);
      A_[i].col(y) = problem.a_column(i, label);
      b_[i][y] = problem.structured_loss(i, label) / n;
    }
    // Start at the corner of the true label (the bookkeeping's init).
    alpha_[i] = Eigen::VectorXd::Zero(count);
    alpha_[i][problem.label_to_index(i, problem.instance(i).label)] = 1.0;
  }
}

void ExplicitAlphaSim::apply(int i, const std::vector<int>& ystar, double gamma) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(alpha_[i].size());
  e[problem_.label_to_index(i, ystar)] = 1.0;
  alpha_[i] = (1.0 - gamma) * alpha_[i] + gamma * e;
}

Eigen::VectorXd ExplicitAlphaSim::w() const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(problem_.total_dim());
  for (int i = 0; i < problem_.num_blocks(); ++i) w += A_[i] * alpha_[i];
  return w;
}

Eigen::VectorXd ExplicitAlphaSim::w_i(int i) const { return A_[i] * alpha_[i]; }

double ExplicitAlphaSim::loss_sum(int i) const { return b_[i].dot(alpha_[i]); }

double ExplicitAlphaSim::objective() const {
  double bdot = 0.0;
  for (int i = 0; i < problem_.num_blocks(); ++i) bdot += loss_sum(i);
  return 0.5 * problem_.lambda() * w().squaredNorm() - bdot;
}

double ExplicitAlphaSim::block_gap(int i) const {
  // grad_(i) entries: lambda <A_{i,y}, w> - b_{i,y}
  const Eigen::VectorXd wv = w();
  const Eigen::VectorXd grad = problem_.lambda() * (A_[i].transpose() * wv) - b_[i];
  return alpha_[i].dot(grad) - grad.minCoeff();
}

std::unique_ptr<QuadraticProblem> ExplicitAlphaSim::materialize() const {
  const int n = problem_.num_blocks();
  std::vector<BlockDomain> doms;
  int m = 0;
  for (int i = 0; i < n; ++i) {
    doms.push_back(BlockDomain::simplex(static_cast<int>(alpha_[i].size())));
    m += static_cast<int>(alpha_[i].size());
  }
  Eigen::MatrixXd A(problem_.total_dim(), m);
  Eigen::VectorXd b(m);
  int off = 0;
  for (int i = 0; i < n; ++i) {
    A.middleCols(off, A_[i].cols()) = A_[i];
    b.segment(off, b_[i].size()) = b_[i];
    off += static_cast<int>(A_[i].cols());
  }
  Eigen::MatrixXd H = problem_.lambda() * (A.transpose() * A);
  H = 0.5 * (H + H.transpose());
  return std::make_unique<QuadraticProblem>(std::move(H), Eigen::VectorXd(-b),
                                            DomainDescriptor(std::move(doms)));
}

}  // namespace bcfw::testing
