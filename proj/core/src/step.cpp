#include "bcfw/step.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "bcfw/errors.hpp"

namespace bcfw {

double step_size(std::int64_t k, int n, int tau) {
  if (tau < 1 || tau > n) throw InvalidConfigError("step_size: tau must lie in [1, n]");
  if (k < 0) throw ContractViolation("step_size: k must be >= 0");
  const double num = 2.0 * n * tau;
  const double den = static_cast<double>(tau) * tau * static_cast<double>(k) + 2.0 * n;
  return std::min(1.0, num / den);
}

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kProjectTol = 1e-6;

void reproject(const BlockDomain& dom, Eigen::Ref<Eigen::VectorXd> v) {
  switch (dom.kind) {
    case BlockDomain::Kind::Simplex: {
      for (int j = 0; j < v.size(); ++j) v[j] = std::max(0.0, v[j]);
      const double s = v.sum();
      if (s > 0.0) v /= s;
      else v.setConstant(1.0 / v.size());
      break;
    }
    case BlockDomain::Kind::L2Ball: {
      const double nrm = v.norm();
      if (nrm > dom.radius) v *= dom.radius / nrm;
      break;
    }
    case BlockDomain::Kind::VertexList:
      break;
  }
}

}  // namespace

void apply_update(BlockVector& x, const DomainDescriptor& desc, const std::vector<int>& S,
                  const std::vector<Eigen::VectorXd>& s, double gamma) {
  if (S.size() != s.size()) throw ContractViolation("apply_update: |S| != |s|");
  if (gamma < 0.0 || gamma > 1.0) throw ContractViolation("apply_update: gamma outside [0, 1]");
  std::unordered_set<int> seen;
  for (int i : S) {
    if (i < 0 || i >= x.num_blocks()) throw ContractViolation("apply_update: block index out of range");
    if (!seen.insert(i).second) throw ContractViolation("apply_update: duplicate block index in S");
  }
  for (std::size_t j = 0; j < S.size(); ++j) {
    const BlockDomain& dom = desc.block(S[j]);
    if (s[j].size() != dom.dim) throw ContractViolation("apply_update: vertex dimension mismatch");
    if (dom.kind != BlockDomain::Kind::VertexList && dom.feasibility_residual(s[j]) > kFeasTol)
      throw FeasibilityError("apply_update: infeasible oracle vertex for block " +
                             std::to_string(S[j]));
  }
  for (std::size_t j = 0; j < S.size(); ++j) {
    auto blk = x.block(S[j]);
    blk = (1.0 - gamma) * blk + gamma * s[j];
    const BlockDomain& dom = desc.block(S[j]);
    const double res = dom.feasibility_residual(blk);
    if (res > kProjectTol)
      throw FeasibilityError("apply_update: block " + std::to_string(S[j]) +
                             " residual " + std::to_string(res) + " exceeds 1e-6");
    if (res > kFeasTol) reproject(dom, blk);
  }
  x.bump_version();
}

namespace {

// Direction as a flat vector plus per-block pieces for curvature queries.
struct Direction {
  Eigen::VectorXd flat;
  std::vector<Eigen::VectorXd> pieces;
  double grad_dot = 0.0;  // <grad f(x), d>
};

Direction make_direction(const DenseProblem& problem, const BlockVector& x,
                         const std::vector<int>& S, const std::vector<Eigen::VectorXd>& s) {
  const DomainDescriptor& desc = problem.domains();
  Direction d;
  d.flat = Eigen::VectorXd::Zero(x.dim());
  d.pieces.reserve(S.size());
  Eigen::VectorXd grad;
  for (std::size_t j = 0; j < S.size(); ++j) {
    const int i = S[j];
    Eigen::VectorXd piece = s[j] - x.block(i);
    d.flat.segment(desc.offset(i), desc.block_dim(i)) = piece;
    grad.resize(desc.block_dim(i));
    problem.block_gradient(x.flat(), i, grad);
    d.grad_dot += grad.dot(piece);
    d.pieces.push_back(std::move(piece));
  }
  return d;
}

double directional_derivative(const DenseProblem& problem, const Eigen::VectorXd& x0,
                              const Direction& d, const std::vector<int>& S, double gamma) {
  const DomainDescriptor& desc = problem.domains();
  Eigen::VectorXd xg = x0 + gamma * d.flat;
  double dot = 0.0;
  Eigen::VectorXd grad;
  for (std::size_t j = 0; j < S.size(); ++j) {
    const int i = S[j];
    grad.resize(desc.block_dim(i));
    problem.block_gradient(xg, i, grad);
    dot += grad.dot(d.pieces[j]);
  }
  return dot;
}

double golden_section(const DenseProblem& problem, const Eigen::VectorXd& x0,
                      const Eigen::VectorXd& dflat) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = problem.value(x0 + c * dflat), fd = problem.value(x0 + d * dflat);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = problem.value(x0 + c * dflat);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = problem.value(x0 + d * dflat);
    }
    if (!std::isfinite(fc) || !std::isfinite(fd))
      throw NumericalError("line_search: non-finite objective along the segment");
  }
  return 0.5 * (a + b);
}

}  // namespace

double line_search(const DenseProblem& problem, const BlockVector& x, const std::vector<int>& S,
                   const std::vector<Eigen::VectorXd>& s) {
  if (S.empty()) return 0.0;
  Direction d = make_direction(problem, x, S, s);
  if (d.flat.squaredNorm() == 0.0) return 0.0;
  if (!std::isfinite(d.grad_dot)) throw NumericalError("line_search: non-finite gradient");
  if (d.grad_dot >= 0.0) return 0.0;  // no descent along the segment

  const double q = problem.directional_curvature(S, d.pieces);
  if (std::isfinite(q)) {
    if (q <= 0.0) return 1.0;  // linear (or concave) along the segment
    return std::clamp(-d.grad_dot / q, 0.0, 1.0);
  }

  // Generic path: bisection on phi'(gamma) = <grad f(x + gamma d), d>.
  double lo = 0.0, hi = 1.0;
  double dhi = directional_derivative(problem, x.flat(), d, S, 1.0);
  if (!std::isfinite(dhi)) return golden_section(problem, x.flat(), d.flat);
  if (dhi <= 0.0) return 1.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double dm = directional_derivative(problem, x.flat(), d, S, mid);
    if (!std::isfinite(dm)) return golden_section(problem, x.flat(), d.flat);
    if (dm > 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bcfw
