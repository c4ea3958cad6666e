#include "bcfw/oracles.hpp"

#include <cmath>
#include <limits>

#include "bcfw/errors.hpp"

namespace bcfw {

int lmo_simplex_index(const Eigen::Ref<const Eigen::VectorXd>& g) {
  if (g.size() == 0) throw ContractViolation("lmo_simplex: empty gradient block");
  if (!g.allFinite()) throw NumericalError("lmo_simplex: non-finite gradient");
  int best = 0;
  for (int j = 1; j < g.size(); ++j)
    if (g[j] < g[best]) best = j;
  return best;
}

Eigen::VectorXd lmo_simplex(const Eigen::Ref<const Eigen::VectorXd>& g) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(g.size());
  e[lmo_simplex_index(g)] = 1.0;
  return e;
}

Eigen::VectorXd lmo_l2ball(const Eigen::Ref<const Eigen::VectorXd>& g, double radius) {
  if (!(radius > 0.0)) throw ContractViolation("lmo_l2ball: radius must be positive");
  if (!g.allFinite()) throw NumericalError("lmo_l2ball: non-finite gradient");
  const double nrm = g.norm();
  if (nrm == 0.0) return Eigen::VectorXd::Zero(g.size());
  return g * (-radius / nrm);
}

int lmo_vertex_list_index(const Eigen::Ref<const Eigen::VectorXd>& g,
                          const Eigen::MatrixXd& vertices) {
  if (vertices.rows() == 0) throw ContractViolation("lmo_vertex_list: empty vertex list");
  if (!g.allFinite()) throw NumericalError("lmo_vertex_list: non-finite gradient");
  int best = 0;
  double best_val = vertices.row(0).dot(g);
  for (int j = 1; j < vertices.rows(); ++j) {
    const double v = vertices.row(j).dot(g);
    if (v < best_val) {
      best_val = v;
      best = j;
    }
  }
  return best;
}

Eigen::VectorXd lmo_vertex_list(const Eigen::Ref<const Eigen::VectorXd>& g,
                                const Eigen::MatrixXd& vertices) {
  return vertices.row(lmo_vertex_list_index(g, vertices)).transpose();
}

Eigen::VectorXd lmo(const BlockDomain& domain, const Eigen::Ref<const Eigen::VectorXd>& g) {
  switch (domain.kind) {
    case BlockDomain::Kind::Simplex: return lmo_simplex(g);
    case BlockDomain::Kind::L2Ball: return lmo_l2ball(g, domain.radius);
    case BlockDomain::Kind::VertexList: return lmo_vertex_list(g, domain.vertices);
  }
  throw ContractViolation("lmo: unknown domain kind");
}

ApproxOracle::ApproxOracle(double delta_target, std::uint64_t seed)
    : delta_target_(delta_target), eng_(seed) {
  if (delta_target < 0.0) throw InvalidConfigError("ApproxOracle: delta_target must be >= 0");
}

Eigen::VectorXd ApproxOracle::solve(const BlockDomain& domain,
                                    const Eigen::Ref<const Eigen::VectorXd>& g, double budget) {
  if (budget < 0.0)
    throw InvalidConfigError("ApproxOracle: budget requires worse-than-random output");
  Eigen::VectorXd exact = lmo(domain, g);
  if (delta_target_ == 0.0) return exact;

  // Mean suboptimality of a uniformly random vertex.
  const int count = domain.vertex_count();
  const double exact_val = exact.dot(g);
  double mean_val = 0.0;
  for (int j = 0; j < count; ++j) mean_val += domain.vertex(j).dot(g);
  mean_val /= count;
  const double mean_subopt = mean_val - exact_val;

  // Exact with probability p, random vertex otherwise; expected
  // suboptimality (1-p) * mean_subopt must stay within the budget. The
  // random branch is capped at 1/2.
  double p = 0.5;
  if (mean_subopt > 0.0) p = std::max(0.5, 1.0 - budget / mean_subopt);
  if (rng::uniform(eng_) < p) return exact;
  return domain.vertex(rng::uniform_int(eng_, count));
}

}  // namespace bcfw
