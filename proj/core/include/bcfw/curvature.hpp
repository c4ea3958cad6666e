#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcfw/domain.hpp"
#include "bcfw/problem.hpp"

namespace bcfw {

struct CurvatureOptions {
  // Exact enumeration limits; beyond these, Monte-Carlo sampling kicks in
  // (or a CapacityError if exact mode was demanded).
  std::int64_t max_vertex_pairs = 4096;
  std::int64_t max_subsets = 100000;
  int mc_samples = 10000;
  std::uint64_t seed = 12345;
};

struct CurvatureEstimate {
  double value = 0.0;
  bool exact = false;       // sampled values are lower bounds
  double stderr_ = 0.0;     // Monte-Carlo standard error (0 in exact mode)
  std::string method;       // "exact-vertex-enumeration" or "monte-carlo"
};

// Set curvature C_f^(S) of a problem with matrix H. Exact mode maximizes
// (s - u)^T H_S (s - u) over vertex pairs of M^(S), which attains the sup
// for quadratics; it requires enumerable blocks and respects
// options.max_vertex_pairs (CapacityError beyond). demand_exact=false
// falls back to seeded sampling and flags the result as a lower bound.
CurvatureEstimate set_curvature(const HessianOracle& H, const DomainDescriptor& desc,
                                const std::vector<int>& S, const CurvatureOptions& options = {},
                                bool demand_exact = true);

// Definitional sampler for problems without H: maximizes
// (2/gamma^2)(f(y) - f(x) - <y-x, grad_S f(x)>) over sampled (x, s, gamma).
// Always a lower bound.
CurvatureEstimate set_curvature_sampled_definition(const DenseProblem& problem,
                                                   const std::vector<int>& S, int samples,
                                                   std::uint64_t seed);

// Expected set curvature C_f^tau: exact average over all C(n, tau) subsets
// when the count is within options.max_subsets, else a Monte-Carlo mean
// with its standard error.
CurvatureEstimate expected_set_curvature(const HessianOracle& H, const DomainDescriptor& desc,
                                         int tau, const CurvatureOptions& options = {});

// Boundedness / incoherence constants: B_i = sup x_i^T H_ii x_i,
// mu_ij = sup x_i^T H_ij x_j, plus their uniform means B and mu.
// Enumerable blocks maximize over vertices; balls use the closed form
// radius^2 * ||H block||_2 (radius_i * radius_j * sigma_max for mu).
struct BoundednessIncoherence {
  Eigen::VectorXd B_i;
  Eigen::MatrixXd mu;  // mu(i,j) for i != j; diagonal is 0
  double B = 0.0;
  double mu_mean = 0.0;
};

BoundednessIncoherence boundedness_incoherence(const HessianOracle& H,
                                               const DomainDescriptor& desc,
                                               const CurvatureOptions& options = {});

// Theorem-style upper bound 4 * (tau*B + tau*(tau-1)*mu).
double theorem3_bound(int tau, double B, double mu);

// True iff the matrix with B_i on the diagonal and mu_ij off-diagonal is
// symmetric diagonally dominant; in that regime C_f^tau grows linearly in
// tau and mini-batching gives linear speedup.
bool sdd_speedup_check(const Eigen::VectorXd& B_i, const Eigen::MatrixXd& mu);

struct CurvatureReportRow {
  int tau = 0;
  double cf_tau = 0.0;
  double bound = 0.0;       // 4(tau B + tau(tau-1) mu)
  std::string method;
  double stderr_ = 0.0;
  bool within_bound = true;
};

struct CurvatureReport {
  std::vector<CurvatureReportRow> rows;
  BoundednessIncoherence constants;
  bool sdd = false;

  // CSV columns: tau, cf_tau, bound, method, stderr.
  std::string to_csv() const;
  std::string summary() const;
};

CurvatureReport curvature_report(const HessianOracle& H, const DomainDescriptor& desc,
                                 const std::vector<int>& taus,
                                 const CurvatureOptions& options = {});

}  // namespace bcfw
