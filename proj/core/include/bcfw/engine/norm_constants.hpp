#pragma once

#include <optional>
#include <string>

#include "bcfw/domain.hpp"
#include "bcfw/engine/config.hpp"
#include "bcfw/problem.hpp"

namespace bcfw::engine {

// Euclidean-norm diameter/Lipschitz constants of the product domain:
//   D^1   = max_i diam(M_i)
//   D^tau = max_{|S|=tau} sqrt(sum_{i in S} diam(M_i)^2)
//   L^1   = max_i ||H_ii||_2 (unavailable without H)
// They feed the delay-to-approximation predictions below; purely
// diagnostic, reported next to measured convergence degradation.
struct NormConstants {
  int n = 0;
  int tau = 1;
  double D1 = 0.0;
  double Dtau = 0.0;
  std::optional<double> L1;

  // Largest-diameters prefix for D^m queries (m blocks).
  double diameter_of_m_blocks(int m) const;
  std::vector<double> sorted_sq_diameters;  // descending
};

NormConstants norm_constants(const DomainDescriptor& desc, const HessianOracle* hessian, int tau);

struct DeltaPrediction {
  // delta = 4 kappa tau L^1 D^1 D^tau / C_f^tau (expected-delay form).
  std::optional<double> delta_expected;
  // delta = c_{n,tau kappa_max} * 4 tau L^1 D^1 E[D^{delay*tau}] / C_f^tau
  // (bounded-delay form); absent without kappa_max.
  std::optional<double> delta_bounded;
  std::optional<double> c_multiplier;
  std::string c_regime;  // which branch of the case analysis applied
  double expected_D_delay_tau = 0.0;
};

DeltaPrediction delta_prediction(const NormConstants& constants, double cf_tau, double kappa,
                                 std::optional<double> kappa_max, int tau,
                                 const DelayModel& model, std::uint64_t seed = 9001);

}  // namespace bcfw::engine
