#include "bcfw/engine/norm_constants.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "bcfw/engine/delay.hpp"
#include "bcfw/errors.hpp"

namespace bcfw::engine {

double NormConstants::diameter_of_m_blocks(int m) const {
  if (m <= 0) return 0.0;
  const int take = std::min<int>(m, static_cast<int>(sorted_sq_diameters.size()));
  double s = 0.0;
  for (int i = 0; i < take; ++i) s += sorted_sq_diameters[i];
  return std::sqrt(s);
}

NormConstants norm_constants(const DomainDescriptor& desc, const HessianOracle* hessian,
                             int tau) {
  const int n = desc.num_blocks();
  if (tau < 1 || tau > n) throw InvalidConfigError("norm_constants: tau outside [1, n]");
  NormConstants c;
  c.n = n;
  c.tau = tau;
  c.sorted_sq_diameters.resize(n);
  double d1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = desc.block(i).diameter();
    c.sorted_sq_diameters[i] = d * d;
    d1 = std::max(d1, d);
  }
  std::sort(c.sorted_sq_diameters.begin(), c.sorted_sq_diameters.end(), std::greater<>());
  c.D1 = d1;
  c.Dtau = c.diameter_of_m_blocks(tau);
  if (hessian != nullptr) {
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXd Hii = hessian->block(i, i);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Hii + Hii.transpose()));
      l1 = std::max(l1, std::abs(es.eigenvalues().cwiseAbs().maxCoeff()));
    }
    c.L1 = l1;
  }
  return c;
}

DeltaPrediction delta_prediction(const NormConstants& constants, double cf_tau, double kappa,
                                 std::optional<double> kappa_max, int tau,
                                 const DelayModel& model, std::uint64_t seed) {
  DeltaPrediction p;
  if (!constants.L1 || cf_tau <= 0.0) return p;  // L^1 unavailable: not computable
  const double L1 = *constants.L1;
  p.delta_expected = 4.0 * kappa * tau * L1 * constants.D1 * constants.Dtau / cf_tau;

  // E[D^{delay * tau}] under the delay model (Monte-Carlo, seeded).
  if (model.kind == DelayModel::Kind::None || kappa <= 0.0) {
    p.expected_D_delay_tau = 0.0;
  } else {
    rng::Engine eng(rng::sub_seed(seed, "delta-pred"));
    const int samples = 10000;
    double sum = 0.0;
    for (int s = 0; s < samples; ++s) {
      const std::int64_t d = delay_sample(model, eng);
      sum += constants.diameter_of_m_blocks(static_cast<int>(
          std::min<std::int64_t>(d * tau, constants.n)));
    }
    p.expected_D_delay_tau = sum / samples;
  }

  if (kappa_max) {
    const double n = constants.n;
    const double logn = std::log(std::max(3.0, n));
    const double kt = *kappa_max * tau;
    double c_mult;
    if (kt < n / logn) {
      c_mult = 3.0 * logn / std::log(n / kt);
      p.c_regime = "kappa_max*tau < n/log n";
    } else if (kt <= n * logn) {
      c_mult = 3.0 * logn;
      p.c_regime = "kappa_max*tau = O(n log n)";
    } else {
      c_mult = kt / n;
      p.c_regime = "kappa_max*tau >> n log n";
    }
    p.c_multiplier = c_mult;
    p.delta_bounded = c_mult * 4.0 * tau * L1 * constants.D1 * p.expected_D_delay_tau / cf_tau;
  }
  return p;
}

}  // namespace bcfw::engine
