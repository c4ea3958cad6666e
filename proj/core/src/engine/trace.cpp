#include "bcfw/engine/trace.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bcfw::engine {

std::int64_t Trace::first_iter_with_gap_below(double eps) const {
  for (const auto& r : rows)
    if (std::isfinite(r.gap_full) && r.gap_full <= eps) return r.iter;
  return -1;
}

std::int64_t Trace::first_iter_with_primal_below(double target) const {
  for (const auto& r : rows)
    if (std::isfinite(r.primal) && r.primal <= target) return r.iter;
  return -1;
}

std::string Trace::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# config: " << config_line << "\n";
  os << "iter,epoch,wallclock_ms,primal,gap_est,gap_full,dropped_delay,dropped_collision,tau,T,"
        "seed\n";
  auto cell = [&](double v) {
    if (std::isnan(v)) return std::string();
    std::ostringstream c;
    c << std::setprecision(17) << v;
    return c.str();
  };
  for (const auto& r : rows) {
    os << r.iter << ',' << r.epoch << ',' << r.wallclock_ms << ',' << cell(r.primal) << ','
       << cell(r.gap_est) << ',' << cell(r.gap_full) << ',' << r.dropped_delay << ','
       << r.dropped_collision << ',' << r.tau << ',' << r.workers << ',' << r.seed << '\n';
  }
  return os.str();
}

void Trace::save_csv(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open trace csv for writing: " + path);
  f << to_csv();
}

}  // namespace bcfw::engine
