#include "ns1d/core.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace ns1d {

long double alpha_upper_bound_extended() {
  const long double inner = 1.0L + std::cbrt(4.0L);
  return 1.0L + 2.0L / std::cbrt(inner);
}

AlphaReport alpha_check(double alpha) {
  AlphaReport report;
  report.alpha = alpha;
  report.theta = (2.0 * alpha - 1.0) / (3.0 * alpha);
  report.coeff = alpha * std::pow(alpha - 1.0, 3) / 8.0;
  report.upper_bound = kAlphaUpperBound;
  report.admissible = std::isfinite(alpha) && alpha > 2.0 && alpha < kAlphaUpperBound;
  return report;
}

double eta_inverse(double value, double beta) {
  if (std::isnan(value)) return value;
  if (std::isinf(value)) return value > 0 ? value : 0.0;
  // eta(rho) ~ ln(rho) near 0 (or 2 ln rho for beta = 0), so the bracket below
  // is generous: eta(e^-800) is far below any finite target reached in practice.
  double lo = -800.0;
  double hi = 1.0;
  while (eta(std::exp(hi), beta) < value) {
    hi *= 2.0;
    if (hi > 700.0) return std::exp(700.0);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eta(std::exp(mid), beta) < value)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

void Params::validate() const {
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (!(beta >= 0.0)) throw ConfigError("beta must be nonnegative");
  if (weighted) {
    const AlphaReport report = alpha_check(alpha);
    if (!report.admissible) {
      std::ostringstream msg;
      msg.precision(15);
      msg << "alpha = " << alpha << " violates the strict ";
      if (!(alpha > 2.0))
        msg << "lower bound 2 < alpha";
      else
        msg << "upper bound alpha < " << kAlphaUpperBound;
      msg << "; admissible alpha satisfies 2 < alpha < 1 + 2/cbrt(1 + cbrt(4))";
      throw ConfigError(msg.str());
    }
  }
  if (!(half_width > 0.0)) throw ConfigError("L must be positive");
  if (n_cells < 8) throw ConfigError("N must be at least 8");
  if (!(cfl_adv > 0.0 && cfl_adv <= 1.0)) throw ConfigError("cfl_adv must lie in (0, 1]");
  if (!(cfl_visc > 0.0 && cfl_visc <= 0.5)) throw ConfigError("cfl_visc must lie in (0, 0.5]");
  if (!(rho_floor > 0.0)) throw ConfigError("rho_floor must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be finite and >= 0");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
}

} // namespace ns1d
