#include "hyopt/mga/kepler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hyopt/errors.hpp"

namespace hyopt::mga {

double solve_kepler(double mean_anomaly, double eccentricity) {
  const double e = eccentricity;
  if (!(e >= 0.0 && e < 1.0)) {
    throw ValidationError("solve_kepler: eccentricity must lie in [0, 1), got " +
                          std::to_string(e));
  }
  if (!std::isfinite(mean_anomaly)) throw ValidationError("solve_kepler: non-finite mean anomaly");

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double turns = std::round(mean_anomaly / two_pi);
  const double m = mean_anomaly - two_pi * turns;

  // f(E) = E - e sin E - m is increasing and changes sign on [m - e, m + e].
  double lo = m - e;
  double hi = m + e;
  double E = std::clamp(m + e * std::sin(m), lo, hi);
  for (int iter = 0; iter < 50; ++iter) {
    const double f = E - e * std::sin(E) - m;
    if (std::abs(f) <= 2e-16 * std::max(1.0, std::abs(m))) break;
    if (f > 0.0) {
      hi = E;
    } else {
      lo = E;
    }
    double next = E - f / (1.0 - e * std::cos(E));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == E) break;
    E = next;
  }

  const double full = E + two_pi * turns;
  const double residual = std::abs(full - e * std::sin(full) - mean_anomaly);
  if (!(residual < 1e-12)) throw ConvergenceError("solve_kepler: no convergence", residual);
  return full;
}

}  // namespace hyopt::mga
