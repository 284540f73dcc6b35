#include "hyopt/mga/flyby.hpp"

#include <algorithm>
#include <cmath>

#include "hyopt/errors.hpp"

namespace hyopt::mga {

namespace {

double half_turn(double rp, double v, double mu) { return std::asin(mu / (mu + rp * v * v)); }

// d/d(rp) of half_turn.
double half_turn_slope(double rp, double v, double mu) {
  const double q = mu / (mu + rp * v * v);
  return -(q * q * v * v / mu) / std::sqrt(1.0 - q * q);
}

}  // namespace

double turn_residual(double rp, double vin, double vout, double mu, double turn) {
  return half_turn(rp, vin, mu) + half_turn(rp, vout, mu) - turn;
}

SwingbyResult powered_swingby_dv(const Vec3& vinf_in, const Vec3& vinf_out,
                                 const BodyModel& body, const SwingbyOptions& options) {
  const double vin = vinf_in.norm();
  const double vout = vinf_out.norm();
  if (!(vin > 0.0) || !(vout > 0.0)) {
    throw DegenerateGeometryError("powered_swingby_dv: zero excess velocity at " + body.name);
  }
  const double mu = body.mu;
  const double cos_turn = std::clamp(vinf_in.dot(vinf_out) / (vin * vout), -1.0, 1.0);
  const double turn = std::acos(cos_turn);

  const double r_min = body.min_flyby_radius;
  const double r_cap = options.cap_factor * r_min;
  auto g = [&](double rp) { return turn_residual(rp, vin, vout, mu, turn); };

  SwingbyResult out{};
  out.turn_required = turn;
  out.turn_available = g(r_min) + turn;

  if (g(r_min) < 0.0) {
    out.periapsis = r_min;
    out.penalty = options.penalty_slope * (turn - out.turn_available);
  } else if (g(r_cap) >= 0.0) {
    out.periapsis = r_cap;
  } else {
    // g decreases in rp; Newton on log(rp), falling back to bisection.
    double lo = std::log(r_min);
    double hi = std::log(r_cap);
    double u = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      const double rp = std::exp(u);
      const double value = g(rp);
      if (std::abs(value) < 1e-14) break;
      if (value > 0.0) {
        lo = u;
      } else {
        hi = u;
      }
      const double slope = rp * (half_turn_slope(rp, vin, mu) + half_turn_slope(rp, vout, mu));
      double next = u - value / slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == u || hi - lo < 1e-15) break;
      u = next;
    }
    out.periapsis = std::exp(u);
  }

  const double boost = 2.0 * mu / out.periapsis;
  out.delta_v =
      std::abs(std::sqrt(vout * vout + boost) - std::sqrt(vin * vin + boost)) + out.penalty;
  return out;
}

double insertion_dv(double vinf, double rp, double e, double mu) {
  if (!(vinf >= 0.0)) throw ValidationError("insertion_dv: vinf must be non-negative");
  if (!(rp > 0.0)) throw ValidationError("insertion_dv: rp must be positive");
  if (!(mu > 0.0)) throw ValidationError("insertion_dv: mu must be positive");
  if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("insertion_dv: e must lie in [0, 1]");
  return std::sqrt(vinf * vinf + 2.0 * mu / rp) - std::sqrt(mu / rp * (1.0 + e));
}

}  // namespace hyopt::mga
