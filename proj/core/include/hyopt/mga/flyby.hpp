#pragma once

#include "hyopt/mga/ephemeris.hpp"

namespace hyopt::mga {

struct SwingbyResult {
  double delta_v;         // km/s, including any turn penalty
  double periapsis;       // km
  double turn_required;   // rad
  double turn_available;  // rad, at the minimum flyby radius
  double penalty;         // km/s, zero on the feasible branch
};

struct SwingbyOptions {
  /// km/s charged per rad of turn the body cannot provide.
  double penalty_slope = 10.0;
  /// Upper end of the periapsis bracket as a multiple of the minimum radius.
  double cap_factor = 1e6;
};

/// Sum of the two hyperbolic half-turns at periapsis `rp`, minus `turn`.
double turn_residual(double rp, double vin, double vout, double mu, double turn);

/// Powered gravity assist patching vinf_in to vinf_out with one periapsis
/// burn. Throws DegenerateGeometryError for a zero excess velocity.
SwingbyResult powered_swingby_dv(const Vec3& vinf_in, const Vec3& vinf_out,
                                 const BodyModel& body, const SwingbyOptions& options = {});

/// Periapsis burn capturing an arrival with excess speed `vinf` into an
/// orbit of periapsis `rp` and eccentricity `e`. Throws ValidationError for
/// negative inputs or e outside [0, 1].
double insertion_dv(double vinf, double rp, double e, double mu);

}  // namespace hyopt::mga
