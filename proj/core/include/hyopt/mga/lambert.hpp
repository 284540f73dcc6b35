#pragma once

#include "hyopt/mga/ephemeris.hpp"

namespace hyopt::mga {

enum class Direction { kPrograde, kRetrograde };

struct LambertSolution {
  Vec3 v1;
  Vec3 v2;
  int iterations;
};

/// Single-revolution Lambert arc from r1 to r2 in `tof` seconds.
///
/// Izzo's formulation: Householder iteration on the Lancaster-Blanchard
/// variable x, with Battin's series near the parabola. "Prograde" means
/// positive angular momentum about +z. When r1 and r2 are antiparallel and
/// both lie in the xy-plane, the transfer plane is taken to be that plane.
/// Throws DegenerateGeometryError for a transfer angle near 0 (or near pi
/// outside that special case), ValidationError for non-positive tof or mu,
/// and ConvergenceError if the iteration stalls.
LambertSolution lambert(const Vec3& r1, const Vec3& r2, double tof, double mu,
                        Direction direction = Direction::kPrograde);

}  // namespace hyopt::mga
