#pragma once

namespace hyopt::mga {

/// Eccentric anomaly E with E - e sin E = M, for 0 <= e < 1.
///
/// Newton iteration from E0 = M + e sin M, safeguarded by bisection on the
/// bracket [M' - e, M' + e] (M' = M reduced to [-pi, pi]); at most 50 steps.
/// Throws ValidationError for e outside [0, 1) and ConvergenceError if the
/// residual stays above 1e-12.
double solve_kepler(double mean_anomaly, double eccentricity);

}  // namespace hyopt::mga
