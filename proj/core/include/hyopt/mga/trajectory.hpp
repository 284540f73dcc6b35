#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hyopt/core.hpp"
#include "hyopt/mga/ephemeris.hpp"
#include "hyopt/mga/flyby.hpp"

namespace hyopt::mga {

struct Window {
  double lower;
  double upper;
};

/// Patched-conic multi-gravity-assist mission: launch from the first body,
/// powered swingbys at the intermediate ones, capture at the last.
/// Decision vector: [t0, T1, ..., T_{N-1}] in days.
struct MgaProblem {
  std::string name = "mga";
  double mu_sun = 1.32712440018e11;
  std::vector<BodyModel> sequence;
  double capture_periapsis = 0.0;  // km
  double capture_eccentricity = 0.0;
  Window launch_window{};       // days past J2000
  std::vector<Window> leg_windows;  // days
  double penalty_value = 1e3;   // km/s, returned for degenerate legs
  SwingbyOptions swingby;

  std::size_t dim() const { return sequence.size(); }
  Bounds bounds() const;
  void validate() const;
};

struct LegReport {
  std::string from;
  std::string to;
  double departure_epoch;  // days past J2000
  double duration;         // days
  Vec3 v_depart;           // heliocentric, km/s
  Vec3 v_arrive;
};

struct FlybyReport {
  std::string body;
  double delta_v;
  double periapsis;
  double penalty;
};

struct TrajectoryBreakdown {
  std::vector<LegReport> legs;
  double launch_dv = 0.0;
  std::vector<FlybyReport> flybys;
  double insertion = 0.0;
  double total = 0.0;
  /// Set when a leg could not be solved and `total` is the penalty value.
  bool degenerate = false;
  std::string degenerate_reason;
};

/// Full cost decomposition. Throws OutOfBoundsError for x outside the box.
TrajectoryBreakdown mga_breakdown(const MgaProblem& prob, const Vector& x);

/// Total delta-v in km/s.
double mga_objective(const MgaProblem& prob, const Vector& x);

Problem to_problem(const MgaProblem& prob);

/// Problem file (JSON): {"name", "ephemeris": path (relative to the problem
/// file), "sequence": [names], "t0": [lo, hi], "legs": [[lo, hi], ...],
/// "capture": {"rp_km", "e"}, "penalty_value", "mu_sun"?,
/// "swingby_penalty_slope"?}.
MgaProblem load_mga_problem(const std::filesystem::path& path);

}  // namespace hyopt::mga
