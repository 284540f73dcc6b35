#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hyopt::mga {

using Vec3 = Eigen::Vector3d;

inline constexpr double kSecondsPerDay = 86400.0;

/// Mean heliocentric ecliptic elements with a linear mean-longitude drift.
/// Lengths in km, angles in rad, times in days past J2000.
struct KeplerianElements {
  double semi_major_axis;
  double eccentricity;
  double inclination;
  double ascending_node;        // Omega
  double perihelion_longitude;  // varpi = Omega + omega
  double mean_longitude;        // L at epoch
  double mean_longitude_rate;   // rad/day
  double epoch = 0.0;

  void validate() const;
};

struct BodyModel {
  std::string name;
  KeplerianElements elements;
  double mu;           // km^3/s^2
  double min_flyby_radius;  // km

  void validate() const;
};

struct StateVector {
  Vec3 position;  // km
  Vec3 velocity;  // km/s
};

/// Heliocentric state at `t` days past J2000. The mean longitude advances at
/// the tabulated rate; the velocity is the Keplerian one for `mu_sun`.
StateVector ephemeris_state(const BodyModel& body, double t, double mu_sun);

/// Parses an ephemeris file: a JSON object {"bodies": [...]} (or a bare
/// array) whose entries carry name, a_km, e, i_deg, raan_deg, lonperi_deg,
/// L0_deg, L_rate_deg_per_day, epoch_jd2000_days, mu_km3_s2, rp_min_km.
std::vector<BodyModel> load_ephemeris(const std::filesystem::path& path);
std::vector<BodyModel> parse_ephemeris(std::string_view text);

/// Throws ValidationError if no body has this name.
const BodyModel& find_body(const std::vector<BodyModel>& bodies, std::string_view name);

}  // namespace hyopt::mga
