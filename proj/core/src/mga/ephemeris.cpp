#include "hyopt/mga/ephemeris.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "json.hpp"

#include "hyopt/errors.hpp"
#include "hyopt/mga/kepler.hpp"

namespace hyopt::mga {

void KeplerianElements::validate() const {
  if (!(semi_major_axis > 0.0)) throw ValidationError("elements: a must be positive");
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw ValidationError("elements: e must lie in [0, 1)");
  }
  for (double v : {inclination, ascending_node, perihelion_longitude, mean_longitude,
                   mean_longitude_rate, epoch}) {
    if (!std::isfinite(v)) throw ValidationError("elements: non-finite angle or rate");
  }
}

void BodyModel::validate() const {
  try {
    elements.validate();
  } catch (const ValidationError& err) {
    throw ValidationError(name + ": " + err.what());
  }
  if (!(mu > 0.0)) throw ValidationError(name + ": mu must be positive");
  if (!(min_flyby_radius > 0.0)) throw ValidationError(name + ": rp_min must be positive");
}

StateVector ephemeris_state(const BodyModel& body, double t, double mu_sun) {
  const KeplerianElements& el = body.elements;
  if (!(mu_sun > 0.0)) throw ValidationError("ephemeris_state: mu_sun must be positive");
  const double a = el.semi_major_axis;
  const double e = el.eccentricity;

  const double L = el.mean_longitude + el.mean_longitude_rate * (t - el.epoch);
  const double M = L - el.perihelion_longitude;
  const double omega = el.perihelion_longitude - el.ascending_node;
  const double E = solve_kepler(M, e);

  const double cosE = std::cos(E);
  const double sinE = std::sin(E);
  const double b = a * std::sqrt(1.0 - e * e);
  const double rate = std::sqrt(mu_sun / (a * a * a)) / (1.0 - e * cosE);

  const Vec3 r_plane(a * (cosE - e), b * sinE, 0.0);
  const Vec3 v_plane(-a * sinE * rate, b * cosE * rate, 0.0);

  const Eigen::Matrix3d rot =
      (Eigen::AngleAxisd(el.ascending_node, Vec3::UnitZ()) *
       Eigen::AngleAxisd(el.inclination, Vec3::UnitX()) *
       Eigen::AngleAxisd(omega, Vec3::UnitZ()))
          .toRotationMatrix();
  return {rot * r_plane, rot * v_plane};
}

namespace {

using json = nlohmann::json;

double field(const json& e, const char* key, const std::string& who) {
  if (!e.contains(key) || !e[key].is_number()) {
    throw ValidationError("ephemeris entry " + who + ": missing numeric field '" + key + "'");
  }
  return e[key].get<double>();
}

}  // namespace

std::vector<BodyModel> parse_ephemeris(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("ephemeris file is not valid JSON: ") + err.what());
  }
  const json& list = doc.is_object() && doc.contains("bodies") ? doc["bodies"] : doc;
  if (!list.is_array()) throw ValidationError("ephemeris file must list bodies in an array");

  constexpr double deg = std::numbers::pi / 180.0;
  std::vector<BodyModel> bodies;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const json& e = list[i];
    std::string who = std::to_string(i);
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
      throw ValidationError("ephemeris entry " + who + ": missing string field 'name'");
    }
    BodyModel body;
    body.name = e["name"].get<std::string>();
    who += " ('" + body.name + "')";
    body.elements = KeplerianElements{
        field(e, "a_km", who),
        field(e, "e", who),
        field(e, "i_deg", who) * deg,
        field(e, "raan_deg", who) * deg,
        field(e, "lonperi_deg", who) * deg,
        field(e, "L0_deg", who) * deg,
        field(e, "L_rate_deg_per_day", who) * deg,
        field(e, "epoch_jd2000_days", who),
    };
    body.mu = field(e, "mu_km3_s2", who);
    body.min_flyby_radius = field(e, "rp_min_km", who);
    body.validate();
    bodies.push_back(std::move(body));
  }
  return bodies;
}

std::vector<BodyModel> load_ephemeris(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open ephemeris file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ephemeris(buf.str());
}

const BodyModel& find_body(const std::vector<BodyModel>& bodies, std::string_view name) {
  for (const auto& b : bodies) {
    if (b.name == name) return b;
  }
  throw ValidationError("no body named '" + std::string(name) + "' in the ephemeris");
}

}  // namespace hyopt::mga
