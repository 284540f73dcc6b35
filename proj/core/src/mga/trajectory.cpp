#include "hyopt/mga/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hyopt/errors.hpp"
#include "hyopt/mga/lambert.hpp"

namespace hyopt::mga {

Bounds MgaProblem::bounds() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Vector lower(n);
  Vector upper(n);
  lower[0] = launch_window.lower;
  upper[0] = launch_window.upper;
  for (std::size_t k = 0; k < leg_windows.size(); ++k) {
    lower[static_cast<Eigen::Index>(k + 1)] = leg_windows[k].lower;
    upper[static_cast<Eigen::Index>(k + 1)] = leg_windows[k].upper;
  }
  return Bounds(std::move(lower), std::move(upper));
}

void MgaProblem::validate() const {
  const std::string who = "mga problem '" + name + "'";
  if (sequence.size() < 2) throw ValidationError(who + ": sequence needs at least two bodies");
  if (leg_windows.size() + 1 != sequence.size()) {
    throw ValidationError(who + ": " + std::to_string(sequence.size()) + " bodies need " +
                          std::to_string(sequence.size() - 1) + " leg windows, got " +
                          std::to_string(leg_windows.size()));
  }
  if (!(mu_sun > 0.0)) throw ValidationError(who + ": mu_sun must be positive");
  if (!(launch_window.lower < launch_window.upper)) {
    throw ValidationError(who + ": empty launch window");
  }
  for (std::size_t k = 0; k < leg_windows.size(); ++k) {
    const Window& w = leg_windows[k];
    if (!(w.lower > 0.0 && w.lower < w.upper)) {
      throw ValidationError(who + ": leg " + std::to_string(k + 1) +
                            " window must satisfy 0 < lower < upper");
    }
  }
  if (!(capture_periapsis > 0.0)) throw ValidationError(who + ": capture rp must be positive");
  if (!(capture_eccentricity >= 0.0 && capture_eccentricity <= 1.0)) {
    throw ValidationError(who + ": capture eccentricity must lie in [0, 1]");
  }
  for (const auto& b : sequence) b.validate();
}

TrajectoryBreakdown mga_breakdown(const MgaProblem& prob, const Vector& x) {
  const Bounds box = prob.bounds();
  if (static_cast<std::size_t>(x.size()) != prob.dim()) {
    throw OutOfBoundsError("decision vector has " + std::to_string(x.size()) +
                           " entries, expected " + std::to_string(prob.dim()));
  }
  if (!box.contains(x)) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (!(x[j] >= box.lower()[j] && x[j] <= box.upper()[j])) {
        std::ostringstream msg;
        msg << "decision variable " << j << " = " << x[j] << " outside [" << box.lower()[j]
            << ", " << box.upper()[j] << "]";
        throw OutOfBoundsError(msg.str());
      }
    }
  }

  const std::size_t n = prob.sequence.size();
  TrajectoryBreakdown out;
  auto degenerate = [&](const std::string& why) {
    out.degenerate = true;
    out.degenerate_reason = why;
    out.total = prob.penalty_value;
    return out;
  };

  std::vector<double> epochs(n);
  std::vector<StateVector> states(n);
  epochs[0] = x[0];
  for (std::size_t k = 1; k < n; ++k) epochs[k] = epochs[k - 1] + x[static_cast<Eigen::Index>(k)];
  for (std::size_t k = 0; k < n; ++k) {
    states[k] = ephemeris_state(prob.sequence[k], epochs[k], prob.mu_sun);
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double days = x[static_cast<Eigen::Index>(k + 1)];
    try {
      const LambertSolution arc = lambert(states[k].position, states[k + 1].position,
                                          days * kSecondsPerDay, prob.mu_sun);
      out.legs.push_back({prob.sequence[k].name, prob.sequence[k + 1].name, epochs[k], days,
                          arc.v1, arc.v2});
    } catch (const DegenerateGeometryError& err) {
      return degenerate("leg " + std::to_string(k + 1) + ": " + err.what());
    } catch (const ConvergenceError& err) {
      return degenerate("leg " + std::to_string(k + 1) + ": " + err.what());
    }
  }

  out.launch_dv = (out.legs.front().v_depart - states.front().velocity).norm();
  out.total = out.launch_dv;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Vec3 vin = out.legs[k - 1].v_arrive - states[k].velocity;
    const Vec3 vout = out.legs[k].v_depart - states[k].velocity;
    try {
      const SwingbyResult sw = powered_swingby_dv(vin, vout, prob.sequence[k], prob.swingby);
      out.flybys.push_back({prob.sequence[k].name, sw.delta_v, sw.periapsis, sw.penalty});
      out.total += sw.delta_v;
    } catch (const DegenerateGeometryError& err) {
      return degenerate(err.what());
    }
  }
  const double vinf_arrival = (out.legs.back().v_arrive - states.back().velocity).norm();
  out.insertion = insertion_dv(vinf_arrival, prob.capture_periapsis, prob.capture_eccentricity,
                               prob.sequence.back().mu);
  out.total += out.insertion;
  if (!std::isfinite(out.total)) return degenerate("non-finite delta-v");
  return out;
}

double mga_objective(const MgaProblem& prob, const Vector& x) {
  return mga_breakdown(prob, x).total;
}

Problem to_problem(const MgaProblem& prob) {
  prob.validate();
  return Problem(prob.name, prob.bounds(), [prob](const Vector& x) { return mga_objective(prob, x); });
}

namespace {

using json = nlohmann::json;

Window read_window(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(where + " must be [lower, upper]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

MgaProblem load_mga_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ValidationError("problem file " + path.string() + " is not valid JSON: " + err.what());
  }
  const std::string who = "problem file " + path.string();
  if (!doc.is_object()) throw ValidationError(who + ": expected an object");
  for (const char* key : {"ephemeris", "sequence", "t0", "legs", "capture"}) {
    if (!doc.contains(key)) throw ValidationError(who + ": missing field '" + key + "'");
  }

  std::filesystem::path eph = doc["ephemeris"].get<std::string>();
  if (eph.is_relative()) eph = path.parent_path() / eph;
  const std::vector<BodyModel> bodies = load_ephemeris(eph);

  MgaProblem prob;
  prob.name = doc.value("name", path.stem().string());
  if (doc.contains("mu_sun")) prob.mu_sun = doc["mu_sun"].get<double>();
  if (!doc["sequence"].is_array()) throw ValidationError(who + ": 'sequence' must be an array");
  for (const auto& name : doc["sequence"]) {
    if (!name.is_string()) throw ValidationError(who + ": 'sequence' must hold body names");
    prob.sequence.push_back(find_body(bodies, name.get<std::string>()));
  }
  prob.launch_window = read_window(doc["t0"], who + ": 't0'");
  if (!doc["legs"].is_array()) throw ValidationError(who + ": 'legs' must be an array");
  for (std::size_t k = 0; k < doc["legs"].size(); ++k) {
    prob.leg_windows.push_back(
        read_window(doc["legs"][k], who + ": 'legs[" + std::to_string(k) + "]'"));
  }
  const json& cap = doc["capture"];
  if (!cap.is_object() || !cap.contains("rp_km") || !cap.contains("e")) {
    throw ValidationError(who + ": 'capture' needs rp_km and e");
  }
  prob.capture_periapsis = cap["rp_km"].get<double>();
  prob.capture_eccentricity = cap["e"].get<double>();
  if (doc.contains("penalty_value")) prob.penalty_value = doc["penalty_value"].get<double>();
  if (doc.contains("swingby_penalty_slope")) {
    prob.swingby.penalty_slope = doc["swingby_penalty_slope"].get<double>();
  }
  prob.validate();
  return prob;
}

}  // namespace hyopt::mga
