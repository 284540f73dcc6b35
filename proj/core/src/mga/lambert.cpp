#include "hyopt/mga/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyopt/errors.hpp"

// Izzo, single revolution. Notation: lambda is the geometry parameter,
// T the non-dimensional time of flight, x the Lancaster-Blanchard variable.

namespace hyopt::mga {

namespace {

constexpr double kPi = std::numbers::pi;
// |sin(transfer angle)| below this is treated as collinear.
constexpr double kCollinear = 1e-10;

// 2F1(3, 1; 5/2; z) by its power series.
double hypergeometric(double z, double tol) {
  double sum = 1.0;
  double term = 1.0;
  for (int j = 0; j < 1000; ++j) {
    term *= (3.0 + j) * (1.0 + j) / (2.5 + j) * z / (j + 1.0);
    sum += term;
    if (std::abs(term) <= tol) break;
  }
  return sum;
}

struct TofFunction {
  double lambda;

  // Lagrange's form, used at moderate distance from the parabola.
  double lagrange(double x) const {
    const double a = 1.0 / (1.0 - x * x);
    if (a > 0.0) {
      const double alpha = 2.0 * std::acos(x);
      double beta = 2.0 * std::asin(std::sqrt(lambda * lambda / a));
      if (lambda < 0.0) beta = -beta;
      return a * std::sqrt(a) * ((alpha - std::sin(alpha)) - (beta - std::sin(beta))) / 2.0;
    }
    const double alpha = 2.0 * std::acosh(x);
    double beta = 2.0 * std::asinh(std::sqrt(-lambda * lambda / a));
    if (lambda < 0.0) beta = -beta;
    return -a * std::sqrt(-a) * ((beta - std::sinh(beta)) - (alpha - std::sinh(alpha))) / 2.0;
  }

  double operator()(double x) const {
    const double dist = std::abs(x - 1.0);
    if (dist < 0.2 && dist > 0.01) return lagrange(x);
    const double K = lambda * lambda;
    const double E = x * x - 1.0;
    const double rho = std::abs(E);
    const double z = std::sqrt(1.0 + K * E);
    if (dist <= 0.01) {
      const double eta = z - lambda * x;
      const double s1 = 0.5 * (1.0 - lambda - x * eta);
      const double q = 4.0 / 3.0 * hypergeometric(s1, 1e-15);
      return (eta * eta * eta * q + 4.0 * lambda * eta) / 2.0;
    }
    const double y = std::sqrt(rho);
    const double g = x * z - lambda * E;
    const double d = E < 0.0 ? std::acos(g) : std::log(y * (z - lambda * x) + g);
    return (x - lambda * z - d / y) / E;
  }

  // First three derivatives of T(x), given T at x.
  void derivatives(double x, double T, double& d1, double& d2, double& d3) const {
    const double l2 = lambda * lambda;
    const double l3 = l2 * lambda;
    const double umx2 = 1.0 - x * x;
    const double y = std::sqrt(1.0 - l2 * umx2);
    const double y2 = y * y;
    const double y3 = y2 * y;
    d1 = (3.0 * T * x - 2.0 + 2.0 * l3 * x / y) / umx2;
    d2 = (3.0 * T + 5.0 * x * d1 + 2.0 * (1.0 - l2) * l3 / y3) / umx2;
    d3 = (7.0 * x * d2 + 8.0 * d1 - 6.0 * (1.0 - l2) * l2 * l3 * x / (y3 * y2)) / umx2;
  }
};

double initial_guess(double lambda, double T) {
  const double l3 = lambda * lambda * lambda;
  const double T00 = std::acos(lambda) + lambda * std::sqrt(1.0 - lambda * lambda);
  const double T1 = 2.0 / 3.0 * (1.0 - l3);
  if (T >= T00) return -(T - T00) / (T - T00 + 4.0);
  if (T <= T1) return T1 * (T1 - T) / (0.4 * (1.0 - l3 * lambda * lambda) * T) + 1.0;
  return std::pow(T / T00, std::numbers::ln2 / std::log(T1 / T00)) - 1.0;
}

}  // namespace

LambertSolution lambert(const Vec3& r1, const Vec3& r2, double tof, double mu,
                        Direction direction) {
  if (!(tof > 0.0)) throw ValidationError("lambert: time of flight must be positive");
  if (!(mu > 0.0)) throw ValidationError("lambert: mu must be positive");
  const double R1 = r1.norm();
  const double R2 = r2.norm();
  if (!(R1 > 0.0) || !(R2 > 0.0)) throw DegenerateGeometryError("lambert: zero radius");

  const Vec3 ir1 = r1 / R1;
  const Vec3 ir2 = r2 / R2;
  const Vec3 normal = ir1.cross(ir2);
  const double sin_angle = normal.norm();

  Vec3 ih;
  if (sin_angle < kCollinear) {
    if (ir1.dot(ir2) > 0.0) {
      throw DegenerateGeometryError("lambert: transfer angle is zero");
    }
    if (std::abs(ir1.z()) < kCollinear && std::abs(ir2.z()) < kCollinear) {
      ih = Vec3::UnitZ();
    } else {
      throw DegenerateGeometryError("lambert: transfer angle is pi and the plane is undefined");
    }
  } else {
    ih = normal / sin_angle;
  }

  const double c = (r2 - r1).norm();
  const double s = 0.5 * (R1 + R2 + c);
  double lambda = std::sqrt(std::max(0.0, 1.0 - c / s));

  Vec3 it1;
  Vec3 it2;
  if (ih.z() < 0.0) {
    lambda = -lambda;
    it1 = ir1.cross(ih);
    it2 = ir2.cross(ih);
  } else {
    it1 = ih.cross(ir1);
    it2 = ih.cross(ir2);
  }
  if (direction == Direction::kRetrograde) {
    lambda = -lambda;
    it1 = -it1;
    it2 = -it2;
  }

  const double T = std::sqrt(2.0 * mu / (s * s * s)) * tof;
  const TofFunction tof_of{lambda};

  double x = initial_guess(lambda, T);
  double step = HUGE_VAL;
  int iterations = 0;
  while (iterations < 50) {
    const double t = tof_of(x);
    double d1, d2, d3;
    tof_of.derivatives(x, t, d1, d2, d3);
    const double delta = t - T;
    const double next =
        x - delta * (d1 * d1 - delta * d2 / 2.0) /
                (d1 * (d1 * d1 - delta * d2) + d3 * delta * delta / 6.0);
    ++iterations;
    step = std::abs(next - x);
    x = next;
    if (!std::isfinite(x) || step < 1e-14) break;
  }
  if (!std::isfinite(x) || step > 1e-9) {
    throw ConvergenceError("lambert: Householder iteration did not converge",
                           std::isfinite(step) ? step : HUGE_VAL);
  }

  const double gamma = std::sqrt(mu * s / 2.0);
  const double rho = (R1 - R2) / c;
  const double sigma = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double y = std::sqrt(1.0 - lambda * lambda + lambda * lambda * x * x);
  const double vr1 = gamma * ((lambda * y - x) - rho * (lambda * y + x)) / R1;
  const double vr2 = -gamma * ((lambda * y - x) + rho * (lambda * y + x)) / R2;
  const double vt = gamma * sigma * (y + lambda * x);

  return {vr1 * ir1 + (vt / R1) * it1, vr2 * ir2 + (vt / R2) * it2, iterations};
}

}  // namespace hyopt::mga
