#pragma once

// Reference computations written independently of the library code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <boost/math/special_functions/gamma.hpp>

namespace hyopt::oracle {

// Mantegna sigma_u from Boost's gamma function.
inline double mantegna_sigma(double beta) {
  using boost::math::tgamma;
  const double num = tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
  const double den = tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

// Stumpff functions with series near zero.
inline double stumpff_c(double z) {
  if (std::abs(z) < 1e-3) return 0.5 - z / 24.0 + z * z / 720.0 - z * z * z / 40320.0;
  if (z > 0.0) return (1.0 - std::cos(std::sqrt(z))) / z;
  return (std::cosh(std::sqrt(-z)) - 1.0) / (-z);
}

inline double stumpff_s(double z) {
  if (std::abs(z) < 1e-3) return 1.0 / 6.0 - z / 120.0 + z * z / 5040.0 - z * z * z / 362880.0;
  if (z > 0.0) {
    const double s = std::sqrt(z);
    return (s - std::sin(s)) / (s * s * s);
  }
  const double s = std::sqrt(-z);
  return (std::sinh(s) - s) / (s * s * s);
}

struct State {
  Eigen::Vector3d r;
  Eigen::Vector3d v;
};

// Two-body propagation by universal variables; the universal Kepler equation
// is solved by bisection-guarded Newton on a bracket found by doubling.
inline State kepler_propagate(const Eigen::Vector3d& r0, const Eigen::Vector3d& v0, double dt,
                              double mu) {
  const double sqmu = std::sqrt(mu);
  const double R0 = r0.norm();
  const double vr0 = r0.dot(v0) / R0;
  const double alpha = 2.0 / R0 - v0.squaredNorm() / mu;

  auto F = [&](double chi) {
    const double z = alpha * chi * chi;
    return R0 * vr0 / sqmu * chi * chi * stumpff_c(z) +
           (1.0 - alpha * R0) * chi * chi * chi * stumpff_s(z) + R0 * chi - sqmu * dt;
  };
  auto dF = [&](double chi) {
    const double z = alpha * chi * chi;
    return R0 * vr0 / sqmu * chi * (1.0 - z * stumpff_s(z)) +
           (1.0 - alpha * R0) * chi * chi * stumpff_c(z) + R0;
  };

  double lo = 0.0;
  double hi = std::max(1e-3, sqmu * dt / R0);
  for (int i = 0; i < 200 && F(hi) < 0.0; ++i) hi *= 2.0;
  double chi = 0.5 * (lo + hi);
  for (int i = 0; i < 500; ++i) {
    const double f = F(chi);
    if (f < 0.0) {
      lo = chi;
    } else {
      hi = chi;
    }
    double next = chi - f / dF(chi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - chi) <= 1e-15 * std::max(1.0, std::abs(chi))) {
      chi = next;
      break;
    }
    chi = next;
  }

  const double z = alpha * chi * chi;
  const double f = 1.0 - chi * chi / R0 * stumpff_c(z);
  const double g = dt - chi * chi * chi / sqmu * stumpff_s(z);
  const Eigen::Vector3d r = f * r0 + g * v0;
  const double R = r.norm();
  const double fdot = sqmu / (R * R0) * (z * chi * stumpff_s(z) - chi);
  const double gdot = 1.0 - chi * chi / R * stumpff_c(z);
  return {r, fdot * r0 + gdot * v0};
}

// Hohmann transfer between circular coplanar orbits r1 < r2.
struct Hohmann {
  double departure_excess;
  double arrival_excess;
  double time_of_flight;
};

inline Hohmann hohmann(double r1, double r2, double mu) {
  const double a = 0.5 * (r1 + r2);
  const double v_peri = std::sqrt(mu * (2.0 / r1 - 1.0 / a));
  const double v_apo = std::sqrt(mu * (2.0 / r2 - 1.0 / a));
  return {v_peri - std::sqrt(mu / r1), std::sqrt(mu / r2) - v_apo,
          std::numbers::pi * std::sqrt(a * a * a / mu)};
}

// Two-sided rank-sum p-value by walking every subset of the pooled sample.
inline double ranksum_enumerate(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double below = 0.0;
    double equal = 0.0;
    for (double v : pooled) {
      if (v < pooled[i]) below += 1.0;
      if (v == pooled[i]) equal += 1.0;
    }
    rank[i] = below + (equal + 1.0) / 2.0;
  }
  double observed = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) observed += rank[i];

  if (n > 24) throw std::invalid_argument("enumeration oracle limited to 24 values");
  double le = 0.0;
  double ge = 0.0;
  double total = 0.0;
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountl(mask)) != a.size()) continue;
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ul << i)) w += rank[i];
    }
    total += 1.0;
    if (w <= observed + 1e-9) le += 1.0;
    if (w >= observed - 1e-9) ge += 1.0;
  }
  return std::min(1.0, 2.0 * std::min(le, ge) / total);
}

// Normal approximation written directly from the textbook formulas.
inline double ranksum_normal(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double n = n1 + n2;
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double below = 0.0;
    double equal = 0.0;
    for (double v : pooled) {
      if (v < a[i]) below += 1.0;
      if (v == a[i]) equal += 1.0;
    }
    w += below + (equal + 1.0) / 2.0;
  }
  std::vector<double> sorted(pooled);
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double mean = n1 * (n + 1.0) / 2.0;
  const double var = n1 * n2 / 12.0 * (n + 1.0 - ties / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;
  const double z = std::max(0.0, std::abs(w - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::numbers::sqrt2));
}

}  // namespace hyopt::oracle
