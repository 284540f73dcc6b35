#include "hyopt/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hyopt/errors.hpp"

namespace hyopt {

namespace {

void require_dim(std::size_t d, const char* who) {
  if (d == 0) throw ValidationError(std::string(who) + ": dimension must be >= 1");
}

}  // namespace

double mantegna_sigma(double beta) {
  LevyParams{beta}.validate();
  const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
  const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / beta);
}

double mantegna_step(double u, double v, double beta) {
  if (u == 0.0) return 0.0;
  return u / std::pow(std::abs(v), 1.0 / beta);
}

Vector brownian_vector(std::size_t d, NoiseSource& noise) {
  require_dim(d, "brownian_vector");
  Vector out(static_cast<Eigen::Index>(d));
  for (auto& x : out) x = noise.normal();
  return out;
}

Vector levy_vector(std::size_t d, const LevyParams& params, NoiseSource& noise) {
  require_dim(d, "levy_vector");
  params.validate();
  Vector out(static_cast<Eigen::Index>(d));
  for (auto& x : out) x = noise.levy(params);
  return out;
}

Vector uniform_vector(std::size_t d, NoiseSource& noise) {
  require_dim(d, "uniform_vector");
  Vector out(static_cast<Eigen::Index>(d));
  for (auto& x : out) x = noise.uniform();
  return out;
}

Vector binary_mask(std::size_t d, double fads, NoiseSource& noise) {
  require_dim(d, "binary_mask");
  if (!(fads >= 0.0 && fads <= 1.0)) {
    throw ValidationError("binary_mask: fads must lie in [0, 1]");
  }
  Vector out(static_cast<Eigen::Index>(d));
  for (auto& x : out) x = noise.uniform() < fads ? 1.0 : 0.0;
  return out;
}

double cf(std::size_t t, std::size_t T) {
  if (T == 0) throw ValidationError("cf: T must be positive");
  if (t > T) {
    throw ValidationError("cf: t = " + std::to_string(t) + " exceeds T = " + std::to_string(T));
  }
  if (t == T) return 0.0;
  const double ratio = static_cast<double>(t) / static_cast<double>(T);
  return std::pow(1.0 - ratio, 2.0 * ratio);
}

}  // namespace hyopt
