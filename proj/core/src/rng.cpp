#include "hyopt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyopt/errors.hpp"
#include "hyopt/stochastic.hpp"

namespace hyopt {

void LevyParams::validate() const {
  if (!(beta > 0.0 && beta <= 2.0)) {
    throw ValidationError("levy: beta must lie in (0, 2], got " + std::to_string(beta));
  }
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::levy(const LevyParams& params) {
  if (params.beta != sigma_beta_) {
    sigma_ = mantegna_sigma(params.beta);
    sigma_beta_ = params.beta;
  }
  const double u = sigma_ * normal();
  const double v = normal();
  return mantegna_step(u, v, params.beta);
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw ValidationError("rng: index range is empty");
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return std::min(i, n - 1);
}

}  // namespace hyopt
