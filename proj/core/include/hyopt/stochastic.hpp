#pragma once

#include <cstddef>

#include "hyopt/core.hpp"
#include "hyopt/rng.hpp"

namespace hyopt {

/// Mantegna scale sigma_u for tail exponent beta.
double mantegna_sigma(double beta);

/// Mantegna step u / |v|^(1/beta) for pre-drawn u ~ N(0, sigma_u^2) and
/// v ~ N(0, 1).
double mantegna_step(double u, double v, double beta);

/// d i.i.d. standard normals. Throws ValidationError if d == 0.
Vector brownian_vector(std::size_t d, NoiseSource& noise);

/// d i.i.d. Mantegna steps. Throws ValidationError if d == 0 or beta invalid.
Vector levy_vector(std::size_t d, const LevyParams& params, NoiseSource& noise);

/// d i.i.d. uniforms on [0, 1).
Vector uniform_vector(std::size_t d, NoiseSource& noise);

/// Entry j is 1 when an independent uniform draw is below `fads`, else 0.
Vector binary_mask(std::size_t d, double fads, NoiseSource& noise);

/// Step-size decay (1 - t/T)^(2t/T); 1 at t = 0 and 0 at t = T.
/// Throws ValidationError if T == 0 or t > T.
double cf(std::size_t t, std::size_t T);

}  // namespace hyopt
