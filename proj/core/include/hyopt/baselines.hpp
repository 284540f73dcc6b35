#pragma once

// Reference optimizers sharing the GMPA plumbing (bounds repair, leader
// ranking, evaluation accounting, traces), so that comparisons isolate the
// search rules themselves.

#include <cstddef>
#include <vector>

#include "hyopt/core.hpp"
#include "hyopt/rng.hpp"

namespace hyopt {

struct GwoConfig {
  double penalty_value = 1e30;
};

struct MpaConfig {
  double step_scale = 0.5;
  double fads = 0.2;
  LevyParams levy{};
  double penalty_value = 1e30;

  void validate() const;
};

struct PsoConfig {
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  /// Velocity limit as a fraction of each coordinate's range.
  double velocity_clamp = 0.2;
  double penalty_value = 1e30;

  void validate() const;
};

struct DeConfig {
  double scale = 0.5;       // F
  double crossover = 0.9;   // CR
  double penalty_value = 1e30;

  void validate() const;
};

// --- GWO -------------------------------------------------------------------

/// Linear decay 2 -> 0 over the run.
double gwo_a(std::size_t t, std::size_t T);

/// Per member, per leader (alpha, beta, delta): r1 (d uniforms), r2 (d
/// uniforms). A = 2a r1 - a, C = 2 r2, candidate = L - A |C L - x|.
std::vector<Vector> gwo_update(const Population& pop, const Leaders& leaders, double a,
                               NoiseSource& noise, const Bounds& bounds);

/// Costs n + T n evaluations.
RunResult run_gwo(const Problem& problem, const RunBudget& budget, const GwoConfig& config = {});

// --- MPA -------------------------------------------------------------------

/// One phase move of the canonical single-elite algorithm. Exploration and
/// the first transition faction step from the prey itself
/// (x + P R (rb (elite - rb x)), Levy for the faction); the second faction and
/// the exploitation phase jump around the elite with the CF decay.
std::vector<Vector> mpa_phase_update(const Population& pop, const Vector& elite, double p,
                                     std::size_t t, std::size_t T, const LevyParams& levy,
                                     NoiseSource& noise, const Bounds& bounds);

/// Costs n + 2 T n evaluations.
RunResult run_mpa(const Problem& problem, const RunBudget& budget, const MpaConfig& config = {});

// --- PSO -------------------------------------------------------------------

/// w v + c1 r1 (pbest - x) + c2 r2 (gbest - x), clamped to [-vmax, vmax].
Vector pso_velocity(const Vector& v, const Vector& x, const Vector& pbest, const Vector& gbest,
                    const PsoConfig& config, const Vector& r1, const Vector& r2,
                    const Vector& vmax);

/// Global-best PSO with zero initial velocities. Costs n + T n evaluations.
RunResult run_pso(const Problem& problem, const RunBudget& budget, const PsoConfig& config = {});

// --- DE --------------------------------------------------------------------

/// DE/rand/1/bin trial for member i. Draws a, b, c (distinct, != i) by
/// rejection, then j_rand, then one uniform per coordinate.
Vector de_trial(const Population& pop, std::size_t i, const DeConfig& config,
                NoiseSource& noise, const Bounds& bounds);

/// Greedy per-slot selection. Costs n + T n evaluations.
RunResult run_de(const Problem& problem, const RunBudget& budget, const DeConfig& config = {});

// --- Random search -----------------------------------------------------------

/// Uniform sampling of the box: n initial points, then `per_iteration`
/// points per iteration for T iterations.
RunResult run_random_search(const Problem& problem, const RunBudget& budget,
                            std::size_t per_iteration);

}  // namespace hyopt
