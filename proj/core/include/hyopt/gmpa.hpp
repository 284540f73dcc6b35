#pragma once

// Grey wolf / marine predator hybrid.
//
// Each iteration moves the pack with one of three phase rules keyed on the
// iteration index, evaluates, lets every wolf fall back to its remembered
// position if that was better, refreshes the alpha/beta/delta hierarchy,
// applies the FADs perturbation (followed by another memory pass), and ends
// with a local search in a randomized neighbourhood of the alpha.
//
// Draw order is part of the reproducibility contract and is documented on
// each operation.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hyopt/core.hpp"
#include "hyopt/rng.hpp"

namespace hyopt {

/// A value interpolated linearly from `start` (t = 0) to `end` (t = T).
struct LinearSchedule {
  double start;
  double end;

  double at(std::size_t t, std::size_t T) const;
};

struct GmpaConfig {
  double step_scale = 0.5;  // P
  double fads = 0.2;
  LevyParams levy{};
  double epsilon = 1e-8;
  /// Neighbours generated around the alpha per iteration; unset means min(n, 10).
  std::optional<std::size_t> neighborhood_size;
  /// Replaces non-finite objective values.
  double penalty_value = 1e30;
  /// Recompute the exploration stepsize against each leader instead of
  /// sharing the alpha-referenced one.
  bool per_leader_stepsize = false;
  /// Optional overrides for P and FADs over the run; off by default.
  std::optional<LinearSchedule> step_scale_schedule;
  std::optional<LinearSchedule> fads_schedule;

  void validate() const;
  std::size_t neighbors_for(std::size_t population) const;
};

enum class Phase { kExploration = 1, kTransition = 2, kExploitation = 3 };

/// Exploration while 3t < T, transition while 3t < 2T, exploitation after.
Phase phase_for(std::size_t t, std::size_t T);

// ---------------------------------------------------------------------------
// Per-member moves with every random quantity passed in explicitly.

/// Exploration move. stepsize = rb * (alpha - rb * x); each leader L yields
/// L + p * r * stepsize and the result is their mean. With `per_leader` the
/// stepsize is recomputed with L in place of alpha.
Vector exploration_move(const Vector& x, const Leaders& leaders, double p,
                        const Vector& rb, const Vector& r, bool per_leader = false);

/// Transition phase, first faction: alpha + p * r * (rl * (alpha - rl * x)).
Vector levy_exploit_move(const Vector& x, const Vector& alpha, double p,
                         const Vector& rl, const Vector& r);

/// Transition phase, second faction: alpha + p * cf * (rb * (rb * alpha - x)).
Vector brownian_cf_move(const Vector& x, const Vector& alpha, double p, double cf,
                        const Vector& rb);

/// Exploitation phase: alpha + p * cf * (rl * (rl * alpha - x)).
Vector levy_cf_move(const Vector& x, const Vector& alpha, double p, double cf,
                    const Vector& rl);

/// FADs jump toward a random point of the box on the masked coordinates:
/// x + cf * (lower + r * (upper - lower)) * mask.
Vector fads_box_jump(const Vector& x, const Bounds& bounds, double cf, const Vector& r,
                     const Vector& mask);

/// FADs jump along the difference of two members:
/// x + (fads * (1 - r) + r) * (xa - xb).
Vector fads_difference_jump(const Vector& x, double fads, double r, const Vector& xa,
                            const Vector& xb);

// ---------------------------------------------------------------------------
// Population-level operations. All return clamped positions, one per member,
// computed from the positions as they were on entry.

/// Per member: R_B (d normals), then R (d uniforms).
std::vector<Vector> phase1_update(const Population& pop, const Leaders& leaders, double p,
                                  NoiseSource& noise, const Bounds& bounds,
                                  bool per_leader = false);

/// Requires phase_for(t, T) == kTransition. Members [0, n/2) draw R_L then R;
/// members [n/2, n) draw R_B.
std::vector<Vector> phase2_update(const Population& pop, const Leaders& leaders, double p,
                                  std::size_t t, std::size_t T, const LevyParams& levy,
                                  NoiseSource& noise, const Bounds& bounds);

/// Requires phase_for(t, T) == kExploitation. Per member: R_L.
std::vector<Vector> phase3_update(const Population& pop, const Leaders& leaders, double p,
                                  std::size_t t, std::size_t T, const LevyParams& levy,
                                  NoiseSource& noise, const Bounds& bounds);

/// Per member: r1, r2; if r1 <= r2 then R (d uniforms) and the mask (d
/// uniforms), else r, then two distinct member indices a, b.
/// Throws ValidationError if the population has fewer than two members.
std::vector<Vector> fads_perturbation(const Population& pop, const Bounds& bounds,
                                      double fads, double cf, NoiseSource& noise);

/// Remembered positions and fitnesses, one row per member.
struct MemoryMatrix {
  std::vector<Vector> positions;
  std::vector<double> fitness;

  static MemoryMatrix snapshot(const Population& pop);
};

/// Restores every member whose remembered fitness is strictly better, then
/// overwrites the memory with the resulting population.
/// Throws ValidationError on a size mismatch.
void memory_update(Population& pop, MemoryMatrix& memory);

/// Builds k neighbours of the alpha, evaluates them, and promotes the best
/// one to alpha if it improves on it (the old alpha and beta shift down).
///
/// Neighbour j uses member i = j mod n. Draws per neighbour: phi (d
/// uniforms), the W exponent (1 normal), the two W factors (d uniforms
/// each), the two tau scalars (2 uniforms), the final direction (d normals).
/// `epsilon` may be 0 here; configs require it positive.
/// Throws ValidationError if k == 0.
Leaders alpha_neighborhood_search(const Population& pop, const Leaders& leaders,
                                  const Bounds& bounds, std::size_t t, std::size_t T,
                                  double epsilon, std::size_t k, NoiseSource& noise,
                                  Evaluator& evaluate);

/// Hooks for instrumented runs. Defaults do nothing.
class GmpaObserver {
 public:
  virtual ~GmpaObserver() = default;
  virtual void on_phase(std::size_t /*t*/, Phase /*phase*/) {}
  /// Fitness vectors immediately before and after a memory pass.
  virtual void on_memory_update(std::span<const double> /*before*/,
                                std::span<const double> /*after*/) {}
  virtual void on_neighborhood(double /*alpha_before*/, double /*alpha_after*/) {}
};

/// Full optimizer. Costs n evaluations to initialize and 2n + k per iteration.
RunResult run_gmpa(const Problem& problem, const RunBudget& budget, const GmpaConfig& config,
                   GmpaObserver* observer = nullptr);

}  // namespace hyopt
