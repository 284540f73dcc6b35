#include "hyopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyopt/errors.hpp"
#include "hyopt/gmpa.hpp"
#include "hyopt/stochastic.hpp"

namespace hyopt {

void MpaConfig::validate() const {
  if (!(step_scale > 0.0)) throw ValidationError("mpa: P must be positive");
  if (!(fads >= 0.0 && fads <= 1.0)) throw ValidationError("mpa: fads must lie in [0, 1]");
  levy.validate();
}

void PsoConfig::validate() const {
  if (!(inertia >= 0.0 && inertia <= 1.0)) throw ValidationError("pso: w must lie in [0, 1]");
  if (!(cognitive > 0.0) || !(social > 0.0)) throw ValidationError("pso: c1, c2 must be positive");
  if (!(velocity_clamp > 0.0)) throw ValidationError("pso: velocity clamp must be positive");
}

void DeConfig::validate() const {
  if (!(scale > 0.0 && scale <= 2.0)) throw ValidationError("de: F must lie in (0, 2]");
  if (!(crossover >= 0.0 && crossover <= 1.0)) throw ValidationError("de: CR must lie in [0, 1]");
}

namespace {

Population random_population(const Bounds& bounds, std::size_t n, NoiseSource& noise) {
  Population pop;
  pop.members.resize(n);
  for (auto& m : pop.members) {
    m.position = clamp_to_bounds(
        bounds.lower() + uniform_vector(bounds.dim(), noise) * bounds.width(), bounds);
  }
  return pop;
}

void assign_positions(Population& pop, std::vector<Vector>&& positions) {
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop.members[i].position = std::move(positions[i]);
    pop.members[i].fitness = std::numeric_limits<double>::quiet_NaN();
  }
}

RunResult finish(const Individual& best, RunTrace&& trace) {
  RunResult result{best, std::move(trace)};
  result.trace.best_position = best.position;
  return result;
}

}  // namespace

// --- GWO -------------------------------------------------------------------

double gwo_a(std::size_t t, std::size_t T) {
  if (T == 0 || t > T) throw ValidationError("gwo_a: t outside [0, T]");
  return 2.0 - 2.0 * static_cast<double>(t) / static_cast<double>(T);
}

std::vector<Vector> gwo_update(const Population& pop, const Leaders& leaders, double a,
                               NoiseSource& noise, const Bounds& bounds) {
  const std::size_t d = bounds.dim();
  std::vector<Vector> out;
  out.reserve(pop.size());
  for (const auto& m : pop.members) {
    Vector sum = Vector::Zero(static_cast<Eigen::Index>(d));
    for (const Individual* leader : {&leaders.alpha, &leaders.beta, &leaders.delta}) {
      const Vector r1 = uniform_vector(d, noise);
      const Vector r2 = uniform_vector(d, noise);
      const Vector A = 2.0 * a * r1 - a;
      const Vector C = 2.0 * r2;
      const Vector D = (C * leader->position - m.position).abs();
      sum += leader->position - A * D;
    }
    out.push_back(clamp_to_bounds(sum / 3.0, bounds));
  }
  return out;
}

RunResult run_gwo(const Problem& problem, const RunBudget& budget, const GwoConfig& config) {
  budget.validate();
  const std::size_t T = budget.iterations;
  Rng rng(budget.seed);
  Evaluator evaluate(problem, config.penalty_value);

  Population pop = random_population(problem.bounds(), budget.population, rng);
  evaluate.evaluate(pop.members);
  pop.leaders = update_leaders(pop);

  RunTrace trace;
  trace.records.reserve(T);
  for (std::size_t t = 1; t <= T; ++t) {
    // a sweeps 2 -> 2/T across iterations 1..T, reaching 0 only in the limit.
    const double a = gwo_a(t - 1, T);
    assign_positions(pop, gwo_update(pop, pop.leaders, a, rng, problem.bounds()));
    evaluate.evaluate(pop.members);
    pop.leaders = update_leaders(pop);
    trace.record(t, evaluate.count(), pop.leaders.alpha.fitness);
  }
  return finish(pop.leaders.alpha, std::move(trace));
}

// --- MPA -------------------------------------------------------------------

std::vector<Vector> mpa_phase_update(const Population& pop, const Vector& elite, double p,
                                     std::size_t t, std::size_t T, const LevyParams& levy,
                                     NoiseSource& noise, const Bounds& bounds) {
  const std::size_t d = bounds.dim();
  const double decay = cf(t, T);
  const Phase phase = phase_for(t, T);
  const std::size_t half = pop.size() / 2;
  std::vector<Vector> out;
  out.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const Vector& x = pop.members[i].position;
    Vector next;
    if (phase == Phase::kExploration) {
      const Vector rb = brownian_vector(d, noise);
      const Vector r = uniform_vector(d, noise);
      next = x + p * r * (rb * (elite - rb * x));
    } else if (phase == Phase::kTransition && i < half) {
      const Vector rl = levy_vector(d, levy, noise);
      const Vector r = uniform_vector(d, noise);
      next = x + p * r * (rl * (elite - rl * x));
    } else if (phase == Phase::kTransition) {
      next = brownian_cf_move(x, elite, p, decay, brownian_vector(d, noise));
    } else {
      next = levy_cf_move(x, elite, p, decay, levy_vector(d, levy, noise));
    }
    out.push_back(clamp_to_bounds(next, bounds));
  }
  return out;
}

RunResult run_mpa(const Problem& problem, const RunBudget& budget, const MpaConfig& config) {
  budget.validate();
  config.validate();
  const Bounds& bounds = problem.bounds();
  const std::size_t T = budget.iterations;
  Rng rng(budget.seed);
  Evaluator evaluate(problem, config.penalty_value);

  Population pop = random_population(bounds, budget.population, rng);
  evaluate.evaluate(pop.members);
  pop.leaders = update_leaders(pop);
  MemoryMatrix memory = MemoryMatrix::snapshot(pop);

  RunTrace trace;
  trace.records.reserve(T);
  for (std::size_t t = 1; t <= T; ++t) {
    assign_positions(pop, mpa_phase_update(pop, pop.leaders.alpha.position, config.step_scale,
                                           t, T, config.levy, rng, bounds));
    evaluate.evaluate(pop.members);
    memory_update(pop, memory);
    pop.leaders = update_leaders(pop);

    assign_positions(pop, fads_perturbation(pop, bounds, config.fads, cf(t, T), rng));
    evaluate.evaluate(pop.members);
    memory_update(pop, memory);
    pop.leaders = update_leaders(pop);

    trace.record(t, evaluate.count(), pop.leaders.alpha.fitness);
  }
  return finish(pop.leaders.alpha, std::move(trace));
}

// --- PSO -------------------------------------------------------------------

Vector pso_velocity(const Vector& v, const Vector& x, const Vector& pbest, const Vector& gbest,
                    const PsoConfig& config, const Vector& r1, const Vector& r2,
                    const Vector& vmax) {
  const Vector next = config.inertia * v + config.cognitive * r1 * (pbest - x) +
                      config.social * r2 * (gbest - x);
  return next.max(-vmax).min(vmax);
}

RunResult run_pso(const Problem& problem, const RunBudget& budget, const PsoConfig& config) {
  budget.validate();
  config.validate();
  const Bounds& bounds = problem.bounds();
  const std::size_t d = bounds.dim();
  const std::size_t n = budget.population;
  Rng rng(budget.seed);
  Evaluator evaluate(problem, config.penalty_value);

  Population swarm = random_population(bounds, n, rng);
  evaluate.evaluate(swarm.members);
  std::vector<Individual> personal = swarm.members;
  std::vector<Vector> velocity(n, Vector::Zero(static_cast<Eigen::Index>(d)));
  const Vector vmax = config.velocity_clamp * bounds.width();

  auto global_best = [&]() -> const Individual& {
    return *std::min_element(personal.begin(), personal.end(),
                             [](const Individual& a, const Individual& b) {
                               return a.fitness < b.fitness;
                             });
  };
  Individual gbest = global_best();

  RunTrace trace;
  trace.records.reserve(budget.iterations);
  for (std::size_t t = 1; t <= budget.iterations; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      auto& x = swarm.members[i];
      const Vector r1 = uniform_vector(d, rng);
      const Vector r2 = uniform_vector(d, rng);
      velocity[i] = pso_velocity(velocity[i], x.position, personal[i].position, gbest.position,
                                 config, r1, r2, vmax);
      x.position = clamp_to_bounds(x.position + velocity[i], bounds);
      evaluate.evaluate(x);
      if (x.fitness < personal[i].fitness) personal[i] = x;
    }
    const Individual& candidate = global_best();
    if (candidate.fitness < gbest.fitness) gbest = candidate;
    trace.record(t, evaluate.count(), gbest.fitness);
  }
  return finish(gbest, std::move(trace));
}

// --- DE --------------------------------------------------------------------

Vector de_trial(const Population& pop, std::size_t i, const DeConfig& config,
                NoiseSource& noise, const Bounds& bounds) {
  const std::size_t n = pop.size();
  if (n < 4) throw ValidationError("de_trial: needs at least four members");
  auto draw_other = [&](std::initializer_list<std::size_t> taken) {
    for (;;) {
      const std::size_t c = noise.index(n);
      if (std::find(taken.begin(), taken.end(), c) == taken.end()) return c;
    }
  };
  const std::size_t a = draw_other({i});
  const std::size_t b = draw_other({i, a});
  const std::size_t c = draw_other({i, a, b});
  const Vector mutant = clamp_to_bounds(
      pop.members[a].position + config.scale * (pop.members[b].position - pop.members[c].position),
      bounds);

  const std::size_t d = bounds.dim();
  const std::size_t forced = noise.index(d);
  Vector trial = pop.members[i].position;
  for (std::size_t j = 0; j < d; ++j) {
    const bool take = noise.uniform() < config.crossover || j == forced;
    if (take) trial[static_cast<Eigen::Index>(j)] = mutant[static_cast<Eigen::Index>(j)];
  }
  return trial;
}

RunResult run_de(const Problem& problem, const RunBudget& budget, const DeConfig& config) {
  budget.validate();
  config.validate();
  const Bounds& bounds = problem.bounds();
  const std::size_t n = budget.population;
  Rng rng(budget.seed);
  Evaluator evaluate(problem, config.penalty_value);

  Population pop = random_population(bounds, n, rng);
  evaluate.evaluate(pop.members);
  pop.leaders = update_leaders(pop);

  RunTrace trace;
  trace.records.reserve(budget.iterations);
  for (std::size_t t = 1; t <= budget.iterations; ++t) {
    std::vector<Individual> trials(n);
    for (std::size_t i = 0; i < n; ++i) {
      trials[i].position = de_trial(pop, i, config, rng, bounds);
      evaluate.evaluate(trials[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (trials[i].fitness <= pop.members[i].fitness) pop.members[i] = std::move(trials[i]);
    }
    pop.leaders = update_leaders(pop);
    trace.record(t, evaluate.count(), pop.leaders.alpha.fitness);
  }
  return finish(pop.leaders.alpha, std::move(trace));
}

// --- Random search -----------------------------------------------------------

RunResult run_random_search(const Problem& problem, const RunBudget& budget,
                            std::size_t per_iteration) {
  budget.validate();
  if (per_iteration == 0) throw ValidationError("random search: per-iteration draws must be >= 1");
  const Bounds& bounds = problem.bounds();
  Rng rng(budget.seed);
  Evaluator evaluate(problem, kInf);

  Individual best;
  best.fitness = kInf;
  auto sample = [&] {
    Individual x;
    x.position = clamp_to_bounds(
        bounds.lower() + uniform_vector(bounds.dim(), rng) * bounds.width(), bounds);
    evaluate.evaluate(x);
    if (x.fitness < best.fitness) best = std::move(x);
  };

  for (std::size_t i = 0; i < budget.population; ++i) sample();
  RunTrace trace;
  trace.records.reserve(budget.iterations);
  for (std::size_t t = 1; t <= budget.iterations; ++t) {
    for (std::size_t i = 0; i < per_iteration; ++i) sample();
    trace.record(t, evaluate.count(), best.fitness);
  }
  return finish(best, std::move(trace));
}

}  // namespace hyopt
