#include "hyopt/gmpa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyopt/errors.hpp"
#include "hyopt/stochastic.hpp"

namespace hyopt {

double LinearSchedule::at(std::size_t t, std::size_t T) const {
  const double ratio = T == 0 ? 0.0 : static_cast<double>(t) / static_cast<double>(T);
  return start + (end - start) * ratio;
}

void GmpaConfig::validate() const {
  if (!(step_scale > 0.0)) throw ValidationError("gmpa: P must be positive");
  if (!(fads >= 0.0 && fads <= 1.0)) throw ValidationError("gmpa: fads must lie in [0, 1]");
  levy.validate();
  if (!(epsilon > 0.0)) throw ValidationError("gmpa: epsilon must be positive");
  if (neighborhood_size && *neighborhood_size == 0) {
    throw ValidationError("gmpa: neighborhood size must be >= 1");
  }
  if (step_scale_schedule &&
      !(step_scale_schedule->start > 0.0 && step_scale_schedule->end > 0.0)) {
    throw ValidationError("gmpa: P schedule endpoints must be positive");
  }
  if (fads_schedule) {
    for (double v : {fads_schedule->start, fads_schedule->end}) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("gmpa: fads schedule endpoints must lie in [0, 1]");
      }
    }
  }
}

std::size_t GmpaConfig::neighbors_for(std::size_t population) const {
  return neighborhood_size.value_or(std::min<std::size_t>(population, 10));
}

Phase phase_for(std::size_t t, std::size_t T) {
  if (3 * t < T) return Phase::kExploration;
  if (3 * t < 2 * T) return Phase::kTransition;
  return Phase::kExploitation;
}

Vector exploration_move(const Vector& x, const Leaders& leaders, double p, const Vector& rb,
                        const Vector& r, bool per_leader) {
  const Vector shared = rb * (leaders.alpha.position - rb * x);
  auto toward = [&](const Vector& leader) -> Vector {
    const Vector step = per_leader ? Vector(rb * (leader - rb * x)) : shared;
    return leader + p * r * step;
  };
  return (toward(leaders.alpha.position) + toward(leaders.beta.position) +
          toward(leaders.delta.position)) /
         3.0;
}

Vector levy_exploit_move(const Vector& x, const Vector& alpha, double p, const Vector& rl,
                         const Vector& r) {
  const Vector step = rl * (alpha - rl * x);
  return alpha + p * r * step;
}

Vector brownian_cf_move(const Vector& x, const Vector& alpha, double p, double cf,
                        const Vector& rb) {
  const Vector step = rb * (rb * alpha - x);
  return alpha + p * cf * step;
}

Vector levy_cf_move(const Vector& x, const Vector& alpha, double p, double cf,
                    const Vector& rl) {
  const Vector step = rl * (rl * alpha - x);
  return alpha + p * cf * step;
}

Vector fads_box_jump(const Vector& x, const Bounds& bounds, double cf, const Vector& r,
                     const Vector& mask) {
  return x + cf * (bounds.lower() + r * bounds.width()) * mask;
}

Vector fads_difference_jump(const Vector& x, double fads, double r, const Vector& xa,
                            const Vector& xb) {
  return x + (fads * (1.0 - r) + r) * (xa - xb);
}

namespace {

void require_phase(std::size_t t, std::size_t T, Phase expected, const char* who) {
  if (T == 0 || t > T || phase_for(t, T) != expected) {
    throw ValidationError(std::string(who) + ": iteration " + std::to_string(t) + " of " +
                          std::to_string(T) + " is outside this phase");
  }
}

void require_leaders(const Leaders& leaders, const char* who) {
  if (!leaders.initialized()) throw ValidationError(std::string(who) + ": leaders not set");
}

}  // namespace

std::vector<Vector> phase1_update(const Population& pop, const Leaders& leaders, double p,
                                  NoiseSource& noise, const Bounds& bounds, bool per_leader) {
  require_leaders(leaders, "phase1_update");
  const std::size_t d = bounds.dim();
  std::vector<Vector> out;
  out.reserve(pop.size());
  for (const auto& m : pop.members) {
    const Vector rb = brownian_vector(d, noise);
    const Vector r = uniform_vector(d, noise);
    out.push_back(clamp_to_bounds(exploration_move(m.position, leaders, p, rb, r, per_leader),
                                  bounds));
  }
  return out;
}

std::vector<Vector> phase2_update(const Population& pop, const Leaders& leaders, double p,
                                  std::size_t t, std::size_t T, const LevyParams& levy,
                                  NoiseSource& noise, const Bounds& bounds) {
  require_phase(t, T, Phase::kTransition, "phase2_update");
  require_leaders(leaders, "phase2_update");
  const std::size_t d = bounds.dim();
  const double decay = cf(t, T);
  const std::size_t half = pop.size() / 2;
  const Vector& alpha = leaders.alpha.position;
  std::vector<Vector> out;
  out.reserve(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const Vector& x = pop.members[i].position;
    if (i < half) {
      const Vector rl = levy_vector(d, levy, noise);
      const Vector r = uniform_vector(d, noise);
      out.push_back(clamp_to_bounds(levy_exploit_move(x, alpha, p, rl, r), bounds));
    } else {
      const Vector rb = brownian_vector(d, noise);
      out.push_back(clamp_to_bounds(brownian_cf_move(x, alpha, p, decay, rb), bounds));
    }
  }
  return out;
}

std::vector<Vector> phase3_update(const Population& pop, const Leaders& leaders, double p,
                                  std::size_t t, std::size_t T, const LevyParams& levy,
                                  NoiseSource& noise, const Bounds& bounds) {
  require_phase(t, T, Phase::kExploitation, "phase3_update");
  require_leaders(leaders, "phase3_update");
  const std::size_t d = bounds.dim();
  const double decay = cf(t, T);
  const Vector& alpha = leaders.alpha.position;
  std::vector<Vector> out;
  out.reserve(pop.size());
  for (const auto& m : pop.members) {
    const Vector rl = levy_vector(d, levy, noise);
    out.push_back(clamp_to_bounds(levy_cf_move(m.position, alpha, p, decay, rl), bounds));
  }
  return out;
}

std::vector<Vector> fads_perturbation(const Population& pop, const Bounds& bounds,
                                      double fads, double cf, NoiseSource& noise) {
  const std::size_t n = pop.size();
  if (n < 2) throw ValidationError("fads_perturbation: needs at least two members");
  const std::size_t d = bounds.dim();
  std::vector<Vector> out;
  out.reserve(n);
  for (const auto& m : pop.members) {
    const double r1 = noise.uniform();
    const double r2 = noise.uniform();
    if (r1 <= r2) {
      const Vector r = uniform_vector(d, noise);
      const Vector mask = binary_mask(d, fads, noise);
      out.push_back(clamp_to_bounds(fads_box_jump(m.position, bounds, cf, r, mask), bounds));
    } else {
      const double r = noise.uniform();
      const std::size_t a = noise.index(n);
      std::size_t b = noise.index(n - 1);
      if (b >= a) ++b;
      out.push_back(clamp_to_bounds(
          fads_difference_jump(m.position, fads, r, pop.members[a].position,
                               pop.members[b].position),
          bounds));
    }
  }
  return out;
}

MemoryMatrix MemoryMatrix::snapshot(const Population& pop) {
  MemoryMatrix mem;
  mem.positions.reserve(pop.size());
  mem.fitness.reserve(pop.size());
  for (const auto& m : pop.members) {
    mem.positions.push_back(m.position);
    mem.fitness.push_back(m.fitness);
  }
  return mem;
}

void memory_update(Population& pop, MemoryMatrix& memory) {
  if (memory.positions.size() != pop.size() || memory.fitness.size() != pop.size()) {
    throw ValidationError("memory_update: memory holds " + std::to_string(memory.fitness.size()) +
                          " rows for " + std::to_string(pop.size()) + " members");
  }
  for (std::size_t i = 0; i < pop.size(); ++i) {
    auto& m = pop.members[i];
    if (memory.positions[i].size() != m.position.size()) {
      throw ValidationError("memory_update: dimension mismatch in row " + std::to_string(i));
    }
    if (memory.fitness[i] < m.fitness) {
      m.position = memory.positions[i];
      m.fitness = memory.fitness[i];
    }
  }
  memory = MemoryMatrix::snapshot(pop);
}

Leaders alpha_neighborhood_search(const Population& pop, const Leaders& leaders,
                                  const Bounds& bounds, std::size_t t, std::size_t T,
                                  double epsilon, std::size_t k, NoiseSource& noise,
                                  Evaluator& evaluate) {
  if (k == 0) throw ValidationError("alpha_neighborhood_search: k must be >= 1");
  if (pop.members.empty()) throw ValidationError("alpha_neighborhood_search: empty population");
  if (T == 0 || t > T) throw ValidationError("alpha_neighborhood_search: t outside [0, T]");
  require_leaders(leaders, "alpha_neighborhood_search");

  const std::size_t d = bounds.dim();
  const std::size_t n = pop.size();
  const Vector& alpha = leaders.alpha.position;
  const double progress = static_cast<double>(t) / static_cast<double>(T);
  const double base = 1.0 - progress + epsilon;

  Individual best;
  best.fitness = kInf;
  for (std::size_t j = 0; j < k; ++j) {
    const Vector& xp = pop.members[j % n].position;
    const Vector phi = bounds.lower() + uniform_vector(d, noise) * bounds.width();
    const double exponent = 2.0 * noise.normal();
    const Vector spread = uniform_vector(d, noise) * progress;
    const Vector jitter = uniform_vector(d, noise);
    const Vector weight = std::pow(base, exponent) * spread * jitter;
    const double toward_random = noise.uniform();
    const double from_member = noise.uniform();
    const double distance = (alpha - xp).matrix().norm();
    const Vector tau = weight * (toward_random * phi - from_member * xp) * distance;
    Vector neighbor = alpha + brownian_vector(d, noise) * tau;
    for (Eigen::Index c = 0; c < neighbor.size(); ++c) {
      if (std::isnan(neighbor[c])) neighbor[c] = alpha[c];
    }
    neighbor = clamp_to_bounds(neighbor, bounds);
    const double f = evaluate(neighbor);
    if (f < best.fitness) {
      best.position = std::move(neighbor);
      best.fitness = f;
    }
  }

  if (best.fitness < leaders.alpha.fitness) {
    return Leaders{best, leaders.alpha, leaders.beta};
  }
  return leaders;
}

namespace {

void assign_positions(Population& pop, std::vector<Vector>&& positions) {
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop.members[i].position = std::move(positions[i]);
    pop.members[i].fitness = std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<double> fitness_of(const Population& pop) {
  std::vector<double> f;
  f.reserve(pop.size());
  for (const auto& m : pop.members) f.push_back(m.fitness);
  return f;
}

void memory_pass(Population& pop, MemoryMatrix& memory, GmpaObserver* observer) {
  if (observer) {
    const auto before = fitness_of(pop);
    memory_update(pop, memory);
    const auto after = fitness_of(pop);
    observer->on_memory_update(before, after);
  } else {
    memory_update(pop, memory);
  }
}

}  // namespace

RunResult run_gmpa(const Problem& problem, const RunBudget& budget, const GmpaConfig& config,
                   GmpaObserver* observer) {
  budget.validate();
  config.validate();

  const Bounds& bounds = problem.bounds();
  const std::size_t d = bounds.dim();
  const std::size_t n = budget.population;
  const std::size_t T = budget.iterations;
  const std::size_t k = config.neighbors_for(n);

  Rng rng(budget.seed);
  Evaluator evaluate(problem, config.penalty_value);

  Population pop;
  pop.members.resize(n);
  for (auto& m : pop.members) {
    m.position = clamp_to_bounds(bounds.lower() + uniform_vector(d, rng) * bounds.width(), bounds);
  }
  evaluate.evaluate(pop.members);
  pop.leaders = update_leaders(pop);
  MemoryMatrix memory = MemoryMatrix::snapshot(pop);

  RunResult result;
  result.trace.records.reserve(T);

  for (std::size_t t = 1; t <= T; ++t) {
    const double p = config.step_scale_schedule ? config.step_scale_schedule->at(t, T)
                                                : config.step_scale;
    const double fads = config.fads_schedule ? config.fads_schedule->at(t, T) : config.fads;
    const Phase phase = phase_for(t, T);
    if (observer) observer->on_phase(t, phase);

    switch (phase) {
      case Phase::kExploration:
        assign_positions(pop, phase1_update(pop, pop.leaders, p, rng, bounds,
                                            config.per_leader_stepsize));
        break;
      case Phase::kTransition:
        assign_positions(pop, phase2_update(pop, pop.leaders, p, t, T, config.levy, rng, bounds));
        break;
      case Phase::kExploitation:
        assign_positions(pop, phase3_update(pop, pop.leaders, p, t, T, config.levy, rng, bounds));
        break;
    }
    evaluate.evaluate(pop.members);
    memory_pass(pop, memory, observer);
    pop.leaders = update_leaders(pop);

    assign_positions(pop, fads_perturbation(pop, bounds, fads, cf(t, T), rng));
    evaluate.evaluate(pop.members);
    memory_pass(pop, memory, observer);
    pop.leaders = update_leaders(pop);

    const double alpha_before = pop.leaders.alpha.fitness;
    pop.leaders = alpha_neighborhood_search(pop, pop.leaders, bounds, t, T, config.epsilon, k,
                                            rng, evaluate);
    if (observer) observer->on_neighborhood(alpha_before, pop.leaders.alpha.fitness);

    result.trace.record(t, evaluate.count(), pop.leaders.alpha.fitness);
  }

  result.best = pop.leaders.alpha;
  result.trace.best_position = result.best.position;
  return result;
}

}  // namespace hyopt
