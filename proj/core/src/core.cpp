#include "hyopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hyopt/errors.hpp"

namespace hyopt {

Bounds::Bounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw ValidationError("bounds: lower has " + std::to_string(lower_.size()) +
                          " entries, upper has " + std::to_string(upper_.size()));
  }
  if (lower_.size() == 0) throw ValidationError("bounds: zero dimension");
  for (Eigen::Index j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] < upper_[j])) {
      throw ValidationError("bounds: lower[" + std::to_string(j) + "] >= upper[" +
                            std::to_string(j) + "]");
    }
  }
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Bounds(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

bool Bounds::contains(const Vector& x) const {
  return x.size() == lower_.size() && (x >= lower_).all() && (x <= upper_).all();
}

Vector clamp_to_bounds(const Vector& x, const Bounds& b) {
  if (static_cast<std::size_t>(x.size()) != b.dim()) {
    throw ValidationError("clamp_to_bounds: vector has " + std::to_string(x.size()) +
                          " entries, bounds have " + std::to_string(b.dim()));
  }
  return x.max(b.lower()).min(b.upper());
}

Problem::Problem(std::string name, Bounds bounds, Objective objective)
    : name_(std::move(name)), bounds_(std::move(bounds)), objective_(std::move(objective)) {
  if (!objective_) throw ValidationError("problem '" + name_ + "': empty objective");
}

double Problem::evaluate(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) {
    throw ValidationError("problem '" + name_ + "': expected dimension " +
                          std::to_string(dim()) + ", got " + std::to_string(x.size()));
  }
  return objective_(x);
}

void RunBudget::validate() const {
  if (population < 4) throw ValidationError("budget: population must be >= 4");
  if (iterations < 3) throw ValidationError("budget: iterations must be >= 3");
}

void RunTrace::record(std::size_t iteration, std::size_t evaluations, double best) {
  records.push_back({iteration, evaluations, best});
}

Leaders update_leaders(const Population& pop) {
  const auto& members = pop.members;
  if (members.empty()) throw ValidationError("update_leaders: empty population");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!members[i].evaluated()) {
      throw ValidationError("update_leaders: member " + std::to_string(i) + " is unevaluated");
    }
  }

  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return members[a].fitness < members[b].fitness;
  });
  auto ranked = [&](std::size_t r) -> const Individual& {
    return members[order[std::min(r, order.size() - 1)]];
  };

  const Leaders& prev = pop.leaders;
  if (prev.initialized() && prev.alpha.fitness < ranked(0).fitness) {
    return Leaders{prev.alpha, ranked(0), ranked(1)};
  }
  return Leaders{ranked(0), ranked(1), ranked(2)};
}

Evaluator::Evaluator(const Problem& problem, double penalty_value)
    : problem_(problem), penalty_(penalty_value) {}

double Evaluator::operator()(const Vector& x) {
  ++count_;
  const double f = problem_.evaluate(x);
  return std::isfinite(f) ? f : penalty_;
}

void Evaluator::evaluate(Individual& ind) { ind.fitness = (*this)(ind.position); }

void Evaluator::evaluate(std::span<Individual> members) {
  for (auto& m : members) evaluate(m);
}

}  // namespace hyopt
