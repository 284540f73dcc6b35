#include "hyopt/algorithms.hpp"

#include "hyopt/errors.hpp"

namespace hyopt {

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"gmpa", "gwo", "mpa", "pso", "de", "random"};
  return names;
}

AlgorithmSpec default_algorithm(std::string_view name) {
  if (name == "gmpa") return {"gmpa", GmpaConfig{}};
  if (name == "gwo") return {"gwo", GwoConfig{}};
  if (name == "mpa") return {"mpa", MpaConfig{}};
  if (name == "pso") return {"pso", PsoConfig{}};
  if (name == "de") return {"de", DeConfig{}};
  if (name == "random") return {"random", RandomSearchConfig{}};
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

RunResult run_algorithm(const AlgorithmSpec& spec, const Problem& problem,
                        const RunBudget& budget) {
  struct Dispatch {
    const Problem& problem;
    const RunBudget& budget;

    RunResult operator()(const GmpaConfig& c) const { return run_gmpa(problem, budget, c); }
    RunResult operator()(const GwoConfig& c) const { return run_gwo(problem, budget, c); }
    RunResult operator()(const MpaConfig& c) const { return run_mpa(problem, budget, c); }
    RunResult operator()(const PsoConfig& c) const { return run_pso(problem, budget, c); }
    RunResult operator()(const DeConfig& c) const { return run_de(problem, budget, c); }
    RunResult operator()(const RandomSearchConfig& c) const {
      return run_random_search(problem, budget, c.per_iteration.value_or(budget.population));
    }
  };
  return std::visit(Dispatch{problem, budget}, spec.settings);
}

}  // namespace hyopt
