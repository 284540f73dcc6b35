#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyopt/baselines.hpp"
#include "hyopt/core.hpp"
#include "hyopt/gmpa.hpp"

namespace hyopt {

struct RandomSearchConfig {
  /// Points drawn per iteration; unset means one per population slot.
  std::optional<std::size_t> per_iteration;
};

using AlgorithmSettings =
    std::variant<GmpaConfig, GwoConfig, MpaConfig, PsoConfig, DeConfig, RandomSearchConfig>;

struct AlgorithmSpec {
  std::string name;
  AlgorithmSettings settings;
};

/// gmpa, gwo, mpa, pso, de, random.
const std::vector<std::string>& algorithm_names();

/// Default settings for a registered name. Throws ValidationError otherwise.
AlgorithmSpec default_algorithm(std::string_view name);

/// Validates the settings, then dispatches to the matching run_* function.
RunResult run_algorithm(const AlgorithmSpec& spec, const Problem& problem,
                        const RunBudget& budget);

}  // namespace hyopt
