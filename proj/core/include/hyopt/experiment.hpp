#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hyopt/algorithms.hpp"
#include "hyopt/bench.hpp"
#include "hyopt/core.hpp"
#include "hyopt/mga/trajectory.hpp"
#include "hyopt/stats.hpp"

namespace hyopt {

struct ProblemEntry {
  std::string kind;  // "bench" or "mga"
  std::filesystem::path source;
  std::optional<bench::BenchSpec> bench;
  std::optional<mga::MgaProblem> mga;

  std::string name() const;
  Problem problem() const;
};

enum class TableFormat { kCsv, kJson };

/// An (algorithm x problem x trial) grid. Trial k runs with seed
/// base_seed + k.
struct ExperimentConfig {
  std::vector<ProblemEntry> problems;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t trials = 30;
  RunBudget budget;
  std::uint64_t base_seed = 0;
  std::filesystem::path output_dir = "results";
  /// Algorithm the p-values compare against; defaults to the first listed.
  std::string reference;
  TableFormat table_format = TableFormat::kCsv;

  void validate() const;
};

/// Config file (JSON):
///   {"problems": {"bench_suite": path, "mga": [path, ...]},
///    "algorithms": ["name" | {"name": str, "params": {...}}, ...],
///    "trials": int, "budget": {"population": int, "iterations": int},
///    "base_seed": int, "output_dir": path, "reference": str}
/// Input paths resolve against the config file's directory; output_dir
/// resolves against the working directory. Errors name the offending field.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::filesystem::path& base_dir = {});

struct ExperimentResult {
  std::vector<TrialSet> cells;
  std::vector<ComparisonRow> table;
};

/// Runs the grid on `workers` threads and writes under cfg.output_dir:
///   traces/<problem>/<algorithm>/trial_<k>.csv   iteration,evals,best_fitness
///   finals/<problem>/<algorithm>.csv             trial,seed,best_fitness
///   comparison.csv or comparison.json
///   metadata.json                                effective parameters, seeds, version
///   runtime.json                                 wall-clock and worker count
/// Everything except runtime.json is independent of `workers`.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers = 1);

}  // namespace hyopt
