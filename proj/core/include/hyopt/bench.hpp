#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hyopt/core.hpp"

namespace hyopt::bench {

/// A textbook test function together with what is known about it.
struct BaseFunction {
  std::string name;
  double (*evaluate)(const Vector& z);
  double default_lower;
  double default_upper;
  /// Smallest dimension the definition makes sense for.
  std::size_t min_dim;
  /// Location of the global minimum (value 0) in dimension d.
  Vector (*argmin)(std::size_t d);
};

/// sphere, rosenbrock, rastrigin, ackley, griewank, zakharov, levy,
/// schaffer_f7, in that order.
const std::vector<BaseFunction>& registry();

/// Throws ValidationError for an unknown name.
const BaseFunction& lookup(std::string_view name);

/// f(x) = base(M (x - shift)) + bias, with M the optional orthogonal rotation.
struct BenchSpec {
  std::string id;
  std::string base;
  std::size_t dim = 0;
  Vector shift;
  double bias = 0.0;
  Bounds bounds;
  std::optional<Eigen::MatrixXd> rotation;

  /// Spec with zero shift, zero bias and the function's default box.
  static BenchSpec make(std::string_view base, std::size_t dim);

  /// Checks the registered name, dimensions, shift inside the box, and
  /// rotation orthogonality.
  void validate() const;

  /// Where the global minimum sits for this spec (argmin shifted; rotations
  /// keep it because they act on x - shift).
  Vector optimum() const;
};

/// Throws ValidationError on unknown name or dimension mismatch.
double evaluate_bench(const BenchSpec& spec, const Vector& x);

/// Wraps a spec as an optimizable problem named after `spec.id`.
Problem to_problem(const BenchSpec& spec);

/// Parses a suite file: a JSON array of entries
///   {"name": str, "dim": int, "id"?: str, "shift"?: [num], "bias"?: num,
///    "bounds"?: [lo, hi] | {"lower": [num], "upper": [num]},
///    "rotation"?: path to a whitespace-separated dim x dim matrix}
/// An empty (or whitespace-only) file is an empty suite. Relative rotation
/// paths resolve against the suite file's directory. Errors name the entry.
std::vector<BenchSpec> load_bench_suite(const std::filesystem::path& path);

/// Same, from text already in memory.
std::vector<BenchSpec> parse_bench_suite(std::string_view text,
                                         const std::filesystem::path& base_dir = {});

}  // namespace hyopt::bench
