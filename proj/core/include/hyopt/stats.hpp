#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hyopt {

/// Final best values of one (algorithm, problem) cell, one per trial.
struct TrialSet {
  std::string algorithm;
  std::string problem;
  std::vector<double> values;
};

struct Summary {
  double avg;
  double std;  // sample standard deviation, n - 1 denominator
  double min;
  double max;
};

/// Throws ValidationError for fewer than two values or non-finite entries.
Summary summarize(std::span<const double> values);
Summary summarize(const TrialSet& ts);

/// Two-sided Wilcoxon rank-sum p-value with midranks for ties. Uses exact
/// enumeration when the pooled size is at most 12, otherwise the normal
/// approximation with tie-corrected variance and continuity correction.
double ranksum_p(std::span<const double> a, std::span<const double> b);

/// Exact permutation p-value. Throws ValidationError above 24 pooled values.
double ranksum_p_exact(std::span<const double> a, std::span<const double> b);

double ranksum_p_normal(std::span<const double> a, std::span<const double> b);

struct ComparisonRow {
  std::string problem;
  std::string algorithm;
  Summary summary;
  /// Absent on the reference algorithm's own rows and for single-trial cells.
  std::optional<double> p_vs_reference;
};

/// One row per cell, grouped by problem in first-seen order, algorithms in
/// first-seen order within a problem. Single-trial cells get a NaN std.
/// Throws ValidationError when a problem
/// has no cell for `reference`.
std::vector<ComparisonRow> comparison_table(const std::vector<TrialSet>& cells,
                                            const std::string& reference);

/// Columns: problem, algorithm, avg, std, min, max, p_vs_reference.
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_comparison_json(std::ostream& out, const std::vector<ComparisonRow>& rows);

}  // namespace hyopt
