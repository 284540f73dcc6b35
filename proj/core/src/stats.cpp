#include "hyopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>

#include "json.hpp"

#include "hyopt/errors.hpp"

namespace hyopt {

namespace {

void require_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("rank-sum test needs two nonempty samples");
  for (auto s : {a, b}) {
    for (double v : s) {
      if (!std::isfinite(v)) throw ValidationError("rank-sum test got a non-finite value");
    }
  }
}

// Midranks of the pooled sample, doubled so they stay integral.
struct Ranked {
  std::vector<std::int64_t> doubled;  // pooled order: a then b
  double tie_term = 0.0;              // sum of t^3 - t over tie groups
};

Ranked rank_pooled(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size() + b.size();
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  Ranked r;
  r.doubled.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // ranks i+1 .. j+1, doubled mean = i + j + 2
    const auto mid = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) r.doubled[order[k]] = mid;
    const double t = static_cast<double>(j - i + 1);
    r.tie_term += t * t * t - t;
    i = j + 1;
  }
  return r;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json nullable(double v) { return std::isnan(v) ? nlohmann::json() : nlohmann::json(v); }

}  // namespace

Summary summarize(std::span<const double> values) {
  if (values.size() < 2) {
    throw ValidationError("summary needs at least two trials, got " +
                          std::to_string(values.size()));
  }
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw ValidationError("summary got a non-finite value");
  }
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)), sorted.front(), sorted.back()};
}

Summary summarize(const TrialSet& ts) {
  try {
    return summarize(std::span<const double>(ts.values));
  } catch (const ValidationError& err) {
    throw ValidationError(ts.algorithm + " on " + ts.problem + ": " + err.what());
  }
}

double ranksum_p_exact(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  const std::size_t n = a.size() + b.size();
  if (n > 24) throw ValidationError("exact rank-sum enumeration limited to 24 values");
  const Ranked r = rank_pooled(a, b);
  const std::size_t m = a.size();
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < m; ++i) observed += r.doubled[i];

  // counts[k][s]: subsets of size k whose doubled ranks sum to s.
  const std::size_t max_sum = 2 * n * (n + 1);
  std::vector<std::vector<double>> counts(m + 1, std::vector<double>(max_sum + 1, 0.0));
  counts[0][0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<std::size_t>(r.doubled[i]);
    for (std::size_t k = std::min(m, i + 1); k >= 1; --k) {
      for (std::size_t s = max_sum; s >= w; --s) counts[k][s] += counts[k - 1][s - w];
    }
  }
  double total = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  for (std::size_t s = 0; s <= max_sum; ++s) {
    const double c = counts[m][s];
    total += c;
    if (static_cast<std::int64_t>(s) <= observed) lower += c;
    if (static_cast<std::int64_t>(s) >= observed) upper += c;
  }
  return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

double ranksum_p_normal(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  const Ranked r = rank_pooled(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w += 0.5 * static_cast<double>(r.doubled[i]);
  const double mean = na * (n + 1.0) / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - r.tie_term / (n * (n - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double dev = std::max(0.0, std::abs(w - mean) - 0.5);
  const double z = dev / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

double ranksum_p(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  if (a.size() + b.size() <= 12) return ranksum_p_exact(a, b);
  return ranksum_p_normal(a, b);
}

std::vector<ComparisonRow> comparison_table(const std::vector<TrialSet>& cells,
                                            const std::string& reference) {
  std::vector<std::string> problems;
  for (const auto& c : cells) {
    if (std::find(problems.begin(), problems.end(), c.problem) == problems.end()) {
      problems.push_back(c.problem);
    }
  }
  std::vector<ComparisonRow> rows;
  for (const auto& problem : problems) {
    const TrialSet* ref = nullptr;
    for (const auto& c : cells) {
      if (c.problem == problem && c.algorithm == reference) ref = &c;
    }
    if (ref == nullptr) {
      throw ValidationError("reference algorithm '" + reference + "' has no results on " +
                            problem);
    }
    for (const auto& c : cells) {
      if (c.problem != problem) continue;
      if (c.values.size() == 1) {
        // Single-trial grids still get a table; spread and p need two trials.
        const double v = c.values.front();
        rows.push_back({problem, c.algorithm, {v, kNaN, v, v}, std::nullopt});
        continue;
      }
      ComparisonRow row{problem, c.algorithm, summarize(c), std::nullopt};
      if (c.algorithm != reference && ref->values.size() > 1) {
        row.p_vs_reference = ranksum_p(ref->values, c.values);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << "problem,algorithm,avg,std,min,max,p_vs_reference\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.algorithm << ',' << format_double(r.summary.avg) << ','
        << format_double(r.summary.std) << ',' << format_double(r.summary.min) << ','
        << format_double(r.summary.max) << ','
        << (r.p_vs_reference ? format_double(*r.p_vs_reference) : std::string()) << '\n';
  }
}

void write_comparison_json(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j = {{"problem", r.problem},       {"algorithm", r.algorithm},
                        {"avg", r.summary.avg},       {"std", nullable(r.summary.std)},
                        {"min", r.summary.min},       {"max", r.summary.max}};
    j["p_vs_reference"] = r.p_vs_reference ? nlohmann::json(*r.p_vs_reference) : nlohmann::json();
    doc.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace hyopt
