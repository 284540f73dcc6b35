#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hyopt {

/// Dense real vector used for positions, steps and bounds.
using Vector = Eigen::ArrayXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Box constraints `lower[j] <= x[j] <= upper[j]`, with `lower[j] < upper[j]`.
class Bounds {
 public:
  /// Empty placeholder (dim 0); assign a real box before use.
  Bounds() = default;
  Bounds(Vector lower, Vector upper);

  /// The same interval `[lo, hi]` repeated `dim` times.
  static Bounds uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return static_cast<std::size_t>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector width() const { return upper_ - lower_; }

  bool contains(const Vector& x) const;

 private:
  Vector lower_;
  Vector upper_;
};

/// Componentwise projection onto the box. Throws ValidationError on a
/// dimension mismatch.
Vector clamp_to_bounds(const Vector& x, const Bounds& b);

/// A deterministic scalar objective over a box, minimized by every optimizer
/// in this library. `evaluate` must be safe to call from several threads.
class Problem {
 public:
  using Objective = std::function<double(const Vector&)>;

  Problem(std::string name, Bounds bounds, Objective objective);

  const std::string& name() const { return name_; }
  const Bounds& bounds() const { return bounds_; }
  std::size_t dim() const { return bounds_.dim(); }

  /// Evaluates the objective. Throws ValidationError on dimension mismatch.
  double evaluate(const Vector& x) const;

 private:
  std::string name_;
  Bounds bounds_;
  Objective objective_;
};

struct Individual {
  Vector position;
  double fitness = std::numeric_limits<double>::quiet_NaN();

  bool evaluated() const { return fitness == fitness; }
};

/// The three best solutions. `alpha` is the elite: best-so-far over the run.
struct Leaders {
  Individual alpha;
  Individual beta;
  Individual delta;

  /// True once `update_leaders` has run at least once.
  bool initialized() const { return alpha.evaluated(); }
};

struct Population {
  std::vector<Individual> members;
  Leaders leaders;

  std::size_t size() const { return members.size(); }
};

struct RunBudget {
  std::size_t population = 30;
  std::size_t iterations = 1000;
  std::uint64_t seed = 0;

  /// Throws ValidationError unless population >= 4 and iterations >= 3.
  void validate() const;
};

struct TraceRecord {
  std::size_t iteration;
  std::size_t evaluations;
  double best_fitness;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  Vector best_position;

  void record(std::size_t iteration, std::size_t evaluations, double best);
};

struct RunResult {
  Individual best;
  RunTrace trace;
};

/// Ranks the evaluated members and refreshes alpha/beta/delta.
///
/// Members are ordered by fitness with ties going to the lower index. If the
/// current alpha is strictly better than every member it is kept and the two
/// best members fill beta and delta; otherwise the three best members take
/// over. Populations with fewer than three members repeat the last slot.
/// Throws ValidationError if a member is unevaluated or the population is
/// empty.
Leaders update_leaders(const Population& pop);

/// Counts evaluations and replaces non-finite objective values by a penalty.
class Evaluator {
 public:
  Evaluator(const Problem& problem, double penalty_value);

  double operator()(const Vector& x);
  void evaluate(Individual& ind);
  void evaluate(std::span<Individual> members);

  std::size_t count() const { return count_; }
  const Problem& problem() const { return problem_; }

 private:
  const Problem& problem_;
  double penalty_;
  std::size_t count_ = 0;
};

}  // namespace hyopt
