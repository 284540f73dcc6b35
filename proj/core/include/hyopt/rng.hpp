#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace hyopt {

struct LevyParams {
  double beta = 1.5;

  /// Throws ValidationError unless 0 < beta <= 2.
  void validate() const;
};

/// Source of the scalar random quantities consumed by the optimizers.
///
/// Algorithms draw exclusively through this interface, in a fixed documented
/// order, so tests can substitute scripted values for any stream.
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;

  /// Uniform on [0, 1).
  virtual double uniform() = 0;
  /// Standard normal.
  virtual double normal() = 0;
  /// One Mantegna Levy step.
  virtual double levy(const LevyParams& params) = 0;
  /// Uniform index in [0, n); n >= 1.
  virtual std::size_t index(std::size_t n) = 0;
};

/// Seeded random stream.
///
/// Generator: std::mt19937_64 constructed from the seed (its output sequence
/// is fixed by the C++ standard). Conversions are spelled out here rather
/// than delegated to <random> distributions, whose algorithms differ between
/// standard libraries:
///   uniform = (next() >> 11) * 2^-53
///   normal  = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)   (one Box-Muller branch)
///   levy    = sigma_u * normal() / |normal()|^(1/beta)
///   index   = min(n - 1, floor(uniform() * n))
class Rng final : public NoiseSource {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() override;
  double normal() override;
  double levy(const LevyParams& params) override;
  std::size_t index(std::size_t n) override;

 private:
  std::mt19937_64 engine_;
  double sigma_beta_ = 0.0;
  double sigma_ = 0.0;
};

}  // namespace hyopt
