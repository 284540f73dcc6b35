#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyopt/errors.hpp"
#include "hyopt/rng.hpp"
#include "hyopt/stochastic.hpp"
#include "noise.hpp"
#include "oracles.hpp"

namespace hyopt {
namespace {

TEST(Mantegna, SigmaMatchesGammaOracle) {
  for (double beta : {0.5, 1.0, 1.5, 1.9}) {
    EXPECT_NEAR(mantegna_sigma(beta), oracle::mantegna_sigma(beta), 1e-12) << beta;
  }
  EXPECT_NEAR(mantegna_sigma(1.5), 0.69657, 1e-5);
}

TEST(Mantegna, ZeroNumeratorGivesZeroStep) {
  for (double v : {-3.0, 0.0, 1e-300, 2.0}) EXPECT_EQ(mantegna_step(0.0, v, 1.5), 0.0);
}

TEST(Mantegna, InvalidBeta) {
  Rng r(1);
  EXPECT_THROW(levy_vector(3, LevyParams{0.0}, r), ValidationError);
  EXPECT_THROW(levy_vector(3, LevyParams{2.5}, r), ValidationError);
  EXPECT_NO_THROW(levy_vector(3, LevyParams{2.0}, r));
}

TEST(Vectors, ShapeAndZeroDimension) {
  Rng r(1);
  EXPECT_EQ(brownian_vector(3, r).size(), 3);
  EXPECT_EQ(levy_vector(3, {}, r).size(), 3);
  EXPECT_EQ(uniform_vector(3, r).size(), 3);
  EXPECT_THROW(brownian_vector(0, r), ValidationError);
  EXPECT_THROW(levy_vector(0, {}, r), ValidationError);
}

TEST(Vectors, SameStateSameVector) {
  Rng a(9);
  Rng b(9);
  EXPECT_TRUE((brownian_vector(5, a) == brownian_vector(5, b)).all());
  EXPECT_TRUE((levy_vector(5, {}, a) == levy_vector(5, {}, b)).all());
}

TEST(Vectors, BrownianMoments) {
  Rng r(11);
  const Vector v = brownian_vector(1'000'000, r);
  const double mean = v.mean();
  const double var = (v - mean).square().sum() / (v.size() - 1.0);
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(Masks, Extremes) {
  Rng r(2);
  EXPECT_TRUE((binary_mask(50, 0.0, r) == 0.0).all());
  EXPECT_TRUE((binary_mask(50, 1.0, r) == 1.0).all());
}

TEST(Masks, Frequency) {
  Rng r(3);
  EXPECT_NEAR(binary_mask(1'000'000, 0.2, r).mean(), 0.2, 0.005);
}

TEST(Masks, ComparesUniformAgainstProbability) {
  testing::ScriptedNoise noise;
  noise.uniforms = {0.1, 0.3, 0.2};
  const Vector m = binary_mask(3, 0.2, noise);
  EXPECT_EQ(m[0], 1.0);
  EXPECT_EQ(m[1], 0.0);
  EXPECT_EQ(m[2], 0.0);
}

TEST(Levy, HeavierTailThanNormal) {
  Rng r(4);
  const Vector l = levy_vector(1'000'000, {}, r);
  const Vector g = brownian_vector(1'000'000, r);
  const double pl = (l.abs() > 5.0).cast<double>().mean();
  const double pg = (g.abs() > 5.0).cast<double>().mean();
  EXPECT_GT(pl, 10.0 * std::max(pg, 1e-6));
}

TEST(Levy, TailSlope) {
  Rng r(5);
  const Vector l = levy_vector(1'000'000, {}, r);
  std::vector<double> a(l.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) a[i] = std::abs(l[i]);
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  // Least-squares slope of log survival against log |step| between the
  // 0.99 and 0.9999 quantiles.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (std::size_t i = static_cast<std::size_t>(0.99 * n); i < static_cast<std::size_t>(0.9999 * n);
       ++i) {
    const double x = std::log(a[i]);
    const double y = std::log((n - static_cast<double>(i)) / n);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    m += 1;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  EXPECT_NEAR(slope, -1.5, 0.2);
}

TEST(Cf, Values) {
  EXPECT_EQ(cf(0, 10), 1.0);
  EXPECT_EQ(cf(10, 10), 0.0);
  EXPECT_DOUBLE_EQ(cf(5, 10), 0.5);
  EXPECT_THROW(cf(11, 10), ValidationError);
  EXPECT_THROW(cf(0, 0), ValidationError);
}

TEST(Cf, StaysInUnitInterval) {
  for (std::size_t T : {3u, 10u, 1000u}) {
    for (std::size_t t = 0; t <= T; ++t) {
      const double c = cf(t, T);
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, 1.0);
    }
  }
}

}  // namespace
}  // namespace hyopt
