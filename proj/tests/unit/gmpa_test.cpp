#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hyopt/baselines.hpp"
#include "hyopt/errors.hpp"
#include "hyopt/gmpa.hpp"
#include "hyopt/stochastic.hpp"
#include "noise.hpp"

namespace hyopt {
namespace {

using testing::FixedNoise;
using testing::ScriptedNoise;

Vector v1(double x) { return Vector::Constant(1, x); }

Individual ind(double x, double f) { return {v1(x), f}; }

Leaders leaders_123() { return {ind(1, 0.1), ind(2, 0.2), ind(3, 0.3)}; }

Population pop_of(std::initializer_list<double> xs) {
  Population pop;
  double f = 1.0;
  for (double x : xs) pop.members.push_back(ind(x, f++));
  return pop;
}

Problem sphere(std::size_t d, double h = 5.0) {
  return Problem("sphere", Bounds::uniform(d, -h, h),
                 [](const Vector& x) { return x.square().sum(); });
}

TEST(Phase, Partition) {
  EXPECT_EQ(phase_for(1, 9), Phase::kExploration);
  EXPECT_EQ(phase_for(2, 9), Phase::kExploration);
  EXPECT_EQ(phase_for(3, 9), Phase::kTransition);
  EXPECT_EQ(phase_for(5, 9), Phase::kTransition);
  EXPECT_EQ(phase_for(6, 9), Phase::kExploitation);
  EXPECT_EQ(phase_for(9, 9), Phase::kExploitation);
}

TEST(Kernels, ExplorationZeroBrownianIsCentroid) {
  const Vector out = exploration_move(v1(0.5), leaders_123(), 0.5, v1(0.0), v1(1.0));
  EXPECT_DOUBLE_EQ(out[0], 2.0);
}

TEST(Kernels, ExplorationHandTrace) {
  // stepsize = 1 * (1 - 0.5) = 0.5; leaders move by 0.25 each.
  const Vector out = exploration_move(v1(0.5), leaders_123(), 0.5, v1(1.0), v1(1.0));
  EXPECT_NEAR(out[0], 2.25, 1e-12);
}

TEST(Kernels, ExplorationAtAlphaIsCentroid) {
  const Vector out = exploration_move(v1(1.0), leaders_123(), 0.5, v1(1.0), v1(0.7));
  EXPECT_DOUBLE_EQ(out[0], 2.0);
}

TEST(Kernels, ExplorationPerLeaderVariant) {
  // stepsizes 0.5, 1.5, 2.5 scaled by 0.5: (1.25 + 2.75 + 4.25) / 3.
  const Vector out = exploration_move(v1(0.5), leaders_123(), 0.5, v1(1.0), v1(1.0), true);
  EXPECT_NEAR(out[0], 2.75, 1e-12);
}

TEST(Kernels, TransitionFirstFaction) {
  EXPECT_DOUBLE_EQ(levy_exploit_move(v1(4.0), v1(2.0), 0.5, v1(0.0), v1(1.0))[0], 2.0);
  // stepsize = 2 * (2 - 2 * 0.5) = 2; 2 + 0.5 * 0.5 * 2.
  EXPECT_NEAR(levy_exploit_move(v1(0.5), v1(2.0), 0.5, v1(2.0), v1(0.5))[0], 2.5, 1e-12);
}

TEST(Kernels, TransitionSecondFactionHandTrace) {
  EXPECT_NEAR(brownian_cf_move(v1(1.0), v1(2.0), 0.5, 0.5, v1(1.0))[0], 2.25, 1e-12);
  EXPECT_DOUBLE_EQ(brownian_cf_move(v1(1.0), v1(2.0), 0.5, 0.0, v1(1.0))[0], 2.0);
}

TEST(Kernels, ExploitationHandTrace) {
  EXPECT_NEAR(levy_cf_move(v1(0.0), v1(1.0), 0.5, 0.2, v1(1.0))[0], 1.1, 1e-12);
  EXPECT_DOUBLE_EQ(levy_cf_move(v1(0.0), v1(1.0), 0.5, 0.2, v1(0.0))[0], 1.0);
  EXPECT_DOUBLE_EQ(levy_cf_move(v1(0.3), v1(1.0), 0.5, 0.0, v1(1.7))[0], 1.0);
}

TEST(Kernels, FadsBoxJumpHandTrace) {
  const Bounds b = Bounds::uniform(1, -1.0, 1.0);
  EXPECT_NEAR(fads_box_jump(v1(0.0), b, 1.0, v1(0.0), v1(1.0))[0], -1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fads_box_jump(v1(0.3), b, 1.0, v1(0.9), v1(0.0))[0], 0.3);
}

TEST(Kernels, FadsDifferenceJump) {
  EXPECT_DOUBLE_EQ(fads_difference_jump(v1(0.3), 0.2, 0.4, v1(1.0), v1(1.0))[0], 0.3);
  // (0.2 * 0.5 + 0.5) * (1 - 0) = 0.6
  EXPECT_NEAR(fads_difference_jump(v1(0.0), 0.2, 0.5, v1(1.0), v1(0.0))[0], 0.6, 1e-12);
}

TEST(Phase1, DrawOrderAndClamp) {
  ScriptedNoise noise;
  // member 0: rb, r ; member 1: rb, r
  noise.normals = {1.0, 0.0};
  noise.uniforms = {1.0, 0.5};
  const Population pop = pop_of({0.5, 7.0});
  const auto out = phase1_update(pop, leaders_123(), 0.5, noise, Bounds::uniform(1, 0.0, 2.1));
  EXPECT_NEAR(out[0][0], 2.1, 1e-12);  // 2.25 clamped
  EXPECT_DOUBLE_EQ(out[1][0], 2.0);
  EXPECT_TRUE(noise.exhausted());
}

TEST(Phase2, FactionsAndDrawOrder) {
  ScriptedNoise noise;
  // n = 4: members 0,1 draw levy then uniform; members 2,3 draw one normal.
  noise.levys = {0.0, 0.0};
  noise.uniforms = {0.3, 0.9};
  noise.normals = {1.0, 1.0};
  Population pop = pop_of({5.0, -5.0, 1.0, 1.0});
  Leaders l = leaders_123();
  l.alpha = ind(2.0, 0.0);
  // t = 5, T = 10: cf = 0.5.
  const auto out = phase2_update(pop, l, 0.5, 5, 10, {}, noise, Bounds::uniform(1, -10, 10));
  EXPECT_DOUBLE_EQ(out[0][0], 2.0);
  EXPECT_DOUBLE_EQ(out[1][0], 2.0);
  EXPECT_NEAR(out[2][0], 2.25, 1e-12);
  EXPECT_NEAR(out[3][0], 2.25, 1e-12);
  EXPECT_TRUE(noise.exhausted());
  EXPECT_THROW(phase2_update(pop, l, 0.5, 1, 10, {}, noise, Bounds::uniform(1, -10, 10)),
               ValidationError);
}

TEST(Phase3, CfZeroMapsToAlpha) {
  FixedNoise noise(0.7, 1.3, 2.1);
  const Population pop = pop_of({5.0, -5.0, 0.5, 3.0});
  const auto out = phase3_update(pop, leaders_123(), 0.5, 10, 10, {}, noise,
                                 Bounds::uniform(1, -10, 10));
  for (const auto& x : out) EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_THROW(phase3_update(pop, leaders_123(), 0.5, 2, 10, {}, noise, Bounds::uniform(1, -10, 10)),
               ValidationError);
}

TEST(ZeroNoise, Phases2And3MapToAlpha) {
  FixedNoise zeros(0.0, 0.0, 0.0);
  const Population pop = pop_of({5.0, -5.0, 0.5, 3.0, 4.0});
  const Bounds b = Bounds::uniform(1, -10, 10);
  for (const auto& x : phase2_update(pop, leaders_123(), 0.5, 5, 10, {}, zeros, b)) {
    EXPECT_DOUBLE_EQ(x[0], 1.0);
  }
  for (const auto& x : phase3_update(pop, leaders_123(), 0.5, 8, 10, {}, zeros, b)) {
    EXPECT_DOUBLE_EQ(x[0], 1.0);
  }
}

TEST(Fads, BoxBranchWithEmptyMaskIsIdentity) {
  ScriptedNoise noise;
  // Per member: r1 <= r2, one R entry, one mask draw above fads.
  noise.uniforms = {0.1, 0.9, 0.5, 0.99, 0.2, 0.2, 0.5, 0.99};
  const Population pop = pop_of({0.3, 0.4});
  const auto out = fads_perturbation(pop, Bounds::uniform(1, -1, 1), 0.2, 1.0, noise);
  EXPECT_DOUBLE_EQ(out[0][0], 0.3);
  EXPECT_DOUBLE_EQ(out[1][0], 0.4);
  EXPECT_EQ(noise.index_draws, 0u);
  EXPECT_TRUE(noise.exhausted());
}

TEST(Fads, FadsZeroWithBoxBranchIsIdentity) {
  FixedNoise noise(0.5, 0.0, 0.0);  // r1 == r2 selects the box branch
  const Population pop = pop_of({0.3, -0.4, 0.9});
  const auto out = fads_perturbation(pop, Bounds::uniform(1, -1, 1), 0.0, 1.0, noise);
  for (std::size_t i = 0; i < pop.size(); ++i) EXPECT_EQ(out[i][0], pop.members[i].position[0]);
}

TEST(Fads, DifferenceBranchEqualMembersIsIdentity) {
  ScriptedNoise noise;
  for (int i = 0; i < 3; ++i) {
    noise.uniforms.insert(noise.uniforms.end(), {0.9, 0.1, 0.3});  // r1 > r2, then r
    noise.indices.insert(noise.indices.end(), {1, 1});              // a = 1, b = 1 -> 2
  }
  const Population pop = pop_of({0.0, 0.5, 0.5});
  const auto out = fads_perturbation(pop, Bounds::uniform(1, -1, 1), 0.2, 1.0, noise);
  for (std::size_t i = 0; i < pop.size(); ++i) EXPECT_EQ(out[i][0], pop.members[i].position[0]);
  EXPECT_TRUE(noise.exhausted());
}

TEST(Fads, DifferenceBranchPicksDistinctMembers) {
  ScriptedNoise noise;
  noise.uniforms = {0.9, 0.1, 0.5, 0.9, 0.1, 0.5, 0.9, 0.1, 0.5};
  noise.indices = {1, 1, 0, 0, 2, 1};
  const Population pop = pop_of({0.0, 0.5, 1.0});
  const auto out = fads_perturbation(pop, Bounds::uniform(1, -5, 5), 0.2, 1.0, noise);
  // scale = 0.2 * 0.5 + 0.5 = 0.6
  EXPECT_NEAR(out[0][0], 0.0 + 0.6 * (0.5 - 1.0), 1e-12);  // a=1, b=1->2
  EXPECT_NEAR(out[1][0], 0.5 + 0.6 * (0.0 - 0.5), 1e-12);  // a=0, b=0->1
  EXPECT_NEAR(out[2][0], 1.0 + 0.6 * (1.0 - 0.5), 1e-12);  // a=2, b=1
  EXPECT_TRUE(noise.exhausted());
}

TEST(Fads, NeedsTwoMembers) {
  FixedNoise noise(0.5, 0.0, 0.0);
  EXPECT_THROW(fads_perturbation(pop_of({0.1}), Bounds::uniform(1, -1, 1), 0.2, 1.0, noise),
               ValidationError);
}

TEST(Memory, RestoresOnlyStrictlyBetter) {
  Population pop = pop_of({0.0, 0.0, 0.0});
  pop.members[0] = ind(10.0, 2.0);
  pop.members[1] = ind(11.0, 1.0);
  pop.members[2] = ind(12.0, 3.0);
  MemoryMatrix mem;
  mem.positions = {v1(0.0), v1(1.0), v1(2.0)};
  mem.fitness = {1.0, 2.0, 3.0};
  memory_update(pop, mem);
  EXPECT_EQ(pop.members[0].position[0], 0.0);  // previous better: revert
  EXPECT_EQ(pop.members[1].position[0], 11.0);  // new better: keep
  EXPECT_EQ(pop.members[2].position[0], 12.0);  // tie: keep new
  EXPECT_EQ(mem.positions[2][0], 12.0);
  EXPECT_EQ(mem.fitness[0], 1.0);
}

TEST(Memory, ShapeMismatch) {
  Population pop = pop_of({0.0, 1.0});
  MemoryMatrix mem = MemoryMatrix::snapshot(pop_of({0.0}));
  EXPECT_THROW(memory_update(pop, mem), ValidationError);
}

TEST(Neighborhood, HandTrace) {
  ScriptedNoise noise;
  noise.uniforms = {1.0, 1.0, 1.0, 1.0, 1.0};  // phi, two W factors, two tau scalars
  noise.normals = {1.0, 1.0};                  // exponent, direction
  const Bounds b(v1(-2.0), v1(2.0));
  Population pop;
  pop.members = {ind(0.0, 0.0)};
  Leaders l{ind(1.0, 5.0), ind(1.0, 5.0), ind(1.0, 5.0)};
  std::vector<double> seen;
  const Problem rec("rec", b, [&](const Vector& x) {
    seen.push_back(x[0]);
    return 1.0;
  });
  Evaluator eval(rec, 1e30);
  const Leaders out = alpha_neighborhood_search(pop, l, b, 5, 10, 0.0, 1, noise, eval);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_NEAR(seen[0], 1.25, 1e-12);
  EXPECT_NEAR(out.alpha.position[0], 1.25, 1e-12);
  EXPECT_EQ(out.beta.fitness, 5.0);
  EXPECT_TRUE(noise.exhausted());
}

TEST(Neighborhood, MemberAtAlphaLeavesLeaders) {
  FixedNoise noise(0.6, 0.8, 0.0);
  const Bounds b = Bounds::uniform(2, -3.0, 3.0);
  Population pop;
  Vector a(2);
  a << 0.4, -0.2;
  pop.members = {{a, 1.0}};
  const Leaders l{{a, 1.0}, {a, 1.0}, {a, 1.0}};
  const Problem p("f", b, [](const Vector& x) { return x.square().sum() + 1.0; });
  Evaluator eval(p, 1e30);
  const Leaders out = alpha_neighborhood_search(pop, l, b, 3, 10, 1e-8, 3, noise, eval);
  EXPECT_TRUE((out.alpha.position == a).all());
  EXPECT_EQ(out.alpha.fitness, 1.0);
  EXPECT_EQ(eval.count(), 3u);
}

TEST(Neighborhood, KZeroThrows) {
  FixedNoise noise(0.5, 0.0, 0.0);
  const Bounds b = Bounds::uniform(1, -1, 1);
  const Problem p("f", b, [](const Vector& x) { return x[0]; });
  Evaluator eval(p, 1e30);
  EXPECT_THROW(alpha_neighborhood_search(pop_of({0.0}), leaders_123(), b, 1, 3, 0.0, 0, noise, eval),
               ValidationError);
}

TEST(Config, Validation) {
  GmpaConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.neighbors_for(30), 10u);
  EXPECT_EQ(c.neighbors_for(6), 6u);
  c.step_scale = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.fads = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.epsilon = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.neighborhood_size = 0;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(RunGmpa, EvaluationAccounting) {
  GmpaConfig c;
  c.neighborhood_size = 5;
  const RunResult r = run_gmpa(sphere(3), {10, 9, 1}, c);
  ASSERT_EQ(r.trace.records.size(), 9u);
  EXPECT_EQ(r.trace.records.back().evaluations, 235u);
  for (std::size_t t = 0; t < 9; ++t) {
    EXPECT_EQ(r.trace.records[t].iteration, t + 1);
    EXPECT_EQ(r.trace.records[t].evaluations, 10 + (t + 1) * 25);
  }
}

class Recorder : public GmpaObserver {
 public:
  std::vector<Phase> phases;
  bool memory_ok = true;
  bool alpha_ok = true;

  void on_phase(std::size_t, Phase p) override { phases.push_back(p); }
  void on_memory_update(std::span<const double> before, std::span<const double> after) override {
    for (std::size_t i = 0; i < before.size(); ++i) memory_ok = memory_ok && after[i] <= before[i];
  }
  void on_neighborhood(double before, double after) override {
    alpha_ok = alpha_ok && after <= before;
  }
};

TEST(RunGmpa, InstrumentedInvariants) {
  Recorder rec;
  const RunResult r = run_gmpa(sphere(4), {12, 30, 3}, GmpaConfig{}, &rec);
  ASSERT_EQ(rec.phases.size(), 30u);
  EXPECT_EQ(std::count(rec.phases.begin(), rec.phases.end(), Phase::kExploration), 9);
  EXPECT_EQ(std::count(rec.phases.begin(), rec.phases.end(), Phase::kTransition), 10);
  EXPECT_EQ(std::count(rec.phases.begin(), rec.phases.end(), Phase::kExploitation), 11);
  EXPECT_TRUE(rec.memory_ok);
  EXPECT_TRUE(rec.alpha_ok);
  for (std::size_t i = 1; i < r.trace.records.size(); ++i) {
    EXPECT_LE(r.trace.records[i].best_fitness, r.trace.records[i - 1].best_fitness);
    EXPECT_GT(r.trace.records[i].evaluations, r.trace.records[i - 1].evaluations);
  }
}

TEST(RunGmpa, Deterministic) {
  const RunResult a = run_gmpa(sphere(3), {8, 20, 77}, GmpaConfig{});
  const RunResult b = run_gmpa(sphere(3), {8, 20, 77}, GmpaConfig{});
  ASSERT_EQ(a.trace.records.size(), b.trace.records.size());
  for (std::size_t i = 0; i < a.trace.records.size(); ++i) {
    EXPECT_EQ(a.trace.records[i].best_fitness, b.trace.records[i].best_fitness);
  }
  EXPECT_TRUE((a.best.position == b.best.position).all());
}

TEST(RunGmpa, NeverEvaluatesOutsideBounds) {
  const Bounds b = Bounds::uniform(3, -1.0, 2.0);
  bool inside = true;
  const Problem p("watch", b, [&](const Vector& x) {
    inside = inside && b.contains(x);
    return (x - 1.5).square().sum();
  });
  run_gmpa(p, {10, 30, 5}, GmpaConfig{});
  EXPECT_TRUE(inside);
}

TEST(RunGmpa, SphereConverges) {
  std::vector<double> finals;
  std::vector<double> random;
  for (std::uint64_t s = 0; s < 10; ++s) {
    finals.push_back(run_gmpa(sphere(2, 100.0), {30, 200, s}, GmpaConfig{}).best.fitness);
    random.push_back(run_random_search(sphere(2, 100.0), {30, 200, s}, 70).best.fitness);
  }
  std::sort(finals.begin(), finals.end());
  std::sort(random.begin(), random.end());
  EXPECT_LT(0.5 * (finals[4] + finals[5]), 1e-3);
  EXPECT_GT(0.5 * (random[4] + random[5]), 1e-2);
}

}  // namespace
}  // namespace hyopt
