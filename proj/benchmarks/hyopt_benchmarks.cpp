#include <benchmark/benchmark.h>

#include <filesystem>
#include <vector>

#include "hyopt/algorithms.hpp"
#include "hyopt/bench.hpp"
#include "hyopt/mga/lambert.hpp"
#include "hyopt/mga/trajectory.hpp"
#include "hyopt/rng.hpp"
#include "hyopt/stats.hpp"

namespace {

using namespace hyopt;

const std::filesystem::path kData = HYOPT_BENCH_DATA_DIR;

void BM_Lambert(benchmark::State& state) {
  const mga::Vec3 r1(1.0, 0.1, 0.0);
  const mga::Vec3 r2(-0.4, 1.3, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mga::lambert(r1, r2, 3.0, 1.0));
  }
}
BENCHMARK(BM_Lambert);

void BM_CassiniObjective(benchmark::State& state) {
  const auto prob = mga::load_mga_problem(kData / "problems" / "cassini1.json");
  Vector x(6);
  x << -789.8, 158.3, 449.4, 54.7, 1024.4, 4552.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mga::mga_objective(prob, x));
  }
}
BENCHMARK(BM_CassiniObjective);

void BM_RunAlgorithm(benchmark::State& state, const char* name) {
  const auto suite = bench::load_bench_suite(kData / "suites" / "ordering.json");
  const Problem prob = bench::to_problem(suite.front());
  const AlgorithmSpec spec = default_algorithm(name);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_algorithm(spec, prob, {30, 100, 1}));
  }
}
BENCHMARK_CAPTURE(BM_RunAlgorithm, gmpa, "gmpa")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunAlgorithm, gwo, "gwo")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunAlgorithm, mpa, "mpa")->Unit(benchmark::kMillisecond);

void BM_RankSum(benchmark::State& state) {
  Rng rng(5);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  std::vector<double> b(a.size());
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal() + 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ranksum_p(a, b));
  }
}
BENCHMARK(BM_RankSum)->Arg(6)->Arg(30)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
