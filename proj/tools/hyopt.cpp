// hyopt: experiment runner and trajectory evaluator.
//
//   hyopt run --config configs/example.json --workers 4
//   hyopt eval-traj --problem data/problems/cassini1.json --x -789.8,158.3,449.4,54.7,1024.4,4552.8
//   hyopt list

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyopt/algorithms.hpp"
#include "hyopt/bench.hpp"
#include "hyopt/errors.hpp"
#include "hyopt/experiment.hpp"
#include "hyopt/mga/trajectory.hpp"
#include "hyopt/version.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json vec3(const hyopt::mga::Vec3& v) { return {v.x(), v.y(), v.z()}; }

nlohmann::json breakdown_json(const hyopt::mga::TrajectoryBreakdown& b) {
  nlohmann::json legs = nlohmann::json::array();
  for (const auto& l : b.legs) {
    legs.push_back({{"from", l.from},
                    {"to", l.to},
                    {"departure_epoch", l.departure_epoch},
                    {"duration", l.duration},
                    {"v_depart", vec3(l.v_depart)},
                    {"v_arrive", vec3(l.v_arrive)}});
  }
  nlohmann::json flybys = nlohmann::json::array();
  for (const auto& f : b.flybys) {
    flybys.push_back({{"body", f.body},
                      {"delta_v", f.delta_v},
                      {"periapsis", f.periapsis},
                      {"penalty", f.penalty}});
  }
  return {{"legs", legs},          {"launch_dv", b.launch_dv}, {"flybys", flybys},
          {"insertion", b.insertion}, {"total", b.total},    {"degenerate", b.degenerate},
          {"degenerate_reason", b.degenerate_reason}};
}

void print_breakdown_text(const hyopt::mga::TrajectoryBreakdown& b) {
  for (const auto& l : b.legs) {
    std::printf("leg %s -> %s  depart %.6f d  tof %.6f d\n", l.from.c_str(), l.to.c_str(),
                l.departure_epoch, l.duration);
    std::printf("  v_depart [%.9f, %.9f, %.9f] km/s\n", l.v_depart.x(), l.v_depart.y(),
                l.v_depart.z());
    std::printf("  v_arrive [%.9f, %.9f, %.9f] km/s\n", l.v_arrive.x(), l.v_arrive.y(),
                l.v_arrive.z());
  }
  if (b.degenerate) std::printf("degenerate: %s\n", b.degenerate_reason.c_str());
  std::printf("launch     %s km/s\n", num(b.launch_dv).c_str());
  for (const auto& f : b.flybys) {
    std::printf("flyby %-8s dv %s km/s  rp %s km  penalty %s km/s\n", f.body.c_str(),
                num(f.delta_v).c_str(), num(f.periapsis).c_str(), num(f.penalty).c_str());
  }
  std::printf("insertion  %s km/s\n", num(b.insertion).c_str());
  std::printf("total      %s km/s\n", num(b.total).c_str());
}

void print_breakdown_csv(const hyopt::mga::TrajectoryBreakdown& b) {
  std::printf("component,body,delta_v,periapsis\n");
  if (!b.degenerate) {
    std::printf("launch,%s,%s,\n", b.legs.front().from.c_str(), num(b.launch_dv).c_str());
    for (const auto& f : b.flybys) {
      std::printf("flyby,%s,%s,%s\n", f.body.c_str(), num(f.delta_v).c_str(),
                  num(f.periapsis).c_str());
    }
    std::printf("insertion,%s,%s,\n", b.legs.back().to.c_str(), num(b.insertion).c_str());
  }
  std::printf("total,,%s,\n", num(b.total).c_str());
}

int cmd_run(const std::string& config, const std::string& out, std::size_t workers,
            const std::optional<std::uint64_t>& seed, const std::string& format) {
  hyopt::ExperimentConfig cfg = hyopt::load_experiment_config(config);
  if (!out.empty()) cfg.output_dir = out;
  if (seed) cfg.base_seed = *seed;
  cfg.table_format = format == "json" ? hyopt::TableFormat::kJson : hyopt::TableFormat::kCsv;
  const hyopt::ExperimentResult result = hyopt::run_experiment(cfg, workers);
  if (cfg.table_format == hyopt::TableFormat::kJson) {
    hyopt::write_comparison_json(std::cout, result.table);
  } else {
    hyopt::write_comparison_csv(std::cout, result.table);
  }
  std::cerr << "results written to " << cfg.output_dir.string() << "\n";
  return 0;
}

int cmd_eval(const std::string& problem_path, const std::vector<double>& x,
             const std::string& format) {
  const hyopt::mga::MgaProblem prob = hyopt::mga::load_mga_problem(problem_path);
  hyopt::Vector v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v[static_cast<Eigen::Index>(i)] = x[i];
  const hyopt::mga::TrajectoryBreakdown b = hyopt::mga::mga_breakdown(prob, v);
  if (format == "json") {
    std::cout << breakdown_json(b).dump(2) << "\n";
  } else if (format == "csv") {
    print_breakdown_csv(b);
  } else {
    print_breakdown_text(b);
  }
  return 0;
}

int cmd_list(const std::string& format) {
  std::vector<std::string> functions;
  for (const auto& f : hyopt::bench::registry()) functions.push_back(f.name);
  if (format == "json") {
    nlohmann::json doc = {{"algorithms", hyopt::algorithm_names()},
                          {"benchmark_functions", functions},
                          {"problem_kinds", {"bench", "mga"}}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::cout << "algorithms:\n";
  for (const auto& a : hyopt::algorithm_names()) std::cout << "  " << a << "\n";
  std::cout << "benchmark functions:\n";
  for (const auto& f : hyopt::bench::registry()) {
    std::printf("  %-12s [%g, %g]\n", f.name.c_str(), f.default_lower, f.default_upper);
  }
  std::cout << "problem kinds:\n  bench (suite file)\n  mga (trajectory problem file)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaheuristic optimizer experiments and trajectory evaluation"};
  app.set_version_flag("--version",
                       std::string(hyopt::kVersion) + " (" + hyopt::kGitRevision + ")");
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::size_t workers = 1;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  auto* run = app.add_subcommand("run", "Run an algorithm x problem x trial grid");
  run->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory (overrides the config)");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Base seed (overrides the config)");
  run->add_option("--format", format, "Comparison table format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string problem;
  std::vector<double> x;
  std::string eval_format = "text";
  auto* eval = app.add_subcommand("eval-traj", "Evaluate one trajectory decision vector");
  eval->add_option("--problem", problem, "Trajectory problem file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--x", x, "Decision vector [t0, T1, ...] in days, comma separated")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);
  eval->add_option("--format", eval_format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::string list_format = "text";
  auto* list = app.add_subcommand("list", "List registered algorithms and problems");
  list->add_option("--format", list_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config, out, workers, seed, format);
    if (*eval) return cmd_eval(problem, x, eval_format);
    return cmd_list(list_format);
  } catch (const hyopt::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kExitInternal;
  }
}
