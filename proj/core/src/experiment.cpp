#include "hyopt/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "hyopt/errors.hpp"
#include "hyopt/version.hpp"

namespace hyopt {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Reads the keys of an algorithm's params object, rejecting unknown ones.
class Params {
 public:
  Params(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ValidationError(where_ + " must be an object");
  }

  void read(const char* key, double& out) {
    if (!take(key)) return;
    if (!j_[key].is_number()) throw ValidationError(where_ + "." + key + " must be a number");
    out = j_[key].get<double>();
  }

  void read(const char* key, bool& out) {
    if (!take(key)) return;
    if (!j_[key].is_boolean()) throw ValidationError(where_ + "." + key + " must be a boolean");
    out = j_[key].get<bool>();
  }

  void read(const char* key, std::optional<std::size_t>& out) {
    if (!take(key)) return;
    if (!j_[key].is_number_unsigned() || j_[key].get<std::size_t>() == 0) {
      throw ValidationError(where_ + "." + key + " must be a positive integer");
    }
    out = j_[key].get<std::size_t>();
  }

  void read(const char* key, std::optional<LinearSchedule>& out) {
    if (!take(key)) return;
    const json& v = j_[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ValidationError(where_ + "." + key + " must be [start, end]");
    }
    out = LinearSchedule{v[0].get<double>(), v[1].get<double>()};
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ValidationError(where_ + ": unknown parameter '" + item.key() + "'");
      }
    }
  }

 private:
  bool take(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void read_params(AlgorithmSettings& settings, const json& j, const std::string& where) {
  Params p(j, where);
  std::visit(
      [&](auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, GmpaConfig>) {
          p.read("step_scale", c.step_scale);
          p.read("fads", c.fads);
          p.read("levy_beta", c.levy.beta);
          p.read("epsilon", c.epsilon);
          p.read("neighborhood_size", c.neighborhood_size);
          p.read("penalty_value", c.penalty_value);
          p.read("per_leader_stepsize", c.per_leader_stepsize);
          p.read("step_scale_schedule", c.step_scale_schedule);
          p.read("fads_schedule", c.fads_schedule);
          c.validate();
        } else if constexpr (std::is_same_v<T, GwoConfig>) {
          p.read("penalty_value", c.penalty_value);
        } else if constexpr (std::is_same_v<T, MpaConfig>) {
          p.read("step_scale", c.step_scale);
          p.read("fads", c.fads);
          p.read("levy_beta", c.levy.beta);
          p.read("penalty_value", c.penalty_value);
          c.validate();
        } else if constexpr (std::is_same_v<T, PsoConfig>) {
          p.read("inertia", c.inertia);
          p.read("cognitive", c.cognitive);
          p.read("social", c.social);
          p.read("velocity_clamp", c.velocity_clamp);
          p.read("penalty_value", c.penalty_value);
          c.validate();
        } else if constexpr (std::is_same_v<T, DeConfig>) {
          p.read("scale", c.scale);
          p.read("crossover", c.crossover);
          p.read("penalty_value", c.penalty_value);
          c.validate();
        } else {
          p.read("per_iteration", c.per_iteration);
        }
      },
      settings);
  p.finish();
}

json schedule_json(const std::optional<LinearSchedule>& s) {
  if (!s) return nullptr;
  return json::array({s->start, s->end});
}

json settings_json(const AlgorithmSettings& settings, const RunBudget& budget) {
  return std::visit(
      [&](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, GmpaConfig>) {
          return {{"type", "gmpa"},
                  {"step_scale", c.step_scale},
                  {"fads", c.fads},
                  {"levy_beta", c.levy.beta},
                  {"epsilon", c.epsilon},
                  {"neighborhood_size", c.neighbors_for(budget.population)},
                  {"penalty_value", c.penalty_value},
                  {"per_leader_stepsize", c.per_leader_stepsize},
                  {"step_scale_schedule", schedule_json(c.step_scale_schedule)},
                  {"fads_schedule", schedule_json(c.fads_schedule)}};
        } else if constexpr (std::is_same_v<T, GwoConfig>) {
          return {{"type", "gwo"}, {"penalty_value", c.penalty_value}};
        } else if constexpr (std::is_same_v<T, MpaConfig>) {
          return {{"type", "mpa"},
                  {"step_scale", c.step_scale},
                  {"fads", c.fads},
                  {"levy_beta", c.levy.beta},
                  {"penalty_value", c.penalty_value}};
        } else if constexpr (std::is_same_v<T, PsoConfig>) {
          return {{"type", "pso"},
                  {"inertia", c.inertia},
                  {"cognitive", c.cognitive},
                  {"social", c.social},
                  {"velocity_clamp", c.velocity_clamp},
                  {"penalty_value", c.penalty_value}};
        } else if constexpr (std::is_same_v<T, DeConfig>) {
          return {{"type", "de"},
                  {"scale", c.scale},
                  {"crossover", c.crossover},
                  {"penalty_value", c.penalty_value}};
        } else {
          return {{"type", "random"},
                  {"per_iteration", c.per_iteration.value_or(budget.population)}};
        }
      },
      settings);
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json problem_json(const ProblemEntry& e) {
  json j = {{"name", e.name()}, {"kind", e.kind}, {"source", e.source.generic_string()}};
  if (e.bench) {
    j["base"] = e.bench->base;
    j["dim"] = e.bench->dim;
    j["bias"] = e.bench->bias;
    j["shift"] = vector_json(e.bench->shift);
    j["lower"] = vector_json(e.bench->bounds.lower());
    j["upper"] = vector_json(e.bench->bounds.upper());
    j["rotated"] = e.bench->rotation.has_value();
  }
  if (e.mga) {
    json seq = json::array();
    for (const auto& b : e.mga->sequence) seq.push_back(b.name);
    j["sequence"] = seq;
    j["lower"] = vector_json(e.mga->bounds().lower());
    j["upper"] = vector_json(e.mga->bounds().upper());
    j["capture_rp_km"] = e.mga->capture_periapsis;
    j["capture_e"] = e.mga->capture_eccentricity;
    j["penalty_value"] = e.mga->penalty_value;
    j["swingby_penalty_slope"] = e.mga->swingby.penalty_slope;
  }
  return j;
}

template <typename T>
T read_count(const json& j, const char* key, const std::string& where) {
  if (!j.is_number_unsigned()) throw ValidationError(where + key + " must be a non-negative integer");
  return j.get<T>();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string trace_csv(const RunTrace& trace) {
  std::ostringstream out;
  out << "iteration,evals,best_fitness\n";
  for (const auto& r : trace.records) {
    out << r.iteration << ',' << r.evaluations << ',' << fmt(r.best_fitness) << '\n';
  }
  return out.str();
}

}  // namespace

std::string ProblemEntry::name() const {
  if (bench) return bench->id;
  if (mga) return mga->name;
  return {};
}

Problem ProblemEntry::problem() const {
  if (bench) return bench::to_problem(*bench);
  if (mga) return mga::to_problem(*mga);
  throw ValidationError("problem entry holds no problem");
}

void ExperimentConfig::validate() const {
  if (problems.empty()) throw ValidationError("config.problems: at least one problem is required");
  if (algorithms.empty()) {
    throw ValidationError("config.algorithms: at least one algorithm is required");
  }
  if (trials < 1) throw ValidationError("config.trials must be >= 1");
  try {
    budget.validate();
  } catch (const ValidationError& err) {
    throw ValidationError(std::string("config.") + err.what());
  }
  std::set<std::string> names;
  for (const auto& p : problems) {
    if (!names.insert(sanitize(p.name())).second) {
      throw ValidationError("config.problems: duplicate problem name '" + p.name() + "'");
    }
  }
  names.clear();
  bool has_reference = false;
  for (const auto& a : algorithms) {
    if (!names.insert(sanitize(a.name)).second) {
      throw ValidationError("config.algorithms: duplicate algorithm label '" + a.name + "'");
    }
    has_reference = has_reference || a.name == reference;
  }
  if (!has_reference) {
    throw ValidationError("config.reference: '" + reference + "' is not among the algorithms");
  }
}

ExperimentConfig parse_experiment_config(const std::string& text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("config is not valid JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> known = {"problems",  "algorithms", "trials",   "budget",
                                              "base_seed", "output_dir", "reference"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      throw ValidationError("config: unknown field '" + item.key() + "'");
    }
  }
  auto resolve = [&](const std::string& p) {
    fs::path path = p;
    return path.is_relative() ? base_dir / path : path;
  };

  ExperimentConfig cfg;
  if (!doc.contains("problems") || !doc["problems"].is_object()) {
    throw ValidationError("config.problems must be an object");
  }
  const json& probs = doc["problems"];
  for (const auto& item : probs.items()) {
    if (item.key() != "bench_suite" && item.key() != "mga") {
      throw ValidationError("config.problems: unknown field '" + item.key() + "'");
    }
  }
  if (probs.contains("bench_suite")) {
    if (!probs["bench_suite"].is_string()) {
      throw ValidationError("config.problems.bench_suite must be a path");
    }
    const fs::path suite = resolve(probs["bench_suite"].get<std::string>());
    try {
      for (auto& spec : bench::load_bench_suite(suite)) {
        cfg.problems.push_back({"bench", suite, std::move(spec), std::nullopt});
      }
    } catch (const ValidationError& err) {
      throw ValidationError(std::string("config.problems.bench_suite: ") + err.what());
    }
  }
  if (probs.contains("mga")) {
    if (!probs["mga"].is_array()) throw ValidationError("config.problems.mga must be a list of paths");
    for (std::size_t i = 0; i < probs["mga"].size(); ++i) {
      const json& p = probs["mga"][i];
      const std::string where = "config.problems.mga[" + std::to_string(i) + "]";
      if (!p.is_string()) throw ValidationError(where + " must be a path");
      const fs::path file = resolve(p.get<std::string>());
      try {
        cfg.problems.push_back({"mga", file, std::nullopt, mga::load_mga_problem(file)});
      } catch (const ValidationError& err) {
        throw ValidationError(where + ": " + err.what());
      }
    }
  }

  if (!doc.contains("algorithms") || !doc["algorithms"].is_array()) {
    throw ValidationError("config.algorithms must be a list");
  }
  for (std::size_t i = 0; i < doc["algorithms"].size(); ++i) {
    const json& a = doc["algorithms"][i];
    const std::string where = "config.algorithms[" + std::to_string(i) + "]";
    try {
      if (a.is_string()) {
        cfg.algorithms.push_back(default_algorithm(a.get<std::string>()));
        continue;
      }
      if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
        throw ValidationError("expected a name or {\"name\", \"params\"}");
      }
      for (const auto& item : a.items()) {
        if (item.key() != "name" && item.key() != "params" && item.key() != "label") {
          throw ValidationError("unknown field '" + item.key() + "'");
        }
      }
      AlgorithmSpec spec = default_algorithm(a["name"].get<std::string>());
      if (a.contains("label")) {
        if (!a["label"].is_string()) throw ValidationError("label must be a string");
        spec.name = a["label"].get<std::string>();
      }
      if (a.contains("params")) read_params(spec.settings, a["params"], "params");
      cfg.algorithms.push_back(std::move(spec));
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }
  }

  if (doc.contains("trials")) cfg.trials = read_count<std::size_t>(doc["trials"], "trials", "config.");
  if (doc.contains("budget")) {
    const json& b = doc["budget"];
    if (!b.is_object()) throw ValidationError("config.budget must be an object");
    for (const auto& item : b.items()) {
      if (item.key() != "population" && item.key() != "iterations") {
        throw ValidationError("config.budget: unknown field '" + item.key() + "'");
      }
    }
    if (b.contains("population")) {
      cfg.budget.population = read_count<std::size_t>(b["population"], "population", "config.budget.");
    }
    if (b.contains("iterations")) {
      cfg.budget.iterations = read_count<std::size_t>(b["iterations"], "iterations", "config.budget.");
    }
  }
  if (doc.contains("base_seed")) {
    cfg.base_seed = read_count<std::uint64_t>(doc["base_seed"], "base_seed", "config.");
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ValidationError("config.output_dir must be a path");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("reference")) {
    if (!doc["reference"].is_string()) throw ValidationError("config.reference must be a string");
    cfg.reference = doc["reference"].get<std::string>();
  } else if (!cfg.algorithms.empty()) {
    cfg.reference = cfg.algorithms.front().name;
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.parent_path());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::size_t workers) {
  cfg.validate();
  if (workers == 0) throw ValidationError("workers must be >= 1");
  const auto started = std::chrono::steady_clock::now();

  const fs::path& out = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out.string() + ": " + ec.message());

  std::vector<Problem> problems;
  for (const auto& p : cfg.problems) problems.push_back(p.problem());

  const std::size_t n_alg = cfg.algorithms.size();
  const std::size_t tasks = problems.size() * n_alg * cfg.trials;
  for (std::size_t pi = 0; pi < problems.size(); ++pi) {
    for (const auto& a : cfg.algorithms) {
      fs::create_directories(out / "traces" / sanitize(cfg.problems[pi].name()) / sanitize(a.name), ec);
      if (ec) throw std::runtime_error("cannot create trace directory under " + out.string());
    }
    fs::create_directories(out / "finals" / sanitize(cfg.problems[pi].name()), ec);
    if (ec) throw std::runtime_error("cannot create finals directory under " + out.string());
  }

  std::vector<double> finals(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t k = task % cfg.trials;
      const std::size_t ai = (task / cfg.trials) % n_alg;
      const std::size_t pi = task / (cfg.trials * n_alg);
      try {
        RunBudget budget = cfg.budget;
        budget.seed = cfg.base_seed + k;
        const RunResult r = run_algorithm(cfg.algorithms[ai], problems[pi], budget);
        finals[task] = r.best.fitness;
        write_file(out / "traces" / sanitize(cfg.problems[pi].name()) /
                       sanitize(cfg.algorithms[ai].name) / ("trial_" + std::to_string(k) + ".csv"),
                   trace_csv(r.trace));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    }
  };
  const std::size_t threads = std::min(workers, std::max<std::size_t>(tasks, 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  for (std::size_t pi = 0; pi < problems.size(); ++pi) {
    for (std::size_t ai = 0; ai < n_alg; ++ai) {
      TrialSet cell{cfg.algorithms[ai].name, cfg.problems[pi].name(), {}};
      std::ostringstream csv;
      csv << "trial,seed,best_fitness\n";
      for (std::size_t k = 0; k < cfg.trials; ++k) {
        const double v = finals[(pi * n_alg + ai) * cfg.trials + k];
        cell.values.push_back(v);
        csv << k << ',' << cfg.base_seed + k << ',' << fmt(v) << '\n';
      }
      write_file(out / "finals" / sanitize(cell.problem) / (sanitize(cell.algorithm) + ".csv"),
                 csv.str());
      result.cells.push_back(std::move(cell));
    }
  }
  result.table = comparison_table(result.cells, cfg.reference);
  std::ostringstream table;
  if (cfg.table_format == TableFormat::kJson) {
    write_comparison_json(table, result.table);
    write_file(out / "comparison.json", table.str());
  } else {
    write_comparison_csv(table, result.table);
    write_file(out / "comparison.csv", table.str());
  }

  json meta;
  meta["version"] = kVersion;
  meta["git_revision"] = kGitRevision;
  meta["trials"] = cfg.trials;
  meta["base_seed"] = cfg.base_seed;
  json seeds = json::array();
  for (std::size_t k = 0; k < cfg.trials; ++k) seeds.push_back(cfg.base_seed + k);
  meta["seeds"] = seeds;
  meta["seed_scheme"] = "trial k uses base_seed + k";
  meta["budget"] = {{"population", cfg.budget.population}, {"iterations", cfg.budget.iterations}};
  meta["reference"] = cfg.reference;
  json algs = json::object();
  for (const auto& a : cfg.algorithms) algs[a.name] = settings_json(a.settings, cfg.budget);
  meta["algorithms"] = algs;
  json probs = json::array();
  for (const auto& p : cfg.problems) probs.push_back(problem_json(p));
  meta["problems"] = probs;
  meta["table_format"] = cfg.table_format == TableFormat::kJson ? "json" : "csv";
  write_file(out / "metadata.json", meta.dump(2) + "\n");

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json runtime = {{"workers", threads}, {"wall_seconds", seconds}};
  write_file(out / "runtime.json", runtime.dump(2) + "\n");
  return result;
}

}  // namespace hyopt
