#include "hyopt/bench.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "hyopt/errors.hpp"

namespace hyopt::bench {

namespace {

using std::numbers::pi;

double sphere(const Vector& z) { return z.square().sum(); }

double rosenbrock(const Vector& z) {
  double f = 0.0;
  for (Eigen::Index i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i + 1] - z[i] * z[i];
    const double b = z[i] - 1.0;
    f += 100.0 * a * a + b * b;
  }
  return f;
}

double rastrigin(const Vector& z) {
  return (z.square() - 10.0 * (2.0 * pi * z).cos() + 10.0).sum();
}

double ackley(const Vector& z) {
  const double d = static_cast<double>(z.size());
  const double a = -20.0 * std::exp(-0.2 * std::sqrt(z.square().sum() / d));
  const double b = -std::exp((2.0 * pi * z).cos().sum() / d);
  return a + b + 20.0 + std::numbers::e;
}

double griewank(const Vector& z) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + z.square().sum() / 4000.0 - prod;
}

double zakharov(const Vector& z) {
  double s1 = 0.0;
  double s2 = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    s1 += z[i] * z[i];
    s2 += 0.5 * static_cast<double>(i + 1) * z[i];
  }
  const double s2sq = s2 * s2;
  return s1 + s2sq + s2sq * s2sq;
}

double levy(const Vector& z) {
  const Vector w = 1.0 + (z - 1.0) / 4.0;
  const Eigen::Index d = w.size();
  const double s0 = std::sin(pi * w[0]);
  double f = s0 * s0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double s = std::sin(pi * w[i] + 1.0);
    f += (w[i] - 1.0) * (w[i] - 1.0) * (1.0 + 10.0 * s * s);
  }
  const double sd = std::sin(2.0 * pi * w[d - 1]);
  f += (w[d - 1] - 1.0) * (w[d - 1] - 1.0) * (1.0 + sd * sd);
  return f;
}

double schaffer_f7(const Vector& z) {
  const Eigen::Index d = z.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double s = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
    const double root = std::sqrt(s);
    const double wave = std::sin(50.0 * std::pow(s, 0.2));
    acc += root + root * wave * wave;
  }
  const double mean = acc / static_cast<double>(d - 1);
  return mean * mean;
}

Vector zeros(std::size_t d) { return Vector::Zero(static_cast<Eigen::Index>(d)); }
Vector ones(std::size_t d) { return Vector::Ones(static_cast<Eigen::Index>(d)); }

using json = nlohmann::json;

Eigen::MatrixXd read_matrix(const std::filesystem::path& path, std::size_t dim,
                            const std::string& where) {
  std::ifstream in(path);
  if (!in) throw ValidationError(where + ": cannot open rotation file " + path.string());
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!(in >> m(r, c))) {
        throw ValidationError(where + ": rotation file " + path.string() + " holds fewer than " +
                              std::to_string(dim * dim) + " numbers");
      }
    }
  }
  return m;
}

Vector read_vector(const json& j, const std::string& where, const char* key) {
  if (!j.is_array()) throw ValidationError(where + ": '" + key + "' must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError(where + ": '" + key + "' holds a non-number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

BenchSpec parse_entry(const json& e, std::size_t index, const std::filesystem::path& base_dir) {
  std::string where = "suite entry " + std::to_string(index);
  if (!e.is_object()) throw ValidationError(where + ": expected an object");
  if (!e.contains("name") || !e["name"].is_string()) {
    throw ValidationError(where + ": missing string field 'name'");
  }
  const std::string name = e["name"].get<std::string>();
  where += " ('" + name + "')";
  if (!e.contains("dim") || !e["dim"].is_number_integer() || e["dim"].get<long long>() < 1) {
    throw ValidationError(where + ": 'dim' must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(e["dim"].get<long long>());

  BenchSpec spec;
  try {
    spec = BenchSpec::make(name, dim);
  } catch (const ValidationError& err) {
    throw ValidationError(where + ": " + err.what());
  }
  if (e.contains("id")) {
    if (!e["id"].is_string()) throw ValidationError(where + ": 'id' must be a string");
    spec.id = e["id"].get<std::string>();
  }
  if (e.contains("shift")) spec.shift = read_vector(e["shift"], where, "shift");
  if (e.contains("bias")) {
    if (!e["bias"].is_number()) throw ValidationError(where + ": 'bias' must be a number");
    spec.bias = e["bias"].get<double>();
  }
  if (e.contains("bounds")) {
    const json& b = e["bounds"];
    try {
      if (b.is_array() && b.size() == 2 && b[0].is_number() && b[1].is_number()) {
        spec.bounds = Bounds::uniform(dim, b[0].get<double>(), b[1].get<double>());
      } else if (b.is_object() && b.contains("lower") && b.contains("upper")) {
        spec.bounds = Bounds(read_vector(b["lower"], where, "bounds.lower"),
                             read_vector(b["upper"], where, "bounds.upper"));
      } else {
        throw ValidationError("'bounds' must be [lo, hi] or {lower, upper}");
      }
    } catch (const ValidationError& err) {
      throw ValidationError(where + ": " + err.what());
    }
  }
  if (e.contains("rotation")) {
    if (!e["rotation"].is_string()) throw ValidationError(where + ": 'rotation' must be a path");
    std::filesystem::path p = e["rotation"].get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    spec.rotation = read_matrix(p, dim, where);
  }
  try {
    spec.validate();
  } catch (const ValidationError& err) {
    throw ValidationError(where + ": " + err.what());
  }
  return spec;
}

}  // namespace

const std::vector<BaseFunction>& registry() {
  static const std::vector<BaseFunction> functions = {
      {"sphere", sphere, -100.0, 100.0, 1, zeros},
      {"rosenbrock", rosenbrock, -30.0, 30.0, 2, ones},
      {"rastrigin", rastrigin, -5.12, 5.12, 1, zeros},
      {"ackley", ackley, -32.768, 32.768, 1, zeros},
      {"griewank", griewank, -600.0, 600.0, 1, zeros},
      {"zakharov", zakharov, -5.0, 10.0, 1, zeros},
      {"levy", levy, -10.0, 10.0, 1, ones},
      {"schaffer_f7", schaffer_f7, -100.0, 100.0, 2, zeros},
  };
  return functions;
}

const BaseFunction& lookup(std::string_view name) {
  for (const auto& f : registry()) {
    if (f.name == name) return f;
  }
  throw ValidationError("unknown benchmark function '" + std::string(name) + "'");
}

BenchSpec BenchSpec::make(std::string_view base, std::size_t dim) {
  const BaseFunction& f = lookup(base);
  if (dim < f.min_dim) {
    throw ValidationError(f.name + " needs dimension >= " + std::to_string(f.min_dim));
  }
  BenchSpec spec;
  spec.id = f.name + "_d" + std::to_string(dim);
  spec.base = f.name;
  spec.dim = dim;
  spec.shift = zeros(dim);
  spec.bounds = Bounds::uniform(dim, f.default_lower, f.default_upper);
  return spec;
}

void BenchSpec::validate() const {
  const BaseFunction& f = lookup(base);
  if (dim < f.min_dim) {
    throw ValidationError(f.name + " needs dimension >= " + std::to_string(f.min_dim));
  }
  if (static_cast<std::size_t>(shift.size()) != dim) {
    throw ValidationError("shift has length " + std::to_string(shift.size()) + ", expected " +
                          std::to_string(dim));
  }
  if (bounds.dim() != dim) {
    throw ValidationError("bounds have dimension " + std::to_string(bounds.dim()) +
                          ", expected " + std::to_string(dim));
  }
  if (!bounds.contains(shift)) throw ValidationError("shift lies outside the bounds");
  if (rotation) {
    const auto n = static_cast<Eigen::Index>(dim);
    if (rotation->rows() != n || rotation->cols() != n) {
      throw ValidationError("rotation must be " + std::to_string(dim) + " x " +
                            std::to_string(dim));
    }
    const double err =
        ((*rotation) * rotation->transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err > 1e-8) throw ValidationError("rotation matrix is not orthogonal");
  }
}

Vector BenchSpec::optimum() const {
  const BaseFunction& f = lookup(base);
  Vector target = f.argmin(dim);
  if (rotation) target = (rotation->transpose() * target.matrix()).array();
  return target + shift;
}

double evaluate_bench(const BenchSpec& spec, const Vector& x) {
  const BaseFunction& f = lookup(spec.base);
  if (static_cast<std::size_t>(x.size()) != spec.dim ||
      static_cast<std::size_t>(spec.shift.size()) != spec.dim) {
    throw ValidationError(spec.id + ": expected dimension " + std::to_string(spec.dim) +
                          ", got " + std::to_string(x.size()));
  }
  Vector z = x - spec.shift;
  if (spec.rotation) z = ((*spec.rotation) * z.matrix()).array();
  return f.evaluate(z) + spec.bias;
}

Problem to_problem(const BenchSpec& spec) {
  spec.validate();
  return Problem(spec.id, spec.bounds, [spec](const Vector& x) { return evaluate_bench(spec, x); });
}

std::vector<BenchSpec> parse_bench_suite(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("suite file is not valid JSON: ") + err.what());
  }
  if (!doc.is_array()) throw ValidationError("suite file must hold a JSON array of entries");
  std::vector<BenchSpec> specs;
  specs.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) specs.push_back(parse_entry(doc[i], i, base_dir));
  return specs;
}

std::vector<BenchSpec> load_bench_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open suite file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_bench_suite(buf.str(), path.parent_path());
}

}  // namespace hyopt::bench
