#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>

#include "hyopt/rng.hpp"

namespace hyopt::testing {

// Every stream returns a constant.
class FixedNoise final : public NoiseSource {
 public:
  FixedNoise(double u, double n, double l, std::size_t i = 0) : u_(u), n_(n), l_(l), i_(i) {}

  double uniform() override { return u_; }
  double normal() override { return n_; }
  double levy(const LevyParams&) override { return l_; }
  std::size_t index(std::size_t n) override { return i_ < n ? i_ : n - 1; }

 private:
  double u_;
  double n_;
  double l_;
  std::size_t i_;
};

// Per-stream queues. An exhausted stream returns its fallback if one is set
// and throws otherwise. Draws are counted per stream.
class ScriptedNoise final : public NoiseSource {
 public:
  std::deque<double> uniforms;
  std::deque<double> normals;
  std::deque<double> levys;
  std::deque<std::size_t> indices;

  std::optional<double> uniform_fallback;
  std::optional<double> normal_fallback;
  std::optional<double> levy_fallback;

  std::size_t uniform_draws = 0;
  std::size_t normal_draws = 0;
  std::size_t levy_draws = 0;
  std::size_t index_draws = 0;

  double uniform() override {
    ++uniform_draws;
    return next(uniforms, uniform_fallback, "uniform");
  }
  double normal() override {
    ++normal_draws;
    return next(normals, normal_fallback, "normal");
  }
  double levy(const LevyParams&) override {
    ++levy_draws;
    return next(levys, levy_fallback, "levy");
  }
  std::size_t index(std::size_t n) override {
    ++index_draws;
    if (indices.empty()) throw std::logic_error("scripted index stream exhausted");
    const std::size_t v = indices.front();
    indices.pop_front();
    if (v >= n) throw std::logic_error("scripted index out of range");
    return v;
  }

  bool exhausted() const {
    return uniforms.empty() && normals.empty() && levys.empty() && indices.empty();
  }

 private:
  static double next(std::deque<double>& q, const std::optional<double>& fallback,
                     const char* what) {
    if (q.empty()) {
      if (!fallback) throw std::logic_error(std::string("scripted ") + what + " stream exhausted");
      return *fallback;
    }
    const double v = q.front();
    q.pop_front();
    return v;
  }
};

}  // namespace hyopt::testing
