#pragma once

#include <stdexcept>
#include <string>

namespace hyopt {

// Bad input: wrong dimensions, values outside a documented domain, malformed
// files. The CLI maps this family to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A decision vector outside the problem's box.
class OutOfBoundsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Geometry for which a two-body construction is undefined (collinear Lambert
// endpoints, zero-length excess velocities).
class DegenerateGeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative solver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace hyopt
