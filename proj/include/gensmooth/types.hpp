#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gensmooth {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Constants of the (L0,L1)-smoothness assumption, the strong convexity
/// modulus and, when the function is also classically smooth, its Lipschitz
/// constant L.
struct SmoothnessParams {
  double L0 = 1.0;
  double L1 = 0.0;
  double mu = 0.0;
  std::optional<double> L_classical;

  /// Throws ConfigError unless L0 > 0, L1 >= 0, mu >= 0 and L >= mu.
  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function or gradient evaluation produced a non-finite number.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: bad parameters, missing optimum, schema violations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Optimizer state that violates its own invariants.
class StateError : public Error {
 public:
  using Error::Error;
};

/// f(x) fell below the declared optimal value.
class InconsistentOptimumError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Failure inside an optimizer loop, tagged with the iteration that failed.
class RunError : public Error {
 public:
  RunError(std::size_t iteration, const std::string& what)
      : Error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

}  // namespace gensmooth
