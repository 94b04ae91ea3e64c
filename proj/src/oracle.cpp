#include "gensmooth/oracle.hpp"

#include <cmath>
#include <utility>

namespace gensmooth {

void SmoothnessParams::validate() const {
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw ConfigError("L0 must be positive and finite");
  if (!(L1 >= 0.0) || !std::isfinite(L1)) throw ConfigError("L1 must be nonnegative and finite");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be nonnegative and finite");
  if (L_classical && !(*L_classical >= mu)) throw ConfigError("L must be at least mu");
}

double ObjectiveOracle::component_value(std::size_t, const Vector&) const {
  throw ConfigError(name() + " is not a finite sum");
}

Vector ObjectiveOracle::component_gradient(std::size_t, const Vector&) const {
  throw ConfigError(name() + " is not a finite sum");
}

FunctionOracle::FunctionOracle(std::string name, Eigen::Index dim, ValueFn value,
                               GradientFn gradient)
    : name_(std::move(name)), dim_(dim), value_(std::move(value)),
      gradient_(std::move(gradient)) {}

FunctionOracle& FunctionOracle::with_optimum(Optimum opt) {
  optimum_ = std::move(opt);
  return *this;
}

FunctionOracle& FunctionOracle::with_smoothness(SmoothnessParams p) {
  p.validate();
  smoothness_ = p;
  return *this;
}

double checked_value(const ObjectiveOracle& oracle, const Vector& x) {
  const double v = oracle.value(x);
  if (!std::isfinite(v)) throw EvaluationError(oracle.name() + ": non-finite function value");
  return v;
}

Vector checked_gradient(const ObjectiveOracle& oracle, const Vector& x) {
  Vector g = oracle.gradient(x);
  if (g.size() != oracle.dimension())
    throw EvaluationError(oracle.name() + ": gradient has wrong length");
  if (!g.allFinite()) throw EvaluationError(oracle.name() + ": non-finite gradient");
  return g;
}

}  // namespace gensmooth
