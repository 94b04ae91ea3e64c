#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gensmooth/types.hpp"

namespace gensmooth {

struct Optimum {
  Vector x;
  double f = 0.0;
};

/// Zeroth- and first-order access to an objective f : R^d -> R.
///
/// Finite sums f = (1/n) sum_i f_i additionally expose their components.
/// Instances are immutable after construction and safe to share between
/// threads.
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;

  virtual std::string name() const = 0;
  virtual Eigen::Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;

  /// Number of components of a finite sum, 0 when f is not one.
  virtual std::size_t component_count() const { return 0; }
  virtual double component_value(std::size_t i, const Vector& x) const;
  virtual Vector component_gradient(std::size_t i, const Vector& x) const;

  const std::optional<Optimum>& optimum() const { return optimum_; }
  const std::optional<std::vector<double>>& component_optima() const {
    return component_optima_;
  }
  /// Constants certified for f itself.
  const std::optional<SmoothnessParams>& smoothness() const {
    return smoothness_;
  }
  /// Constants shared by every component f_i of a finite sum.
  const std::optional<SmoothnessParams>& component_smoothness() const {
    return component_smoothness_;
  }

 protected:
  std::optional<Optimum> optimum_;
  std::optional<std::vector<double>> component_optima_;
  std::optional<SmoothnessParams> smoothness_;
  std::optional<SmoothnessParams> component_smoothness_;
};

using OraclePtr = std::shared_ptr<const ObjectiveOracle>;

/// Oracle assembled from callables; handy for ad hoc objectives in tests.
class FunctionOracle final : public ObjectiveOracle {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  FunctionOracle(std::string name, Eigen::Index dim, ValueFn value,
                 GradientFn gradient);

  FunctionOracle& with_optimum(Optimum opt);
  FunctionOracle& with_smoothness(SmoothnessParams p);

  std::string name() const override { return name_; }
  Eigen::Index dimension() const override { return dim_; }
  double value(const Vector& x) const override { return value_(x); }
  Vector gradient(const Vector& x) const override { return gradient_(x); }

 private:
  std::string name_;
  Eigen::Index dim_;
  ValueFn value_;
  GradientFn gradient_;
};

/// Value with a finiteness check; throws EvaluationError otherwise.
double checked_value(const ObjectiveOracle& oracle, const Vector& x);
/// Gradient with a finiteness check; throws EvaluationError otherwise.
Vector checked_gradient(const ObjectiveOracle& oracle, const Vector& x);

}  // namespace gensmooth
