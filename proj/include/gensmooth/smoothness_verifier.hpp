#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gensmooth/oracle.hpp"

namespace gensmooth {

struct InequalityMargin {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = true;    // slack >= -atol
};

InequalityMargin make_margin(double lhs, double rhs, double atol);

/// |grad f(x) - grad f(y)| <= (L0 + L1 |grad f(y)|) |x - y|.
InequalityMargin check_asymmetric(const ObjectiveOracle& oracle, const Vector& x,
                                  const Vector& y, const SmoothnessParams& p, double atol);

/// Symmetric variant; the supremum of |grad f| over [x, y] is taken on
/// `grid_points` evenly spaced points including both endpoints.
InequalityMargin check_symmetric(const ObjectiveOracle& oracle, const Vector& x,
                                 const Vector& y, const SmoothnessParams& p,
                                 int grid_points, double atol);

/// |grad f(x) - grad f(y)| <= (L0 + L1 |grad f(y)|) exp(L1 |x - y|) |x - y|.
InequalityMargin check_exp_corollary(const ObjectiveOracle& oracle, const Vector& x,
                                     const Vector& y, const SmoothnessParams& p, double atol);

/// f(y) <= f(x) + <grad f(x), y - x> + (L0 + L1 |grad f(x)|)/2 exp(L1 |x - y|) |x - y|^2.
InequalityMargin check_quadratic_upper(const ObjectiveOracle& oracle, const Vector& x,
                                       const Vector& y, const SmoothnessParams& p, double atol);

/// nu |grad f(x)|^2 / (2 (L0 + L1 |grad f(x)|)) <= f(x) - f*.
InequalityMargin check_grad_lower_bound(const ObjectiveOracle& oracle, const Vector& x,
                                        const SmoothnessParams& p, double nu, double atol);

struct CocoercivityResult {
  bool proximity_ok = true;  // L1 |x - y| exp(L1 |x - y|) <= 1
  InequalityMargin bregman;
  InequalityMargin coco;
};

CocoercivityResult check_cocoercivity(const ObjectiveOracle& oracle, const Vector& x,
                                      const Vector& y, const SmoothnessParams& p, double nu,
                                      double atol);

struct HessGradSample {
  double grad_norm = 0.0;
  double hess_norm = 0.0;
  Vector point;
};

struct HessGradSampling {
  std::vector<HessGradSample> samples;
  std::vector<std::string> warnings;
};

/// (|grad f|, |hess f|) at each point, in order. Points where evaluation
/// fails are skipped and reported in `warnings`.
HessGradSampling sample_hess_vs_grad(const ObjectiveOracle& oracle,
                                     const std::vector<Vector>& points);

/// Upper envelope hess <= L0 + L1 grad over all samples, chosen among the
/// supporting lines of the upper convex hull to minimise L0 + L1 mean(grad).
SmoothnessParams fit_L0_L1(const std::vector<HessGradSample>& samples);

/// CSV with header `grad_norm,hess_norm`.
void write_hess_grad_csv(std::ostream& out, const std::vector<HessGradSample>& samples);

}  // namespace gensmooth
