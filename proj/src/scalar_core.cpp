#include "gensmooth/scalar_core.hpp"

#include <algorithm>
#include <cmath>

namespace gensmooth {

double solve_nu() {
  double lo = 0.5;
  double hi = 0.6;
  // t * exp(t) - 1 changes sign on [0.5, 0.6]; halve until the bracket collapses.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mid * std::exp(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r_lo = std::abs(lo * std::exp(lo) - 1.0);
  const double r_hi = std::abs(hi * std::exp(hi) - 1.0);
  return r_lo <= r_hi ? lo : hi;
}

double nu() {
  static const double value = solve_nu();
  return value;
}

Vector fd_gradient(const ObjectiveOracle& oracle, const Vector& x, double h) {
  if (!(h > 0.0)) throw ConfigError("fd_gradient: step must be positive");
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = checked_value(oracle, probe);
    probe[i] = x[i] - h;
    const double down = checked_value(oracle, probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

namespace {

Vector hessian_vector(const ObjectiveOracle& oracle, const Vector& x,
                      const Vector& v, double delta) {
  const Vector up = checked_gradient(oracle, x + delta * v);
  const Vector down = checked_gradient(oracle, x - delta * v);
  return (up - down) / (2.0 * delta);
}

}  // namespace

double hessian_norm_estimate(const ObjectiveOracle& oracle, const Vector& x,
                             double tol, int max_iter) {
  if (!(tol > 0.0)) throw ConfigError("hessian_norm_estimate: tol must be positive");
  const Eigen::Index d = x.size();
  if (d == 0) return 0.0;
  const double delta = 1e-5 * std::max(1.0, x.stableNorm());

  Vector v = Vector::Ones(d) / std::sqrt(static_cast<double>(d));
  Vector hv = hessian_vector(oracle, x, v, delta);
  if (hv.stableNorm() == 0.0) {
    v = Vector::Unit(d, 0);
    hv = hessian_vector(oracle, x, v, delta);
    if (hv.stableNorm() == 0.0) return 0.0;
  }

  double estimate = hv.stableNorm();
  for (int it = 0; it < max_iter; ++it) {
    v = hv / estimate;
    hv = hessian_vector(oracle, x, v, delta);
    const double next = hv.stableNorm();
    if (next == 0.0) return 0.0;
    const bool done = std::abs(next - estimate) <= tol * next;
    estimate = next;
    if (done) break;
  }
  return estimate;
}

}  // namespace gensmooth
