#include "gensmooth/smoothness_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "gensmooth/format.hpp"
#include "gensmooth/scalar_core.hpp"

namespace gensmooth {

InequalityMargin make_margin(double lhs, double rhs, double atol) {
  if (!std::isfinite(lhs) || std::isnan(rhs))
    throw EvaluationError("inequality check produced a non-finite side");
  InequalityMargin m;
  m.lhs = lhs;
  m.rhs = rhs;
  m.slack = rhs - lhs;
  m.pass = m.slack >= -atol;
  return m;
}

InequalityMargin check_asymmetric(const ObjectiveOracle& oracle, const Vector& x,
                                  const Vector& y, const SmoothnessParams& p, double atol) {
  const Vector gx = checked_gradient(oracle, x);
  const Vector gy = checked_gradient(oracle, y);
  return make_margin((gx - gy).stableNorm(), (p.L0 + p.L1 * gy.stableNorm()) * (x - y).stableNorm(), atol);
}

InequalityMargin check_symmetric(const ObjectiveOracle& oracle, const Vector& x,
                                 const Vector& y, const SmoothnessParams& p,
                                 int grid_points, double atol) {
  if (grid_points < 2) throw ConfigError("check_symmetric: grid_points must be at least 2");
  const Vector gx = checked_gradient(oracle, x);
  const Vector gy = checked_gradient(oracle, y);
  double sup = std::max(gx.stableNorm(), gy.stableNorm());
  const Vector dir = y - x;
  for (int j = 1; j + 1 < grid_points; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(grid_points - 1);
    sup = std::max(sup, checked_gradient(oracle, x + t * dir).stableNorm());
  }
  return make_margin((gx - gy).stableNorm(), (p.L0 + p.L1 * sup) * dir.stableNorm(), atol);
}

InequalityMargin check_exp_corollary(const ObjectiveOracle& oracle, const Vector& x,
                                     const Vector& y, const SmoothnessParams& p, double atol) {
  const Vector gx = checked_gradient(oracle, x);
  const Vector gy = checked_gradient(oracle, y);
  const double r = (x - y).stableNorm();
  return make_margin((gx - gy).stableNorm(), (p.L0 + p.L1 * gy.stableNorm()) * std::exp(p.L1 * r) * r, atol);
}

InequalityMargin check_quadratic_upper(const ObjectiveOracle& oracle, const Vector& x,
                                       const Vector& y, const SmoothnessParams& p, double atol) {
  const double fx = checked_value(oracle, x);
  const double fy = checked_value(oracle, y);
  const Vector gx = checked_gradient(oracle, x);
  const Vector d = y - x;
  const double r = d.stableNorm();
  const double rhs =
      fx + gx.dot(d) + 0.5 * (p.L0 + p.L1 * gx.stableNorm()) * std::exp(p.L1 * r) * r * r;
  return make_margin(fy, rhs, atol);
}

InequalityMargin check_grad_lower_bound(const ObjectiveOracle& oracle, const Vector& x,
                                        const SmoothnessParams& p, double nu, double atol) {
  if (!oracle.optimum()) throw ConfigError(oracle.name() + ": gradient lower bound needs f*");
  const Vector g = checked_gradient(oracle, x);
  const double gn = g.stableNorm();
  const double lhs = nu * gn * gn / (2.0 * (p.L0 + p.L1 * gn));
  return make_margin(lhs, checked_value(oracle, x) - oracle.optimum()->f, atol);
}

CocoercivityResult check_cocoercivity(const ObjectiveOracle& oracle, const Vector& x,
                                      const Vector& y, const SmoothnessParams& p, double nu,
                                      double atol) {
  const double fx = checked_value(oracle, x);
  const double fy = checked_value(oracle, y);
  const Vector gx = checked_gradient(oracle, x);
  const Vector gy = checked_gradient(oracle, y);
  const Vector dg = gx - gy;
  const double dg2 = dg.squaredNorm();
  const double r = (x - y).stableNorm();

  CocoercivityResult res;
  res.proximity_ok = p.L1 * r * std::exp(p.L1 * r) <= 1.0;
  const double term_y = nu * dg2 / (2.0 * (p.L0 + p.L1 * gy.stableNorm()));
  const double term_x = nu * dg2 / (2.0 * (p.L0 + p.L1 * gx.stableNorm()));
  res.bregman = make_margin(term_y, fy - fx - gx.dot(y - x), atol);
  res.coco = make_margin(term_y + term_x, dg.dot(x - y), atol);
  return res;
}

HessGradSampling sample_hess_vs_grad(const ObjectiveOracle& oracle,
                                     const std::vector<Vector>& points) {
  HessGradSampling out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      HessGradSample s;
      s.grad_norm = checked_gradient(oracle, points[i]).stableNorm();
      s.hess_norm = hessian_norm_estimate(oracle, points[i]);
      if (!std::isfinite(s.hess_norm)) throw EvaluationError("non-finite Hessian estimate");
      s.point = points[i];
      out.samples.push_back(std::move(s));
    } catch (const EvaluationError& e) {
      out.warnings.push_back("point " + std::to_string(i) + " skipped: " + e.what());
    }
  }
  return out;
}

namespace {

struct Line {
  double L0;
  double L1;
};

double cross(const HessGradSample& o, const HessGradSample& a, const HessGradSample& b) {
  return (a.grad_norm - o.grad_norm) * (b.hess_norm - o.hess_norm) -
         (a.hess_norm - o.hess_norm) * (b.grad_norm - o.grad_norm);
}

}  // namespace

SmoothnessParams fit_L0_L1(const std::vector<HessGradSample>& samples) {
  if (samples.size() < 2) throw ConfigError("fit_L0_L1: need at least two samples");
  constexpr double kL0Floor = 1e-12;

  std::vector<HessGradSample> pts = samples;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.grad_norm < b.grad_norm ||
           (a.grad_norm == b.grad_norm && a.hess_norm > b.hess_norm);
  });
  // Keep the highest sample per abscissa, then build the upper hull left to right.
  std::vector<HessGradSample> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back().grad_norm == p.grad_norm) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }

  const double mean_grad =
      std::accumulate(samples.begin(), samples.end(), 0.0,
                      [](double acc, const auto& s) { return acc + s.grad_norm; }) /
      static_cast<double>(samples.size());

  std::vector<Line> candidates;
  double max_hess = 0.0;
  for (const auto& s : samples) max_hess = std::max(max_hess, s.hess_norm);
  candidates.push_back({max_hess, 0.0});
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[i + 1];
    const double slope = (b.hess_norm - a.hess_norm) / (b.grad_norm - a.grad_norm);
    if (slope < 0.0) continue;
    candidates.push_back({a.hess_norm - slope * a.grad_norm, slope});
  }
  double floor_slope = 0.0;
  for (const auto& s : samples)
    if (s.grad_norm > 0.0) floor_slope = std::max(floor_slope, (s.hess_norm - kL0Floor) / s.grad_norm);
  candidates.push_back({kL0Floor, floor_slope});

  Line best{std::numeric_limits<double>::infinity(), 0.0};
  double best_obj = std::numeric_limits<double>::infinity();
  for (auto c : candidates) {
    if (c.L0 < kL0Floor) continue;
    double violation = 0.0;
    for (const auto& s : samples)
      violation = std::max(violation, s.hess_norm - (c.L0 + c.L1 * s.grad_norm));
    c.L0 += violation;
    const double obj = c.L0 + c.L1 * mean_grad;
    if (obj < best_obj || (obj == best_obj && c.L1 < best.L1)) {
      best = c;
      best_obj = obj;
    }
  }

  SmoothnessParams p;
  p.L0 = best.L0;
  p.L1 = best.L1;
  p.mu = 0.0;
  return p;
}

void write_hess_grad_csv(std::ostream& out, const std::vector<HessGradSample>& samples) {
  out << "grad_norm,hess_norm\n";
  for (const auto& s : samples)
    out << format_double(s.grad_norm) << ',' << format_double(s.hess_norm) << '\n';
}

}  // namespace gensmooth
