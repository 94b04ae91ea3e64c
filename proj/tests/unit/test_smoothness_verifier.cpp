#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gensmooth/problems.hpp"
#include "gensmooth/scalar_core.hpp"
#include "gensmooth/smoothness_verifier.hpp"
#include "test_support.hpp"

namespace gensmooth {
namespace {

using testing::random_in_ball;
using testing::vec;

constexpr double kAtol = 1e-9;
const double kE = std::exp(1.0);

SmoothnessParams params(double L0, double L1) {
  SmoothnessParams p;
  p.L0 = L0;
  p.L1 = L1;
  return p;
}

TEST(Margin, SlackIsRhsMinusLhs) {
  const auto m = make_margin(1.5, 1.0, 0.25);
  EXPECT_EQ(m.slack, -0.5);
  EXPECT_FALSE(m.pass);
  EXPECT_TRUE(make_margin(1.0, 1.0 - 1e-10, kAtol).pass);
}

TEST(Asymmetric, WorkedExamples) {
  const auto sq = make_power_norm(1, 1);
  auto m = check_asymmetric(*sq, vec({1.0}), vec({0.0}), params(2, 0), kAtol);
  EXPECT_DOUBLE_EQ(m.lhs, 2.0);
  EXPECT_DOUBLE_EQ(m.rhs, 2.0);
  EXPECT_TRUE(m.pass);

  const auto ex = make_exp_inner(vec({1.0}));
  m = check_asymmetric(*ex, vec({0.0}), vec({1.0}), params(1e-12, 1), kAtol);
  EXPECT_NEAR(m.lhs, kE - 1.0, 1e-12);
  EXPECT_NEAR(m.rhs, 1e-12 + kE, 1e-12);
  EXPECT_TRUE(m.pass);

  m = check_asymmetric(*ex, vec({0.3}), vec({0.3}), params(1e-12, 1), kAtol);
  EXPECT_EQ(m.lhs, 0.0);
  EXPECT_EQ(m.rhs, 0.0);
}

TEST(Symmetric, SupAlongSegment) {
  const auto q = make_power_norm(1, 2);
  const auto m = check_symmetric(*q, vec({0.0}), vec({1.0}), params(4, 3), 101, kAtol);
  EXPECT_DOUBLE_EQ(m.lhs, 4.0);
  EXPECT_DOUBLE_EQ(m.rhs, 4.0 + 3.0 * 4.0);
  const auto same = check_symmetric(*q, vec({0.7}), vec({0.7}), params(4, 3), 101, kAtol);
  EXPECT_EQ(same.slack, 0.0);
  EXPECT_THROW(check_symmetric(*q, vec({0.0}), vec({1.0}), params(4, 3), 1, kAtol), ConfigError);
}

TEST(Symmetric, QuarticNormRandomPairs) {
  const auto f = make_power_norm(3, 2);
  std::mt19937_64 gen(5);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = random_in_ball(gen, 3, 2.0);
    const Vector y = random_in_ball(gen, 3, 2.0);
    EXPECT_TRUE(check_symmetric(*f, x, y, params(4, 3), 101, kAtol).pass);
  }
}

TEST(ExpCorollary, WorkedExamples) {
  const auto q = make_power_norm(1, 2);
  auto m = check_exp_corollary(*q, vec({1.0}), vec({0.0}), params(4, 3), kAtol);
  EXPECT_DOUBLE_EQ(m.lhs, 4.0);
  EXPECT_NEAR(m.rhs, 4.0 * std::exp(3.0), 1e-12);
  EXPECT_TRUE(m.pass);
  const auto ex = make_exp_inner(vec({1.0}));
  m = check_exp_corollary(*ex, vec({2.0}), vec({0.0}), params(1e-12, 1), kAtol);
  EXPECT_NEAR(m.lhs, kE * kE - 1.0, 1e-12);
  EXPECT_NEAR(m.rhs, (1e-12 + 1.0) * kE * kE * 2.0, 1e-11);
  EXPECT_TRUE(m.pass);
  EXPECT_EQ(check_exp_corollary(*q, vec({0.5}), vec({0.5}), params(4, 3), kAtol).slack, 0.0);
}

TEST(QuadraticUpper, WorkedExamples) {
  const auto sq = make_power_norm(1, 1);
  auto m = check_quadratic_upper(*sq, vec({0.0}), vec({1.0}), params(2, 0), kAtol);
  EXPECT_DOUBLE_EQ(m.lhs, 1.0);
  EXPECT_DOUBLE_EQ(m.rhs, 1.0);
  const auto q = make_power_norm(1, 2);
  m = check_quadratic_upper(*q, vec({1.0}), vec({0.9}), params(4, 3), kAtol);
  EXPECT_GT(m.slack, 0.0);
  EXPECT_EQ(check_quadratic_upper(*q, vec({1.0}), vec({1.0}), params(4, 3), kAtol).slack, 0.0);
}

TEST(GradLowerBound, WorkedExamples) {
  const double v = nu();
  const auto q = make_power_norm(1, 2);
  auto m = check_grad_lower_bound(*q, vec({1.0}), params(4, 3), v, kAtol);
  EXPECT_NEAR(m.lhs, v / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(m.rhs, 1.0);
  const auto sq = make_power_norm(1, 1);
  m = check_grad_lower_bound(*sq, vec({1.0}), params(2, 0), v, kAtol);
  EXPECT_NEAR(m.lhs, v, 1e-15);
  m = check_grad_lower_bound(*q, vec({0.0}), params(4, 3), v, kAtol);
  EXPECT_EQ(m.lhs, 0.0);
  EXPECT_EQ(m.rhs, 0.0);
  EXPECT_THROW(check_grad_lower_bound(*make_exp_inner(vec({1.0})), vec({0.0}), params(1, 1), v,
                                      kAtol),
               ConfigError);
}

TEST(Cocoercivity, ProximityRule) {
  const double v = nu();
  const auto q = make_power_norm(1, 2);
  auto r = check_cocoercivity(*q, vec({0.1}), vec({0.0}), params(4, 3), v, kAtol);
  EXPECT_TRUE(r.proximity_ok);
  EXPECT_TRUE(r.bregman.pass);
  EXPECT_TRUE(r.coco.pass);
  r = check_cocoercivity(*q, vec({1.0}), vec({0.0}), params(4, 3), v, kAtol);
  EXPECT_FALSE(r.proximity_ok);
  r = check_cocoercivity(*q, vec({0.4}), vec({0.4}), params(4, 3), v, kAtol);
  EXPECT_TRUE(r.proximity_ok);
  EXPECT_EQ(r.bregman.slack, 0.0);
  EXPECT_EQ(r.coco.slack, 0.0);
}

TEST(Cocoercivity, HoldsWheneverProximityHolds) {
  const double v = nu();
  std::mt19937_64 gen(23);
  const auto f = make_power_norm(2, 2);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const Vector x = random_in_ball(gen, 2, 2.0);
    const Vector y = x + random_in_ball(gen, 2, 0.3);
    const auto r = check_cocoercivity(*f, x, y, params(4, 3), v, kAtol);
    if (!r.proximity_ok) continue;
    ++checked;
    EXPECT_TRUE(r.bregman.pass);
    EXPECT_TRUE(r.coco.pass);
  }
  EXPECT_GT(checked, 100);
}

TEST(HessGrad, QuarticSamples) {
  const auto q = make_power_norm(1, 2);
  const auto s = sample_hess_vs_grad(*q, {vec({0.5}), vec({1.0}), vec({2.0})});
  ASSERT_EQ(s.samples.size(), 3u);
  const double g[] = {0.5, 4.0, 32.0};
  const double h[] = {3.0, 12.0, 48.0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(s.samples[i].grad_norm, g[i], 1e-12);
    EXPECT_NEAR(s.samples[i].hess_norm, h[i], 1e-3 * h[i]);
  }
}

TEST(HessGrad, LogisticSingleRowAtOrigin) {
  SparseDataset d;
  d.rows.push_back({1, {{1, 2.0}}});
  d.max_index = 1;
  const auto s = sample_hess_vs_grad(*make_logistic(d), {vec({0.0})});
  ASSERT_EQ(s.samples.size(), 1u);
  EXPECT_NEAR(s.samples[0].grad_norm, 1.0, 1e-12);
  EXPECT_NEAR(s.samples[0].hess_norm, 1.0, 1e-6);
}

TEST(HessGrad, FailingPointsAreSkipped) {
  const auto ex = make_exp_inner(vec({1.0}));
  const auto s = sample_hess_vs_grad(*ex, {vec({0.0}), vec({1000.0}), vec({1.0})});
  EXPECT_EQ(s.samples.size(), 2u);
  EXPECT_EQ(s.warnings.size(), 1u);
}

TEST(FitEnvelope, WorkedExamples) {
  auto p = fit_L0_L1({{0.0, 2.0, {}}, {10.0, 2.0, {}}});
  EXPECT_NEAR(p.L0, 2.0, 1e-12);
  EXPECT_NEAR(p.L1, 0.0, 1e-12);
  p = fit_L0_L1({{0.0, 4.0, {}}, {1.0, 7.0, {}}, {2.0, 10.0, {}}});
  EXPECT_NEAR(p.L0, 4.0, 1e-12);
  EXPECT_NEAR(p.L1, 3.0, 1e-12);
  EXPECT_EQ(p.mu, 0.0);
  EXPECT_THROW(fit_L0_L1({{1.0, 1.0, {}}}), ConfigError);
}

TEST(FitEnvelope, QuarticNormIsFeasibleAndWithinAnalyticConstants) {
  const auto q = make_power_norm(1, 2);
  std::vector<Vector> pts;
  for (int i = 0; i <= 40; ++i) pts.push_back(vec({1.0 + 0.1 * i}));
  const auto s = sample_hess_vs_grad(*q, pts);
  const auto p = fit_L0_L1(s.samples);
  double mean_grad = 0.0;
  for (const auto& smp : s.samples) mean_grad += smp.grad_norm / static_cast<double>(s.samples.size());
  EXPECT_LE(p.L0 + p.L1 * mean_grad, 4.0 + 3.0 * mean_grad);
  for (const auto& smp : s.samples) EXPECT_LE(smp.hess_norm, p.L0 + p.L1 * smp.grad_norm + 1e-9);
}

TEST(FitEnvelope, AlwaysFeasibleOnRandomClouds) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<HessGradSample> s(2 + t % 30);
    for (auto& smp : s) {
      smp.grad_norm = u(gen);
      smp.hess_norm = u(gen);
    }
    const auto p = fit_L0_L1(s);
    EXPECT_GT(p.L0, 0.0);
    EXPECT_GE(p.L1, 0.0);
    for (const auto& smp : s) EXPECT_LE(smp.hess_norm, p.L0 + p.L1 * smp.grad_norm + 1e-9);
  }
}

TEST(HessGrad, CsvHeader) {
  std::ostringstream out;
  write_hess_grad_csv(out, {{1.0, 2.5, {}}});
  EXPECT_EQ(out.str(), "grad_norm,hess_norm\n1,2.5\n");
}

}  // namespace
}  // namespace gensmooth
