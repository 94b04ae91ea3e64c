#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gensmooth/libsvm.hpp"
#include "gensmooth/problems.hpp"
#include "gensmooth/scalar_core.hpp"
#include "test_support.hpp"

namespace gensmooth {
namespace {

using testing::random_in_ball;
using testing::vec;

SparseDataset one_row(double a, int label = 1) {
  SparseDataset d;
  d.rows.push_back({label, {{1, a}}});
  d.max_index = 1;
  return d;
}

TEST(PowerNorm, ValuesAndGradients) {
  const auto f = make_power_norm(2, 2);
  EXPECT_DOUBLE_EQ(f->value(vec({1.0, 0.0})), 1.0);
  EXPECT_TRUE(f->gradient(vec({1.0, 0.0})).isApprox(vec({4.0, 0.0})));
  const auto q = make_power_norm(3, 1);
  EXPECT_DOUBLE_EQ(q->value(vec({1.0, 1.0, 1.0})), 3.0);
  EXPECT_TRUE(q->gradient(vec({1.0, 1.0, 1.0})).isApprox(vec({2.0, 2.0, 2.0})));
}

TEST(PowerNorm, Constants) {
  const auto f = make_power_norm(1, 2);
  ASSERT_TRUE(f->smoothness());
  EXPECT_EQ(f->smoothness()->L0, 4.0);
  EXPECT_EQ(f->smoothness()->L1, 3.0);
  EXPECT_FALSE(f->smoothness()->L_classical);
  EXPECT_EQ(make_power_norm(2, 1)->smoothness()->L_classical.value(), 2.0);
  ASSERT_TRUE(f->optimum());
  EXPECT_EQ(f->optimum()->f, 0.0);
  EXPECT_THROW(make_power_norm(0, 1), ConfigError);
}

TEST(ExpInner, ValuesAndConstants) {
  const auto f = make_exp_inner(vec({1.0, 0.0}));
  EXPECT_DOUBLE_EQ(f->value(vec({0.0, 0.0})), 1.0);
  EXPECT_TRUE(f->gradient(vec({0.0, 0.0})).isApprox(vec({1.0, 0.0})));
  EXPECT_NEAR(make_exp_inner(vec({1.0}))->value(vec({std::log(2.0)})), 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(make_exp_inner(vec({3.0, 4.0}))->smoothness()->L1, 5.0);
  EXPECT_FALSE(f->optimum());
  EXPECT_THROW(make_exp_inner(vec({0.0, 0.0})), ConfigError);
}

TEST(Logistic, SingleRowValues) {
  const auto f = make_logistic(one_row(1.0));
  EXPECT_NEAR(f->value(vec({0.0})), std::log(2.0), 1e-15);
  EXPECT_NEAR(f->gradient(vec({0.0}))[0], -0.5, 1e-15);
  const auto g = make_logistic(one_row(2.0));
  ASSERT_TRUE(g->component_smoothness());
  EXPECT_DOUBLE_EQ(g->component_smoothness()->L1, 2.0);
  EXPECT_DOUBLE_EQ(g->component_smoothness()->L_classical.value(), 4.0);
}

TEST(Logistic, StableForHugeArguments) {
  SparseDataset data;
  data.rows.push_back({1, {{1, 1.0}, {2, -2.0}}});
  data.rows.push_back({-1, {{2, 0.5}}});
  data.max_index = 2;
  const auto f = make_logistic(data);
  const double amax = std::sqrt(5.0);
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    Vector x = random_in_ball(gen, 2, 1.0);
    x *= 1e6 / x.norm();
    EXPECT_TRUE(std::isfinite(f->value(x)));
    EXPECT_LE(f->gradient(x).norm(), amax * (1 + 1e-12));
  }
}

TEST(Logistic, EmptyDatasetRejected) { EXPECT_THROW(make_logistic(SparseDataset{}), ConfigError); }

TEST(Logistic, RidgeOptimumIsStationary) {
  const auto f = make_logistic(make_toy_logistic_dataset(10, 5, 3), 0.1);
  ASSERT_TRUE(f->optimum());
  EXPECT_LE(f->gradient(f->optimum()->x).norm(), 1e-10 * std::max(1.0, f->optimum()->f));
}

TEST(QuarticReg, ValuesAndConstants) {
  const auto f = make_quartic_regularized(1, 2.0);
  EXPECT_DOUBLE_EQ(f->value(vec({1.0})), 2.0);
  EXPECT_DOUBLE_EQ(f->gradient(vec({1.0}))[0], 6.0);
  const auto& p = *f->smoothness();
  EXPECT_EQ(p.L0, 14.0);
  EXPECT_EQ(p.L1, 3.0);
  EXPECT_EQ(p.mu, 2.0);
  EXPECT_TRUE(make_quartic_regularized(2, 1.0)->gradient(vec({0.0, 0.0})).isZero());
}

TEST(QuarticReg, EnvelopeScanOnLogGrid) {
  // 12 r^2 + mu <= (mu + 12) + 3 (mu r + 4 r^3) over r in [1e-6, 1e3]
  for (double mu : {0.5, 2.0, 10.0}) {
    for (double t = -6.0; t <= 3.0; t += 0.01) {
      const double r = std::pow(10.0, t);
      EXPECT_LE(mu + 12.0 * r * r, (mu + 12.0) + 3.0 * (mu * r + 4.0 * r * r * r) + 1e-9);
    }
  }
}

TEST(SharedMinQuartic, SingleRow) {
  Matrix A(1, 1);
  A << 1.0;
  const auto f = make_shared_min_quartic(A, vec({0.0}));
  EXPECT_DOUBLE_EQ(f->value(vec({1.0})), 1.0);
  EXPECT_DOUBLE_EQ(f->component_gradient(0, vec({1.0}))[0], 4.0);
}

TEST(SharedMinQuartic, SharedConstants) {
  Matrix A(2, 1);
  A << 1.0, 2.0;
  const auto f = make_shared_min_quartic(A, vec({0.0}));
  EXPECT_DOUBLE_EQ(f->component_smoothness()->L0, 48.0);
  EXPECT_DOUBLE_EQ(f->component_smoothness()->L1, 6.0);
  // Per-component scan of 12 t^2 |a|^2 <= L0 + 4 L1 |t|^3 |a| over |t| in [0, 1e3].
  for (double a : {1.0, 2.0})
    for (double t = 0.0; t <= 1e3; t = t < 1.0 ? t + 1e-3 : t * 1.01)
      EXPECT_LE(12.0 * t * t * a * a, 48.0 + 4.0 * 6.0 * t * t * t * a + 1e-9);
  Matrix Z(1, 1);
  Z << 0.0;
  EXPECT_THROW(make_shared_min_quartic(Z, vec({0.0})), ConfigError);
}

TEST(SharedMinQuartic, RandomInstanceInterpolates) {
  const auto inst = random_shared_min_instance(10, 5, 20240923);
  for (Eigen::Index i = 0; i < inst.A.rows(); ++i) EXPECT_NEAR(inst.A.row(i).norm(), 1.0, 1e-14);
  const auto f = make_shared_min_quartic(inst.A, inst.x_star);
  EXPECT_EQ(f->value(inst.x_star), 0.0);
  EXPECT_TRUE(f->gradient(inst.x_star).isZero());
  ASSERT_TRUE(f->component_optima());
  for (double v : *f->component_optima()) EXPECT_EQ(v, 0.0);
  const auto again = random_shared_min_instance(10, 5, 20240923);
  EXPECT_EQ(again.A, inst.A);
  EXPECT_EQ(again.x_star, inst.x_star);
}

TEST(ToyLogistic, LayoutAndFlippedLabel) {
  const SparseDataset d = make_toy_logistic_dataset(50, 1, 17);
  ASSERT_EQ(d.rows.size(), 50u);
  EXPECT_EQ(d.max_index, 50u);
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    EXPECT_EQ(d.rows[i].label, i == 17 ? -1 : 1);
    ASSERT_EQ(d.rows[i].features.size(), 50u);
    // a_i = (1..50) + standard normal noise: coordinates stay near their index.
    for (const auto& [idx, v] : d.rows[i].features) EXPECT_LT(std::abs(v - double(idx)), 7.0);
  }
  EXPECT_EQ(make_toy_logistic_dataset(50, 1, 17), d);
  EXPECT_THROW(make_toy_logistic_dataset(5, 1, 5), ConfigError);
}

/// Oracles exercised by the generic property tests below.
std::vector<OraclePtr> analytic_oracles() {
  Matrix A(3, 2);
  A << 1.0, 0.5, -0.3, 2.0, 0.7, -0.7;
  SparseDataset data;
  data.rows.push_back({1, {{1, 0.4}, {2, -1.0}}});
  data.rows.push_back({-1, {{1, -0.6}}});
  data.rows.push_back({1, {{2, 0.9}}});
  data.max_index = 2;
  return {make_power_norm(2, 1),           make_power_norm(2, 2),
          make_power_norm(3, 3),           make_exp_inner(vec({0.5, -1.0})),
          make_quartic_regularized(2, 1.5), make_shared_min_quartic(A, vec({0.2, -0.1})),
          make_logistic(data),             make_logistic(data, 0.3)};
}

TEST(Oracles, AnalyticGradientsMatchFiniteDifferences) {
  std::mt19937_64 gen(17);
  for (const auto& f : analytic_oracles()) {
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_in_ball(gen, f->dimension(), 2.0);
      const Vector g = f->gradient(x);
      const Vector fd = fd_gradient(*f, x, 1e-6 * std::max(1.0, x.norm()));
      EXPECT_LE((g - fd).norm(), 1e-5 * std::max(1.0, g.norm())) << f->name();
    }
  }
}

TEST(Oracles, FiniteSumsAverageTheirComponents) {
  std::mt19937_64 gen(19);
  for (const auto& f : analytic_oracles()) {
    const std::size_t n = f->component_count();
    if (n == 0) continue;
    for (int i = 0; i < 100; ++i) {
      const Vector x = random_in_ball(gen, f->dimension(), 2.0);
      double v = 0.0;
      Vector g = Vector::Zero(f->dimension());
      for (std::size_t j = 0; j < n; ++j) {
        v += f->component_value(j, x);
        g += f->component_gradient(j, x);
      }
      v /= double(n);
      g /= double(n);
      EXPECT_NEAR(f->value(x), v, 1e-12 * std::max(1.0, std::abs(v))) << f->name();
      EXPECT_LE((f->gradient(x) - g).norm(), 1e-12 * std::max(1.0, g.norm())) << f->name();
    }
  }
}

TEST(Oracles, OptimaAreStationary) {
  for (const auto& f : analytic_oracles()) {
    if (!f->optimum()) continue;
    const auto& opt = *f->optimum();
    EXPECT_LE(f->gradient(opt.x).norm(), 1e-10 * std::max(1.0, opt.f)) << f->name();
    EXPECT_NEAR(f->value(opt.x), opt.f, 1e-14 * std::max(1.0, std::abs(opt.f)));
  }
}

}  // namespace
}  // namespace gensmooth
