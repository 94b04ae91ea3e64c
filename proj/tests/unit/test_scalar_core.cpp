#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gensmooth/format.hpp"
#include "gensmooth/oracle.hpp"
#include "gensmooth/problems.hpp"
#include "gensmooth/rng.hpp"
#include "gensmooth/scalar_core.hpp"
#include "test_support.hpp"

namespace gensmooth {
namespace {

using testing::vec;

OraclePtr square_1d() {
  auto f = std::make_shared<FunctionOracle>(
      "x^2", 1, [](const Vector& x) { return x.squaredNorm(); },
      [](const Vector& x) -> Vector { return 2.0 * x; });
  return f;
}

TEST(Nu, SatisfiesDefiningEquation) {
  const double v = solve_nu();
  EXPECT_LE(std::abs(v * std::exp(v) - 1.0), 1e-14);
  EXPECT_GT(v, 0.56);
  EXPECT_LT(v, 0.57);
}

TEST(Nu, MatchesReferenceValue) {
  EXPECT_NEAR(solve_nu(), 0.5671432904097838, 1e-13);
  EXPECT_EQ(nu(), solve_nu());
  EXPECT_EQ(solve_nu(), solve_nu());
}

TEST(FdGradient, QuadraticIsExact) {
  const Vector g = fd_gradient(*square_1d(), vec({3.0}), 1e-5);
  EXPECT_NEAR(g[0], 6.0, 1e-8);
}

TEST(FdGradient, PowerNormAtUnitVector) {
  const Vector g = fd_gradient(*make_power_norm(2, 2), vec({1.0, 0.0}), 1e-5);
  EXPECT_NEAR(g[0], 4.0, 1e-6);
  EXPECT_NEAR(g[1], 0.0, 1e-6);
}

TEST(FdGradient, ExpInnerAtOrigin) {
  const Vector g = fd_gradient(*make_exp_inner(vec({1.0, 1.0})), vec({0.0, 0.0}), 1e-6);
  EXPECT_NEAR(g[0], 1.0, 1e-6);
  EXPECT_NEAR(g[1], 1.0, 1e-6);
}

TEST(FdGradient, NonFiniteValueThrows) {
  const auto bad = std::make_shared<FunctionOracle>(
      "bad", 1, [](const Vector&) { return std::nan(""); },
      [](const Vector& x) -> Vector { return x; });
  EXPECT_THROW(fd_gradient(*bad, vec({1.0}), 1e-6), EvaluationError);
}

TEST(HessianNorm, QuadraticInThreeDimensions) {
  const auto f = make_power_norm(3, 1);
  EXPECT_NEAR(hessian_norm_estimate(*f, vec({0.3, -1.0, 2.0})), 2.0, 1e-4);
}

TEST(HessianNorm, QuarticAtTwo) {
  EXPECT_NEAR(hessian_norm_estimate(*make_power_norm(1, 2), vec({2.0})), 48.0, 1e-3);
}

TEST(HessianNorm, RankOneExponential) {
  EXPECT_NEAR(hessian_norm_estimate(*make_exp_inner(vec({3.0, 4.0})), vec({0.0, 0.0})), 25.0,
              1e-3);
}

TEST(HessianNorm, ZeroHessianGivesZero) {
  const auto lin = std::make_shared<FunctionOracle>(
      "linear", 2, [](const Vector& x) { return x.sum(); },
      [](const Vector& x) -> Vector { return Vector::Ones(x.size()); });
  EXPECT_EQ(hessian_norm_estimate(*lin, vec({1.0, 2.0})), 0.0);
}

TEST(HessianNorm, AnnihilatedStartDirectionIsPerturbed) {
  // Hessian diag(1, -1) kills (1,1)/sqrt(2); the restart on e1 recovers norm 1.
  const auto saddle = std::make_shared<FunctionOracle>(
      "saddle", 2, [](const Vector& x) { return 0.5 * (x[0] * x[0] - x[1] * x[1]); },
      [](const Vector& x) -> Vector { return vec({x[0], -x[1]}); });
  EXPECT_NEAR(hessian_norm_estimate(*saddle, vec({0.0, 0.0})), 1.0, 1e-6);
}

TEST(HessianNorm, PowerNormFamilyMatchesAnalyticNorm) {
  std::mt19937_64 gen(7);
  for (int n = 1; n <= 3; ++n) {
    const auto f = make_power_norm(3, n);
    for (int i = 0; i < 20; ++i) {
      const Vector x = testing::random_in_ball(gen, 3, 2.0);
      if (x.norm() < 0.1) continue;
      const double exact = 2.0 * n * (2.0 * n - 1.0) * std::pow(x.norm(), 2.0 * n - 2.0);
      EXPECT_NEAR(hessian_norm_estimate(*f, x), exact, 1e-3 * exact) << "n=" << n;
    }
  }
}

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> exps(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::pow(10.0, exps(gen)) * (i % 2 ? -1.0 : 1.0);
    double back = 0.0;
    ASSERT_TRUE(parse_double(format_double(v), back));
    EXPECT_EQ(back, v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(Format, ParseRejectsGarbage) {
  double v = 0.0;
  EXPECT_FALSE(parse_double("", v));
  EXPECT_FALSE(parse_double("1.5x", v));
  EXPECT_FALSE(parse_double("+-1", v));
  EXPECT_TRUE(parse_double("+2.5", v));
  EXPECT_EQ(v, 2.5);
}

TEST(CounterRng, MatchesSplitMix64ReferenceStream) {
  const CounterRng rng(1234567);
  const std::uint64_t expected[] = {6457827717110365317ULL, 3203168211198807973ULL,
                                    9817491932198370423ULL, 4593380528125082431ULL,
                                    16408922859458223821ULL};
  for (std::uint64_t k = 0; k < 5; ++k) EXPECT_EQ(rng.draw(k), expected[k]);
  EXPECT_EQ(CounterRng(0).draw(0), 0xe220a8397b1dcdafULL);
}

TEST(CounterRng, FrozenIndicesAndNormals) {
  const CounterRng rng(20240923);
  const std::uint64_t idx[] = {2, 4, 7, 8, 0, 8, 6, 9, 5, 2};
  for (std::uint64_t k = 0; k < 10; ++k) EXPECT_EQ(rng.index(k, 10), idx[k]);
  EXPECT_DOUBLE_EQ(rng.uniform(0), 0.29857831408528096);
  EXPECT_NEAR(rng.normal(0), -1.5056568803162858, 1e-15);
}

TEST(CounterRng, OrderIndependentAndUnbiased) {
  const CounterRng rng(99);
  std::vector<int> counts(5, 0);
  for (std::uint64_t k = 0; k < 50000; ++k) ++counts[rng.index(k, 5)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
  EXPECT_EQ(rng.draw(1234), CounterRng(99).draw(1234));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = rng.uniform(k);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace gensmooth
