#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rionset/error.hpp"
#include "rionset/quadrature.hpp"

namespace rionset {
namespace {

TEST(Integrate, ClosedForms) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0).value, 9.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value,
              std::numbers::e - 1.0, 1e-13);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0).value,
              std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_NEAR(integrate([](double x) { return std::sin(50.0 * x); }, 0.0, std::numbers::pi).value,
              0.0, 1e-10);
}

TEST(Integrate, ReversedAndEmpty) {
  const auto f = [](double x) { return x; };
  EXPECT_NEAR(integrate(f, 1.0, 0.0).value, -0.5, 1e-15);
  EXPECT_EQ(integrate(f, 2.0, 2.0).value, 0.0);
}

TEST(Integrate, ErrorEstimateIsHonest) {
  const auto r = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 2.0 / 3.0, std::max(r.error, 1e-12));
  EXPECT_GT(r.evaluations, 21u);
}

TEST(Integrate, BudgetExhaustionThrows) {
  QuadConfig cfg;
  cfg.max_subdivisions = 3;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-14;
  EXPECT_THROW(integrate([](double x) { return std::sin(1000.0 * x * x); }, 0.0, 3.0, cfg),
               QuadratureError);
}

TEST(Integrate, RejectsBadConfig) {
  QuadConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, cfg), DomainError);
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, INFINITY), DomainError);
}

TEST(Integrate, SimpsonCrossCheck) {
  QuadConfig simpson;
  simpson.method = QuadMethod::Simpson;
  simpson.simpson_intervals = 4000;
  const auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x); };
  const double gk = integrate(f, 0.0, 2.0).value;
  const auto s = integrate(f, 0.0, 2.0, simpson);
  EXPECT_NEAR(s.value, gk, 1e-10);
  EXPECT_LT(s.error, 1e-9);
}

TEST(CumulativeIntegral, MatchesAntiderivative) {
  const auto f = [](double x) { return std::cos(x) + 3.0 * x * x; };
  const CumulativeIntegral cum(f, 0.0, 4.0);
  EXPECT_EQ(cum(0.0), 0.0);
  EXPECT_EQ(cum(4.0), cum.total());
  for (int i = 0; i <= 400; ++i) {
    const double x = 4.0 * i / 400.0;
    EXPECT_NEAR(cum(x), std::sin(x) + x * x * x, 1e-10) << x;
  }
  EXPECT_THROW(cum(4.0001), std::out_of_range);
  EXPECT_THROW(cum(-1e-9), std::out_of_range);
}

TEST(CumulativeIntegral, SimpsonMode) {
  QuadConfig cfg;
  cfg.method = QuadMethod::Simpson;
  cfg.simpson_intervals = 2000;
  const CumulativeIntegral cum([](double x) { return std::exp(x); }, 0.0, 1.0, cfg);
  for (double x : {0.0, 0.123, 0.5, 0.999, 1.0}) EXPECT_NEAR(cum(x), std::exp(x) - 1.0, 1e-11);
}

TEST(CumulativeIntegral, MonotoneForPositiveIntegrand) {
  const CumulativeIntegral cum([](double x) { return std::exp(-x * x / 1e-4); }, 0.0, 0.1);
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double v = cum(0.1 * i / 1000.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(cum.total(), 0.5 * std::sqrt(std::numbers::pi) * 1e-2, 1e-12);
}

}  // namespace
}  // namespace rionset
