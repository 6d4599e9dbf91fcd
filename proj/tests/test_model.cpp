#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rionset/error.hpp"
#include "rionset/model.hpp"

namespace rionset {
namespace {

const ModelParams kDefaults{200.0, 0.25, 0.1};

TEST(Drift, VanishesAtOrigin) {
  const State mu = drift(kDefaults, {0.0, 0.0, 0.0});
  EXPECT_EQ(mu, (State{0.0, 0.0, 0.0}));
}

TEST(Drift, DefaultInitialState) {
  const State mu = drift(kDefaults, {-0.01, 0.01, 1e-4});
  EXPECT_NEAR(mu.u, 0.0, 1e-15);
  EXPECT_NEAR(mu.v, 0.0, 1e-15);
  EXPECT_NEAR(mu.b, 0.008974, 1e-15);
}

TEST(Drift, UnitParameters) {
  const State mu = drift({1.0, 1.0, 1.0}, {0.0, 1.0, 0.0});
  EXPECT_EQ(mu, (State{1.0, -1.0, 1.0}));
}

TEST(Drift, RejectsBadInput) {
  EXPECT_THROW(drift(kDefaults, {NAN, 0.0, 0.0}), DomainError);
  EXPECT_THROW(drift(kDefaults, {0.0, INFINITY, 0.0}), DomainError);
  EXPECT_THROW(drift({0.0, 0.25, 0.1}, {}), DomainError);
  EXPECT_THROW(drift({200.0, -1.0, 0.1}, {}), DomainError);
  EXPECT_THROW(jacobian({200.0, 0.25, NAN}, {}), DomainError);
}

TEST(Jacobian, AtOrigin) {
  Matrix3 expected;
  expected << 0, 0, -201, 0, 0, 0, 0.1, 1, -0.25;
  EXPECT_EQ(jacobian(kDefaults, {0, 0, 0}), expected);
}

TEST(Jacobian, AtDefaultInitialState) {
  Matrix3 expected;
  expected << -0.01, 4.01, -201, -0.01, -0.01, 0, 0.1001, 1, -0.26;
  EXPECT_LT((jacobian(kDefaults, {-0.01, 0.01, 1e-4}) - expected).cwiseAbs().maxCoeff(), 1e-14);
}

Matrix3 central_difference(const ModelParams& params, const State& x, double h) {
  Matrix3 fd;
  for (int j = 0; j < 3; ++j) {
    State xp = x;
    State xm = x;
    double* cp[] = {&xp.u, &xp.v, &xp.b};
    double* cm[] = {&xm.u, &xm.v, &xm.b};
    *cp[j] += h;
    *cm[j] -= h;
    const State d = (1.0 / (2.0 * h)) * (drift(params, xp) - drift(params, xm));
    fd(0, j) = d.u;
    fd(1, j) = d.v;
    fd(2, j) = d.b;
  }
  return fd;
}

TEST(JacobianProperty, MatchesCentralDifferences) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> pos(0.01, 300.0);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const ModelParams params{pos(gen), pos(gen) / 300.0, pos(gen) / 300.0};
    const State x{box(gen), box(gen), box(gen)};
    const Matrix3 a = jacobian(params, x);
    const Matrix3 fd = central_difference(params, x, 1e-6);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_LE(std::abs(a(i, j) - fd(i, j)), 1e-9 + 1e-6 * std::abs(a(i, j)))
            << "trial " << trial << " entry " << i << j;
      }
    }
  }
}

// mu has no constant term, so mu(a x) = a L x + a^2 Q(x) with
// L x = (mu(x) - mu(-x)) / 2 and Q(x) = (mu(x) + mu(-x)) / 2.
TEST(DriftProperty, ExactlyQuadratic) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(-3.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const ModelParams params{200.0 * (1.0 + box(gen) * 0.5), 0.25, 0.1 + 0.05 * box(gen)};
    const State x{box(gen), box(gen), box(gen)};
    const double a = scale(gen);
    const State plus = drift(params, x);
    const State minus = drift(params, -1.0 * x);
    const State linear = 0.5 * (plus - minus);
    const State quad = 0.5 * (plus + minus);
    const State predicted = a * linear + (a * a) * quad;
    const State actual = drift(params, a * x);
    const double tol = 1e-10 * (1.0 + a * a) * params.p;
    EXPECT_NEAR(actual.u, predicted.u, tol);
    EXPECT_NEAR(actual.v, predicted.v, tol);
    EXPECT_NEAR(actual.b, predicted.b, tol);
  }
}

TEST(ModelParams, Validate) {
  EXPECT_NO_THROW(ModelParams::defaults().validate());
  EXPECT_THROW((ModelParams{200.0, 0.0, 0.1}.validate()), DomainError);
  EXPECT_THROW((ModelParams{INFINITY, 0.25, 0.1}.validate()), DomainError);
}

}  // namespace
}  // namespace rionset
