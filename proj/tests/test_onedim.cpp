#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rionset/error.hpp"
#include "rionset/onedim.hpp"
#include "rionset/sde.hpp"
#include "rionset/stats.hpp"

namespace rionset {
namespace {

DriftFn1D without_primitive(DriftFn1D d) {
  d.primitive = nullptr;
  return d;
}

TEST(KEps, ClosedForms) {
  const DriftFn1D zero = make_drift("zero");
  const DriftFn1D lin = make_drift("linear");
  EXPECT_EQ(k_eps(zero, 0.1, 0.07), 1.0);
  EXPECT_EQ(k_eps(lin, 0.3, 0.0), 1.0);
  EXPECT_NEAR(k_eps(lin, 0.02, 0.02), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(k_eps(without_primitive(lin), 0.02, 0.02), std::exp(-1.0), 1e-12);
  EXPECT_NEAR(log_k_eps(lin, 1e-3, 0.1), -1e4, 1e-9);
  EXPECT_THROW(k_eps(lin, 0.0, 0.1), DomainError);
  EXPECT_THROW(k_eps(lin, 0.1, -0.1), DomainError);
}

TEST(HitProb, BrownianIsLinear) {
  const DriftFn1D zero = make_drift("zero");
  for (double x : {0.01, 0.05, 0.07, 0.099}) {
    EXPECT_NEAR(hit_prob_1d(zero, 0.1, 0.1, x), x / 0.1, 1e-12);
  }
  EXPECT_NEAR(hit_prob_1d(zero, 0.1, 0.1, 0.05), 0.5, 1e-10);
}

TEST(HitProb, ExactBoundaries) {
  for (const auto& name : drift_names()) {
    const DriftFn1D d = make_drift(name);
    EXPECT_EQ(hit_prob_1d(d, 0.01, 0.1, 0.0), 0.0);
    EXPECT_EQ(hit_prob_1d(d, 0.01, 0.1, 0.1), 1.0);
    const HittingKernel k(d, 0.01, 0.1);
    EXPECT_EQ(k.hit_prob(0.0), 0.0);
    EXPECT_EQ(k.hit_prob(0.1), 1.0);
  }
  EXPECT_THROW(hit_prob_1d(make_drift("zero"), 0.1, 0.1, 0.2), DomainError);
  EXPECT_THROW(hit_prob_1d(make_drift("zero"), 0.1, 0.1, -0.01), DomainError);
}

TEST(HitProb, LinearDriftApproachesErf) {
  const DriftFn1D lin = make_drift("linear");
  for (double c : {0.5, 1.0, 2.0}) {
    const double p = hit_prob_1d(lin, 1e-3, 0.1, c * 1e-3);
    EXPECT_NEAR(p, std::erf(c), 1e-3) << c;
  }
}

TEST(HitProbProperty, MonotoneInStartingPoint) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> coef(0.0, 3.0);
  std::uniform_real_distribution<double> log_eps(std::log(2e-3), std::log(0.3));
  for (int trial = 0; trial < 40; ++trial) {
    const double a = coef(gen);
    const double b = coef(gen);
    DriftFn1D d;
    d.F = [a, b](double x) { return a * x + b * x * x; };
    d.label = "random";
    const double eps = std::exp(log_eps(gen));
    const HittingKernel k(d, eps, 0.1);
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double p = k.hit_prob(0.1 * i / 200.0);
      ASSERT_GE(p, prev) << "trial " << trial << " i " << i;
      ASSERT_LE(p, 1.0);
      prev = p;
    }
  }
}

TEST(HitProb, SimpsonModeAgrees) {
  DriftFn1D d = make_drift("logistic", 2.0);
  const double gk = hit_prob_1d(d, 0.05, 0.1, 0.03);
  d.quad.method = QuadMethod::Simpson;
  d.quad.simpson_intervals = 4000;
  EXPECT_NEAR(hit_prob_1d(d, 0.05, 0.1, 0.03), gk, 1e-9);
}

TEST(AsymptoticHitProb, Cases) {
  const DriftFn1D lin = make_drift("linear");
  EXPECT_EQ(asymptotic_hit_prob(lin, 1.0, 0.5), 1.0);
  EXPECT_EQ(asymptotic_hit_prob(lin, 1.0, 2.0), 0.0);
  EXPECT_EQ(asymptotic_hit_prob(lin, 1.0, 1.0), std::erf(1.0));
  EXPECT_NEAR(asymptotic_hit_prob(make_drift("linear", 4.0), 0.5, 1.0), std::erf(1.0), 1e-15);
  DriftFn1D bare = lin;
  bare.F_prime_at_0.reset();
  EXPECT_THROW(asymptotic_hit_prob(bare, 1.0, 1.0), ContractError);
  EXPECT_THROW(asymptotic_hit_prob(make_drift("zero"), 1.0, 1.0), ContractError);
  const DriftFn1D estimated = with_f_prime_at_0(bare);
  ASSERT_TRUE(estimated.F_prime_at_0);
  EXPECT_NEAR(*estimated.F_prime_at_0, 1.0, 1e-8);
}

TEST(CondExpHitTime, BrownianClosedForm) {
  const DriftFn1D zero = make_drift("zero");
  EXPECT_NEAR(cond_exp_hit_time(zero, 0.1, 0.1, 0.05), 0.25, 1e-6);
  for (double x : {0.001, 0.02, 0.09}) {
    EXPECT_NEAR(cond_exp_hit_time(zero, 0.1, 0.1, x), (0.01 - x * x) / 0.03, 1e-9) << x;
  }
  EXPECT_EQ(cond_exp_hit_time(zero, 0.1, 0.1, 0.1), 0.0);
  EXPECT_THROW(cond_exp_hit_time(zero, 0.1, 0.1, 0.0), DomainError);
  EXPECT_THROW(cond_exp_hit_time(zero, 0.1, 0.1, 0.11), DomainError);
}

TEST(CondExpHitTime, QuadraturePrimitiveMatchesAnalytic) {
  const DriftFn1D d = make_drift("logistic", 1.5);
  const double a = cond_exp_hit_time(d, 0.05, 0.1, 0.03);
  const double b = cond_exp_hit_time(without_primitive(d), 0.05, 0.1, 0.03);
  EXPECT_NEAR(a, b, 1e-8 * a);
}

TEST(Psi, BrownianClosedForm) {
  EXPECT_NEAR(psi_limit(make_drift("zero"), 0.1, 0.1), 1.0 / 3.0, 1e-6);
  EXPECT_NEAR(psi_limit(make_drift("zero"), 0.02, 0.1), 0.01 / (3 * 4e-4), 1e-8);
}

TEST(Psi, LimitOfConditionalTime) {
  const HittingKernel k(make_drift("linear"), 0.05, 0.1);
  double prev = INFINITY;
  for (double f : {1e-2, 1e-3, 1e-4}) {
    const double diff = std::abs(k.psi() - k.cond_exp_hit_time(f * 0.1));
    EXPECT_LT(diff, prev);
    prev = diff;
  }
}

TEST(Psi, SecondOrderCorrection) {
  const double eps = 0.05;
  const double target = 1.0 / (3.0 * eps * eps);
  for (const auto& name : {"linear", "logistic"}) {
    const HittingKernel k(make_drift(name), eps, 0.1);
    std::vector<double> xs = {1e-3, 5e-4, 2e-4};
    std::vector<double> ratio;
    for (double x : xs) ratio.push_back((k.psi() - k.cond_exp_hit_time(x)) / (x * x));
    EXPECT_LT(std::abs(ratio[2] - target), std::abs(ratio[0] - target)) << name;
    // leading error is linear in x
    const double richardson = (ratio[1] * xs[0] - ratio[0] * xs[1]) / (xs[0] - xs[1]);
    EXPECT_NEAR(richardson, target, 1e-3 * target) << name;
  }
}

TEST(CondExpHitTime, ShorterThanDeterministic) {
  const DriftFn1D lin = make_drift("linear");
  const HittingKernel k(lin, 0.05, 0.1);
  for (double x : {1e-4, 5e-5, 1e-5}) {
    EXPECT_LT(k.cond_exp_hit_time(x), deterministic_hit_time_1d(lin, 0.1, x)) << x;
  }
  EXPECT_NEAR(deterministic_hit_time_1d(lin, 0.1, 0.01), std::log(10.0), 1e-10);
  EXPECT_TRUE(std::isinf(deterministic_hit_time_1d(make_drift("zero"), 0.1, 0.01)));
}

TEST(ErfAsymptotics, Regimes) {
  const auto one = erf_asymptotics(1.0, 0.5, 1e-4);
  EXPECT_EQ(one.regime, ErfRegime::ToOne);
  EXPECT_NEAR(one.value, 1.0, 1e-6);
  for (double eps : {1e-1, 1e-4}) {
    const auto mid = erf_asymptotics(0.7, 1.0, eps);
    EXPECT_EQ(mid.regime, ErfRegime::ToErfC);
    EXPECT_EQ(mid.value, std::erf(0.7));
  }
  const auto lin = erf_asymptotics(1.0, 2.0, 1e-3);
  EXPECT_EQ(lin.regime, ErfRegime::Linear);
  EXPECT_NEAR(lin.value / (2.0 / std::sqrt(std::numbers::pi) * 1e-3), 1.0, 1e-4);
  EXPECT_EQ(to_string(ErfRegime::Linear), "linear");
}

TEST(Registry, UnknownDrift) {
  EXPECT_THROW(make_drift("cubic"), DomainError);
  EXPECT_EQ(drift_names().size(), 3u);
}

// Monte-Carlo cross-check through the SDE engine. A discretely monitored
// walk overshoots the levels; shifting both levels outward by
// 0.5826 eps sqrt(dt) (Broadie-Glasserman-Kou) removes the first-order bias,
// so the quadrature is evaluated on the widened interval.
TEST(OracleEquivalence, MonteCarloAgreesWithQuadrature) {
  const double eps = 0.05;
  const double ell = 0.1;
  const double dt = 1e-3;
  const int n = 20000;
  const double beta = 0.5826 * eps * std::sqrt(dt);
  for (const auto& name : drift_names()) {
    const DriftFn1D base = make_drift(name);
    DriftFn1D shifted;
    shifted.F = [f = base.F, beta](double y) { return f(y - beta); };
    shifted.label = name + "-shifted";
    const HittingKernel kernel(shifted, eps, ell + 2.0 * beta);
    const auto f = base.F;
    const ScalarDriftEmbedding mu{[&f](double z) { return f(z); }};
    for (double x : {0.02, 0.05, 0.08}) {
      std::size_t hits = 0;
      double sum = 0.0;
      double sum2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto out = run_to_hit(mu, State{0.0, x, 0.0}, ell, dt, 200.0,
                                    {eps, 31, std::uint64_t(i)}, StepperKind::Rk4PlusNoise);
        ASSERT_NE(out.kind, OutcomeKind::Censored);
        if (out.kind == OutcomeKind::Onset) {
          ++hits;
          sum += out.time;
          sum2 += out.time * out.time;
        }
      }
      const double p = kernel.hit_prob(x + beta);
      EXPECT_TRUE(wilson_interval(hits, n).contains(p))
          << name << " x=" << x << " mc=" << double(hits) / n << " quad=" << p;
      const double mean = sum / double(hits);
      const double var = (sum2 - double(hits) * mean * mean) / double(hits - 1);
      const double se = std::sqrt(var / double(hits));
      const double expected = kernel.cond_exp_hit_time(x + beta);
      EXPECT_LT(std::abs(mean - expected), 3.0 * se)
          << name << " x=" << x << " mc=" << mean << " quad=" << expected;
    }
  }
}

}  // namespace
}  // namespace rionset
