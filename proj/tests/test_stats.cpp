#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rionset/stats.hpp"

namespace rionset {
namespace {

TEST(Wilson, KnownValues) {
  const Interval half = wilson_interval(5, 10);
  EXPECT_NEAR(half.low, 0.236593, 1e-6);
  EXPECT_NEAR(half.high, 0.763407, 1e-6);
  const Interval none = wilson_interval(0, 10);
  EXPECT_EQ(none.low, 0.0);
  EXPECT_NEAR(none.high, 0.277533, 1e-6);
  const Interval all = wilson_interval(1000, 1000);
  EXPECT_EQ(all.high, 1.0);
  EXPECT_LT(all.low, 1.0);
  EXPECT_THROW(wilson_interval(1, 0), std::invalid_argument);
}

TEST(Wilson, OrderedAroundEstimate) {
  for (std::size_t n : {1u, 7u, 100u, 1000u}) {
    for (std::size_t k = 0; k <= n; k += std::max<std::size_t>(1, n / 10)) {
      const Interval ci = wilson_interval(k, n);
      const double p = double(k) / double(n);
      EXPECT_LE(0.0, ci.low);
      EXPECT_LE(ci.low, p);
      EXPECT_LE(p, ci.high);
      EXPECT_LE(ci.high, 1.0);
    }
  }
}

TEST(Wilson, CoverageOnSyntheticBernoulli) {
  std::mt19937_64 gen(2024);
  std::binomial_distribution<std::size_t> draw(1000, 0.5);
  int covered = 0;
  for (int rep = 0; rep < 1000; ++rep) covered += wilson_interval(draw(gen), 1000).contains(0.5);
  EXPECT_GE(covered, 930);
  EXPECT_LE(covered, 970);
}

TEST(Moments, ConstantSampleHasZeroVariance) {
  const std::vector<double> x(50, 10.527909353041290);
  const SampleMoments m = sample_moments(x);
  EXPECT_EQ(*m.mean, x[0]);
  EXPECT_EQ(*m.variance, 0.0);
}

TEST(Moments, KnownSampleAndOrderIndependence) {
  std::vector<double> x = {2, 4, 4, 4, 5, 5, 7, 9};
  const SampleMoments a = sample_moments(x);
  EXPECT_DOUBLE_EQ(*a.mean, 5.0);
  EXPECT_DOUBLE_EQ(*a.variance, 32.0 / 7.0);
  std::reverse(x.begin(), x.end());
  const SampleMoments b = sample_moments(x);
  EXPECT_EQ(*a.mean, *b.mean);
  EXPECT_EQ(*a.variance, *b.variance);
}

TEST(Moments, UndefinedForSmallSamples) {
  EXPECT_FALSE(sample_moments(std::vector<double>{}).mean);
  const SampleMoments one = sample_moments(std::vector<double>{3.0});
  EXPECT_TRUE(one.mean);
  EXPECT_FALSE(one.variance);
}

TEST(Skewness, SymmetricAndSkewed) {
  EXPECT_NEAR(sample_skewness(std::vector<double>{1, 2, 3, 4, 5}), 0.0, 1e-15);
  // adjusted Fisher-Pearson for {1,2,3,10}
  const std::vector<double> x = {1, 2, 3, 10};
  const double m = 4.0;
  double m2 = 0, m3 = 0;
  for (double v : x) {
    m2 += (v - m) * (v - m) / 4.0;
    m3 += (v - m) * (v - m) * (v - m) / 4.0;
  }
  const double g1 = m3 / std::pow(m2, 1.5);
  EXPECT_NEAR(sample_skewness(x), g1 * std::sqrt(12.0) / 2.0, 1e-12);
}

TEST(Quantile, Type7) {
  const std::vector<double> x = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.25), 1.75);
}

TEST(Histogram, CountsSumAndEdges) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal(10.0, 2.0);
  std::vector<double> x(997);
  for (double& v : x) v = normal(gen);
  const Histogram h = make_histogram(x);
  EXPECT_EQ(h.total(), x.size());
  EXPECT_EQ(h.edges.size(), h.counts.size() + 1);
  EXPECT_EQ(h.edges.front(), *std::min_element(x.begin(), x.end()));
  EXPECT_EQ(h.edges.back(), *std::max_element(x.begin(), x.end()));
  EXPECT_TRUE(std::is_sorted(h.edges.begin(), h.edges.end()));
  const Histogram fixed = make_histogram(x, 7);
  EXPECT_EQ(fixed.counts.size(), 7u);
  EXPECT_EQ(fixed.total(), x.size());
}

TEST(Histogram, DegenerateSamples) {
  EXPECT_EQ(make_histogram(std::vector<double>{}).total(), 0u);
  const Histogram one = make_histogram(std::vector<double>(5, 2.0));
  EXPECT_EQ(one.counts.size(), 1u);
  EXPECT_EQ(one.total(), 5u);
}

// Kolmogorov survival function Q(lambda) at table points.
TEST(Ks, AsymptoticPValues) {
  const std::size_t n = 100000000;
  const double root = std::sqrt(double(n));
  EXPECT_NEAR(ks_pvalue(0.5 / root, n), 0.963945, 2e-4);
  EXPECT_NEAR(ks_pvalue(1.0 / root, n), 0.270000, 2e-4);
  EXPECT_NEAR(ks_pvalue(1.3581 / root, n), 0.05, 2e-4);
  EXPECT_NEAR(ks_pvalue(1.5 / root, n), 0.022217, 2e-4);
  EXPECT_EQ(ks_pvalue(0.0, 10), 1.0);
  EXPECT_LT(ks_pvalue(1.0, 1000), 1e-12);
}

TEST(Ks, StatisticAgainstUniform) {
  const std::vector<double> x = {0.1, 0.4, 0.7};
  const double d = ks_statistic(x, [](double t) { return std::clamp(t, 0.0, 1.0); });
  // max over i of (i/n - x_i, x_i - (i-1)/n)
  EXPECT_NEAR(d, 0.3, 1e-15);
}

TEST(Ks, NormalSamplePasses) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  std::vector<double> x(1000);
  for (double& v : x) v = normal(gen);
  const double d = ks_statistic(x, [](double t) { return normal_cdf(t); });
  EXPECT_GT(ks_pvalue(d, x.size()), 0.01);
  for (double& v : x) v += 0.3;
  const double shifted = ks_statistic(x, [](double t) { return normal_cdf(t); });
  EXPECT_LT(ks_pvalue(shifted, x.size()), 1e-6);
}

TEST(Distributions, NormalAndStudent) {
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
  EXPECT_NEAR(normal_cdf(3.0, 1.0, 2.0), normal_cdf(1.0), 1e-15);
  EXPECT_NEAR(t_quantile_975(9), 2.262157, 1e-6);
  EXPECT_NEAR(t_quantile_975(1000000), kZ95, 1e-5);
}

}  // namespace
}  // namespace rionset
