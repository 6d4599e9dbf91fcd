#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rionset {

// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 0.0;

  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

// Wilson score interval for a binomial proportion. n must be > 0.
Interval wilson_interval(std::size_t successes, std::size_t n, double z = kZ95);

struct SampleMoments {
  std::size_t n = 0;
  std::optional<double> mean;      // n >= 1
  std::optional<double> variance;  // unbiased, n >= 2
};

// Order-independent: the sample is sorted before accumulation. Uses the
// first order statistic as shift, so a constant sample has variance 0.
SampleMoments sample_moments(std::span<const double> sample);

// Adjusted Fisher-Pearson skewness g1 * sqrt(n(n-1))/(n-2); needs n >= 3.
double sample_skewness(std::span<const double> sample);

// Linear-interpolation quantile (Hyndman-Fan type 7) of a sorted sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct Histogram {
  std::vector<double> edges;          // bins + 1 ascending edges
  std::vector<std::size_t> counts;    // one per bin, last bin closed

  std::size_t total() const noexcept;
};

// Freedman-Diaconis width 2 IQR n^{-1/3}; falls back to one bin when the
// sample (or its IQR) is degenerate. `bins` overrides the rule.
Histogram make_histogram(std::span<const double> sample,
                         std::optional<std::size_t> bins = std::nullopt,
                         std::size_t max_bins = 10000);

// sup_x |F_n(x) - cdf(x)| for a sample (sorted internally).
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov p-value with Stephens' small-sample correction.
double ks_pvalue(double statistic, std::size_t n);

double normal_cdf(double x, double mean = 0.0, double sd = 1.0);

// Two-sided 95% Student-t quantile with `dof` degrees of freedom.
double t_quantile_975(std::size_t dof);

}  // namespace rionset
