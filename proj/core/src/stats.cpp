#include "rionset/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace rionset {

Interval wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) throw std::invalid_argument("Wilson interval needs n > 0");
  if (successes > n) throw std::invalid_argument("successes exceed trials");
  const double nn = static_cast<double>(n);
  const double ph = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (ph + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // Pin the endpoints that are exact so low <= p_hat <= high survives rounding.
  if (successes == 0) ci.low = 0.0;
  if (successes == n) ci.high = 1.0;
  ci.low = std::min(ci.low, ph);
  ci.high = std::max(ci.high, ph);
  return ci;
}

SampleMoments sample_moments(std::span<const double> sample) {
  SampleMoments m;
  m.n = sample.size();
  if (sample.empty()) return m;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double shift = sorted.front();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : sorted) {
    const double d = x - shift;
    sum += d;
    sum_sq += d * d;
  }
  const double n = static_cast<double>(sorted.size());
  m.mean = shift + sum / n;
  if (sorted.size() >= 2) {
    m.variance = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  }
  return m;
}

double sample_skewness(std::span<const double> sample) {
  const std::size_t count = sample.size();
  if (count < 3) throw std::invalid_argument("skewness needs at least 3 points");
  const double n = static_cast<double>(count);
  const double mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : sample) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 == 0.0) return 0.0;
  const double g1 = m3 / std::pow(m2, 1.5);
  return g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile outside [0,1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::size_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Histogram make_histogram(std::span<const double> sample,
                         std::optional<std::size_t> bins,
                         std::size_t max_bins) {
  Histogram h;
  if (sample.empty()) return h;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();

  std::size_t nbins = 1;
  if (bins) {
    if (*bins == 0) throw std::invalid_argument("histogram needs >= 1 bin");
    nbins = *bins;
  } else if (hi > lo) {
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double width =
        2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (width > 0.0) {
      nbins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
      nbins = std::clamp<std::size_t>(nbins, 1, max_bins);
    }
  }

  const double span = hi > lo ? hi - lo : 1.0;
  const double left = hi > lo ? lo : lo - 0.5;
  h.edges.resize(nbins + 1);
  for (std::size_t i = 0; i <= nbins; ++i) {
    h.edges[i] = left + span * static_cast<double>(i) / static_cast<double>(nbins);
  }
  h.edges.back() = hi > lo ? hi : lo + 0.5;
  h.counts.assign(nbins, 0);
  for (double x : sorted) {
    // upper_bound on interior edges picks the bin; the maximum lands in the
    // last (closed) bin.
    auto it = std::upper_bound(h.edges.begin() + 1, h.edges.end() - 1, x);
    ++h.counts[static_cast<std::size_t>(it - (h.edges.begin() + 1))];
  }
  return h;
}

double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS statistic of empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_pvalue(double statistic, std::size_t n) {
  if (n == 0) throw std::invalid_argument("KS p-value needs n > 0");
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lambda < 1e-3) return 1.0;
  if (lambda < 1.18) {
    // Jacobi-theta form of the CDF, fast for small lambda.
    const double a = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double j = 2.0 * k - 1.0;
      cdf += std::exp(-j * j * a);
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  // Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    sum += sign * std::exp(-2.0 * k * k * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double t_quantile_975(std::size_t dof) {
  if (dof == 0) throw std::invalid_argument("t quantile needs dof >= 1");
  boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 0.975);
}

}  // namespace rionset
