#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace rionset {

enum class QuadMethod { GaussKronrod, Simpson };

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdivisions = 4096;
  QuadMethod method = QuadMethod::GaussKronrod;
  std::size_t simpson_intervals = 2048;  // Simpson mode only; rounded up to even

  void validate() const;
};

using ScalarFn = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

// Globally adaptive 21-point Gauss-Kronrod (bisect the interval with the
// largest error until the total meets max(abs_tol, rel_tol |I|)), or a
// composite Simpson rule in Simpson mode. a > b integrates backwards.
// Throws QuadratureError if the subdivision budget runs out.
QuadResult integrate(const ScalarFn& f, double a, double b,
                     const QuadConfig& cfg = {});

// Single non-adaptive 21-point Kronrod estimate on [a, b].
double gauss_kronrod_21(const ScalarFn& f, double a, double b);

// Antiderivative x -> int_a^x f on [a, b]. The adaptive pass over [a, b] is
// kept as a panel table; a query adds the cumulative sum at the left edge
// of its panel to a fixed rule over the remainder of that panel.
class CumulativeIntegral {
 public:
  CumulativeIntegral(ScalarFn f, double a, double b, const QuadConfig& cfg = {});

  double operator()(double x) const;
  double total() const noexcept { return cumulative_.back(); }
  double lower() const noexcept { return edges_.front(); }
  double upper() const noexcept { return edges_.back(); }
  std::size_t panels() const noexcept { return edges_.size() - 1; }

 private:
  ScalarFn f_;
  QuadMethod method_;
  std::vector<double> edges_;
  std::vector<double> cumulative_;  // int_a^{edges_[i]} f
};

}  // namespace rionset
