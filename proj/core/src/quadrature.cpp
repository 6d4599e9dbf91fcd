#include "rionset/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rionset/error.hpp"
#include "rionset/io.hpp"

namespace rionset {

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be > 0");
  }
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
  if (simpson_intervals < 2) throw DomainError("simpson_intervals must be >= 2");
}

namespace {

// Node/weight tables on [-1, 1]; index 0 is the centre, odd indices are the
// embedded 10-point Gauss nodes.
struct Gk21Table {
  std::array<double, 11> nodes{};
  std::array<double, 11> kronrod{};
  std::array<double, 11> gauss{};

  Gk21Table() {
    using Gk = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    for (std::size_t i = 0; i < 11; ++i) {
      nodes[i] = Gk::abscissa()[i];
      kronrod[i] = Gk::weights()[i];
      gauss[i] = i % 2 == 1 ? G::weights()[i / 2] : 0.0;
    }
  }
};

const Gk21Table& table() {
  static const Gk21Table t;
  return t;
}

struct RuleResult {
  double value;
  double error;
};

RuleResult apply_gk21(const ScalarFn& f, double a, double b) {
  const auto& t = table();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double k = fc * t.kronrod[0];
  double g = 0.0;
  double l1 = std::abs(k);
  for (std::size_t i = 1; i < 11; ++i) {
    const double dx = half * t.nodes[i];
    const double fp = f(centre + dx);
    const double fm = f(centre - dx);
    k += (fp + fm) * t.kronrod[i];
    g += (fp + fm) * t.gauss[i];
    l1 += (std::abs(fp) + std::abs(fm)) * t.kronrod[i];
  }
  const double err = std::max(std::abs(k - g),
                              50.0 * std::numeric_limits<double>::epsilon() * l1);
  return {k * half, err * std::abs(half)};
}

struct Panel {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

// Adaptive GK21; returns the final partition sorted by left edge.
std::vector<Panel> adaptive_partition(const ScalarFn& f, double a, double b,
                                      const QuadConfig& cfg, std::size_t& evals) {
  std::priority_queue<Panel> heap;
  const RuleResult first = apply_gk21(f, a, b);
  evals += 21;
  heap.push({a, b, first.value, first.error});
  double total = first.value;
  double total_err = first.error;
  std::size_t splits = 0;
  while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (splits >= cfg.max_subdivisions) {
      throw QuadratureError("adaptive quadrature did not converge on [" +
                            format_double(a) + ", " + format_double(b) +
                            "]: estimate " + format_double(total) +
                            ", error " + format_double(total_err));
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      throw QuadratureError("quadrature interval collapsed near " +
                            format_double(worst.a));
    }
    heap.pop();
    const RuleResult left = apply_gk21(f, worst.a, mid);
    const RuleResult right = apply_gk21(f, mid, worst.b);
    evals += 42;
    ++splits;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    if (!std::isfinite(total)) {
      throw QuadratureError("quadrature produced a non-finite value");
    }
  }
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  return panels;
}

double simpson(const ScalarFn& f, double a, double b, std::size_t n) {
  n += n % 2;
  const double h = (b - a) / static_cast<double>(n);
  double sum = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    sum += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  }
  return sum * h / 3.0;
}

}  // namespace

double gauss_kronrod_21(const ScalarFn& f, double a, double b) {
  return apply_gk21(f, a, b).value;
}

QuadResult integrate(const ScalarFn& f, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integration limits must be finite");
  }
  QuadResult out;
  if (a == b) return out;
  if (cfg.method == QuadMethod::Simpson) {
    const std::size_t n = cfg.simpson_intervals + cfg.simpson_intervals % 2;
    out.value = simpson(f, a, b, n);
    out.error = std::abs(out.value - simpson(f, a, b, n / 2)) / 15.0;
    out.evaluations = n + 1 + n / 2 + 1;
    return out;
  }
  const bool flip = a > b;
  const auto panels = adaptive_partition(f, std::min(a, b), std::max(a, b), cfg,
                                         out.evaluations);
  for (const auto& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  if (flip) out.value = -out.value;
  return out;
}

CumulativeIntegral::CumulativeIntegral(ScalarFn f, double a, double b,
                                       const QuadConfig& cfg)
    : f_(std::move(f)), method_(cfg.method) {
  cfg.validate();
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("cumulative integral needs finite a < b");
  }
  edges_.push_back(a);
  cumulative_.push_back(0.0);
  if (method_ == QuadMethod::Simpson) {
    // One Simpson pair per panel.
    const std::size_t panels = std::max<std::size_t>(1, cfg.simpson_intervals / 2);
    for (std::size_t i = 1; i <= panels; ++i) {
      const double right = i == panels ? b
                                       : a + (b - a) * static_cast<double>(i) /
                                                 static_cast<double>(panels);
      cumulative_.push_back(cumulative_.back() + simpson(f_, edges_.back(), right, 2));
      edges_.push_back(right);
    }
    return;
  }
  std::size_t evals = 0;
  for (const auto& p : adaptive_partition(f_, a, b, cfg, evals)) {
    cumulative_.push_back(cumulative_.back() + p.value);
    edges_.push_back(p.b);
  }
  edges_.back() = b;
}

double CumulativeIntegral::operator()(double x) const {
  if (x < edges_.front() || x > edges_.back() || std::isnan(x)) {
    throw std::out_of_range("cumulative integral queried at " + format_double(x) +
                            " outside [" + format_double(edges_.front()) + ", " +
                            format_double(edges_.back()) + "]");
  }
  if (x == edges_.back()) return cumulative_.back();
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  const auto i = static_cast<std::size_t>(it - edges_.begin()) - 1;
  if (x == edges_[i]) return cumulative_[i];
  const double rest = method_ == QuadMethod::Simpson
                          ? simpson(f_, edges_[i], x, 2)
                          : apply_gk21(f_, edges_[i], x).value;
  return cumulative_[i] + rest;
}

}  // namespace rionset
