#include "rionset/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>

#include "rionset/error.hpp"
#include "rionset/io.hpp"

namespace rionset {

DriftFn1D make_drift(const std::string& name, double a) {
  if (!std::isfinite(a)) throw DomainError("drift coefficient must be finite");
  DriftFn1D d;
  if (name == "zero") {
    d.F = [](double) { return 0.0; };
    d.primitive = [](double) { return 0.0; };
    d.F_prime_at_0 = 0.0;
  } else if (name == "linear") {
    d.F = [a](double x) { return a * x; };
    d.primitive = [a](double y) { return 0.5 * a * y * y; };
    d.F_prime_at_0 = a;
  } else if (name == "logistic") {
    d.F = [a](double x) { return a * x * (1.0 - x); };
    d.primitive = [a](double y) { return a * y * y * (0.5 - y / 3.0); };
    d.F_prime_at_0 = a;
  } else {
    throw DomainError("unknown drift '" + name + "' (expected zero, linear or logistic)");
  }
  d.label = name;
  return d;
}

std::vector<std::string> drift_names() { return {"zero", "linear", "logistic"}; }

double estimate_f_prime_at_0(const DriftFn1D& drift) {
  constexpr double h = 1e-7;
  const double d = (drift.F(h) - drift.F(-h)) / (2.0 * h);
  std::clog << "warning: F'(0) for drift '" << drift.label
            << "' estimated by central difference: " << format_double(d) << '\n';
  return d;
}

DriftFn1D with_f_prime_at_0(DriftFn1D drift) {
  if (!drift.F_prime_at_0) drift.F_prime_at_0 = estimate_f_prime_at_0(drift);
  return drift;
}

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be finite and > 0");
  }
}

void check_ell(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("ell must be finite and > 0");
}

double primitive_at(const DriftFn1D& drift, double y) {
  if (drift.primitive) return drift.primitive(y);
  return integrate(drift.F, 0.0, y, drift.quad).value;
}

// Copy of cfg whose absolute tolerance is relative to the integrand's size.
QuadConfig scaled(const QuadConfig& cfg, double scale) {
  QuadConfig out = cfg;
  if (std::isfinite(scale) && scale > 0.0) {
    out.abs_tol = std::max(cfg.abs_tol * std::min(scale, 1.0),
                           std::numeric_limits<double>::min());
  }
  return out;
}

double coarse_total(const ScalarFn& f, double a, double b) {
  constexpr int kPanels = 64;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + (b - a) * i / kPanels;
    const double hi = i + 1 == kPanels ? b : a + (b - a) * (i + 1) / kPanels;
    total += std::abs(gauss_kronrod_21(f, lo, hi));
  }
  return total;
}

}  // namespace

double log_k_eps(const DriftFn1D& drift, double epsilon, double y) {
  check_epsilon(epsilon);
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("k_eps requires finite y >= 0");
  if (y == 0.0) return 0.0;
  return -(2.0 / (epsilon * epsilon)) * primitive_at(drift, y);
}

double k_eps(const DriftFn1D& drift, double epsilon, double y) {
  return std::exp(log_k_eps(drift, epsilon, y));
}

struct HittingKernel::Impl {
  DriftFn1D drift;
  double epsilon;
  double ell;
  double scale;  // 2 / eps^2
  double shift = 0.0;
  std::optional<CumulativeIntegral> primitive;
  std::optional<CumulativeIntegral> d;
  mutable std::once_flag m_once;
  mutable std::optional<CumulativeIntegral> m;

  Impl(DriftFn1D f, double eps, double l)
      : drift(std::move(f)), epsilon(eps), ell(l), scale(2.0 / (eps * eps)) {
    check_epsilon(eps);
    check_ell(l);
    if (!drift.F) throw ContractError("drift has no function");
    drift.quad.validate();
    if (!drift.primitive) primitive.emplace(drift.F, 0.0, ell, drift.quad);
    constexpr int kProbe = 512;
    shift = 0.0;
    for (int i = 1; i <= kProbe; ++i) {
      shift = std::max(shift, raw_log_k(ell * i / kProbe));
    }
    auto shifted_k = [this](double y) { return std::exp(raw_log_k(y) - shift); };
    d.emplace(shifted_k, 0.0, ell,
              scaled(drift.quad, coarse_total(shifted_k, 0.0, ell)));
    if (!(d->total() > 0.0) || !std::isfinite(d->total())) {
      throw QuadratureError("normalising integral of k_eps is not positive");
    }
  }

  double raw_log_k(double y) const {
    if (y <= 0.0) return 0.0;
    const double g = primitive ? (*primitive)(std::min(y, ell)) : drift.primitive(y);
    return -scale * g;
  }

  double p(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= ell) return 1.0;
    return (*d)(x) / d->total();
  }

  // J(z) = int_0^z p(y) k(z) / k(y) dy.
  double j(double z) const {
    if (z <= 0.0) return 0.0;
    const double lz = raw_log_k(z);
    auto integrand = [this, lz](double y) { return p(y) * std::exp(lz - raw_log_k(y)); };
    return integrate(integrand, 0.0, z, scaled(drift.quad, p(z) * z)).value;
  }

  const CumulativeIntegral& m_table() const {
    std::call_once(m_once, [this] {
      auto fj = [this](double z) { return j(z); };
      m.emplace(fj, 0.0, ell, scaled(drift.quad, coarse_total(fj, 0.0, ell)));
    });
    return *m;
  }
};

HittingKernel::HittingKernel(DriftFn1D drift, double epsilon, double ell)
    : impl_(std::make_unique<Impl>(std::move(drift), epsilon, ell)) {}
HittingKernel::~HittingKernel() = default;
HittingKernel::HittingKernel(HittingKernel&&) noexcept = default;
HittingKernel& HittingKernel::operator=(HittingKernel&&) noexcept = default;

double HittingKernel::epsilon() const noexcept { return impl_->epsilon; }
double HittingKernel::ell() const noexcept { return impl_->ell; }

double HittingKernel::hit_prob(double x) const {
  if (!(x >= 0.0 && x <= impl_->ell)) {
    throw DomainError("hit_prob_1d requires 0 <= x <= ell, got " + format_double(x));
  }
  return impl_->p(x);
}

double HittingKernel::psi() const {
  return impl_->scale * impl_->m_table().total();
}

double HittingKernel::psi_gap(double x) const {
  if (!(x > 0.0 && x <= impl_->ell)) {
    throw DomainError("conditional hitting time requires 0 < x <= ell, got " +
                      format_double(x));
  }
  if (x == impl_->ell) return psi();
  return impl_->scale * impl_->m_table()(x) / impl_->p(x);
}

double HittingKernel::cond_exp_hit_time(double x) const {
  const double gap = psi_gap(x);
  if (x == impl_->ell) return 0.0;
  return std::max(psi() - gap, 0.0);
}

double hit_prob_1d(const DriftFn1D& drift, double epsilon, double ell, double x) {
  check_ell(ell);
  if (!(x >= 0.0 && x <= ell)) {
    throw DomainError("hit_prob_1d requires 0 <= x <= ell, got " + format_double(x));
  }
  if (x == 0.0) return 0.0;
  if (x == ell) return 1.0;
  return HittingKernel(drift, epsilon, ell).hit_prob(x);
}

double cond_exp_hit_time(const DriftFn1D& drift, double epsilon, double ell, double x) {
  check_ell(ell);
  if (!(x > 0.0 && x <= ell)) {
    throw DomainError("conditional hitting time requires 0 < x <= ell, got " +
                      format_double(x));
  }
  if (x == ell) return 0.0;
  return HittingKernel(drift, epsilon, ell).cond_exp_hit_time(x);
}

double psi_limit(const DriftFn1D& drift, double epsilon, double ell) {
  return HittingKernel(drift, epsilon, ell).psi();
}

double deterministic_hit_time_1d(const DriftFn1D& drift, double ell, double x) {
  check_ell(ell);
  if (!(x > 0.0 && x <= ell)) throw DomainError("deterministic time requires 0 < x <= ell");
  if (x == ell) return 0.0;
  // Substituting z = exp(w) keeps the 1/F(z) ~ 1/z singularity near 0 tame.
  auto integrand = [&drift](double w) {
    const double z = std::exp(w);
    const double f = drift.F(z);
    return f > 0.0 ? z / f : std::numeric_limits<double>::infinity();
  };
  const double value = integrate(integrand, std::log(x), std::log(ell), drift.quad).value;
  return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

double asymptotic_hit_prob(const DriftFn1D& drift, double c, double alpha) {
  if (!drift.F_prime_at_0) {
    throw ContractError("asymptotic_hit_prob needs F'(0); see with_f_prime_at_0");
  }
  const double fp = *drift.F_prime_at_0;
  if (!(fp > 0.0)) throw ContractError("asymptotic_hit_prob needs F'(0) > 0");
  if (!(c > 0.0) || !(alpha > 0.0)) throw DomainError("c and alpha must be > 0");
  if (alpha < 1.0) return 1.0;
  if (alpha > 1.0) return 0.0;
  return std::erf(c * std::sqrt(fp));
}

std::string to_string(ErfRegime regime) {
  switch (regime) {
    case ErfRegime::ToOne: return "to_one";
    case ErfRegime::ToErfC: return "erf_c";
    case ErfRegime::Linear: return "linear";
  }
  return "unknown";
}

ErfAsymptotics erf_asymptotics(double c, double alpha, double epsilon) {
  check_epsilon(epsilon);
  if (!(c > 0.0) || !(alpha > 0.0)) throw DomainError("c and alpha must be > 0");
  ErfAsymptotics out;
  if (alpha == 1.0) {
    out.value = std::erf(c);
    out.regime = ErfRegime::ToErfC;
    out.leading_term = out.value;
    return out;
  }
  const double arg = c * std::pow(epsilon, alpha - 1.0);
  out.value = std::erf(arg);
  if (alpha < 1.0) {
    out.regime = ErfRegime::ToOne;
    out.leading_term = 1.0;
  } else {
    out.regime = ErfRegime::Linear;
    out.leading_term = 2.0 * arg / std::sqrt(std::numbers::pi);
  }
  return out;
}

}  // namespace rionset
