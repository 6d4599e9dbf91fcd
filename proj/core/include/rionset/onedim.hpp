#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rionset/quadrature.hpp"

namespace rionset {

// Scalar drift for dZ = F(Z) dt + eps dW on [0, ell].
struct DriftFn1D {
  std::function<double(double)> F;
  std::optional<double> F_prime_at_0;
  // Optional analytic G(y) = int_0^y F; quadrature is used when absent.
  std::function<double(double)> primitive;
  std::string label;
  QuadConfig quad;
};

// Built-ins: "zero" (F = 0), "linear" (F = a x), "logistic" (F = a x (1 - x)).
DriftFn1D make_drift(const std::string& name, double coefficient = 1.0);
std::vector<std::string> drift_names();

// Central difference at h = 1e-7; prints a warning to std::clog.
double estimate_f_prime_at_0(const DriftFn1D& drift);
// Copy of `drift` with F'(0) filled in by estimate_f_prime_at_0 if missing.
DriftFn1D with_f_prime_at_0(DriftFn1D drift);

// log k_eps(y) = -(2 / eps^2) int_0^y F.
double log_k_eps(const DriftFn1D& drift, double epsilon, double y);
double k_eps(const DriftFn1D& drift, double epsilon, double y);

// Cached first-passage quantities for one (drift, eps, ell). With
// D(x) = int_0^x k, p = D / D(ell), J(z) = k(z) int_0^z p / k and M = int J:
//   E_x = Psi - (2 / eps^2) M(x) / p(x),   Psi = (2 / eps^2) M(ell).
// All k ratios are formed in log space relative to max log k on [0, ell].
class HittingKernel {
 public:
  HittingKernel(DriftFn1D drift, double epsilon, double ell);
  ~HittingKernel();
  HittingKernel(HittingKernel&&) noexcept;
  HittingKernel& operator=(HittingKernel&&) noexcept;

  double hit_prob(double x) const;
  double cond_exp_hit_time(double x) const;
  double psi() const;
  // (2 / eps^2) M(x) / p(x), i.e. Psi - E_x without cancellation.
  double psi_gap(double x) const;

  double epsilon() const noexcept;
  double ell() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

double hit_prob_1d(const DriftFn1D& drift, double epsilon, double ell, double x);
double cond_exp_hit_time(const DriftFn1D& drift, double epsilon, double ell, double x);
double psi_limit(const DriftFn1D& drift, double epsilon, double ell);

// Zero-noise travel time int_x^ell dz / F(z); infinite if F vanishes on the way.
double deterministic_hit_time_1d(const DriftFn1D& drift, double ell, double x);

// Limit of hit_prob_1d at x = c eps^alpha as eps -> 0: 1, erf(c sqrt(F'(0))), 0.
double asymptotic_hit_prob(const DriftFn1D& drift, double c, double alpha);

enum class ErfRegime { ToOne, ToErfC, Linear };
std::string to_string(ErfRegime regime);

struct ErfAsymptotics {
  double value = 0.0;         // erf(c eps^(alpha - 1))
  ErfRegime regime = ErfRegime::ToErfC;
  double leading_term = 0.0;  // 1, erf(c) or (2c / sqrt(pi)) eps^(alpha - 1)
};

ErfAsymptotics erf_asymptotics(double c, double alpha, double epsilon);

}  // namespace rionset
