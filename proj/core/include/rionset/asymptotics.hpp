#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rionset/integrator.hpp"
#include "rionset/model.hpp"

namespace rionset {

// Covariance of the linearised fluctuation around the deterministic path.
// Construction enforces symmetry to 1e-12 (relative to the largest entry)
// and positive semi-definiteness (smallest eigenvalue >= -1e-10 relative).
class CovMatrix {
 public:
  CovMatrix() : m_(Matrix3::Zero()) {}
  explicit CovMatrix(const Matrix3& m);

  const Matrix3& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double min_eigenvalue() const;

 private:
  Matrix3 m_;
};

// A(t) along some path.
using JacobianFn = std::function<Matrix3(double)>;

// Called after every accepted step with (t, Sigma).
using SigmaObserver = std::function<void(double, const Matrix3&)>;

// RK4 for dSigma/dt = I + A Sigma + Sigma A^T, Sigma(0) = 0, on the grid
// k*dt, with a final partial step to land on t_end. Sigma is symmetrised
// after every step.
CovMatrix integrate_lyapunov(const JacobianFn& a, double dt, double t_end,
                             const SigmaObserver& observer = {});

// Lyapunov integration with A(t) = jacobian(x(t)); x at RK4 half steps
// comes from linear interpolation of the stored states. Throws
// std::out_of_range if t_end exceeds the trajectory.
CovMatrix integrate_sigma(const Trajectory& traj, double t_end,
                          const SigmaObserver& observer = {});

// Small-noise Gaussian law of the onset time: mean T and variance
// eps^2 Sigma22(T) / (ell^2 (u(T) + ell)^2).
struct OnsetGaussian {
  double mean = 0.0;
  double variance = 0.0;
  double epsilon = 0.0;
  double ell = 0.0;
  double sigma22 = 0.0;
  double u_at_onset = 0.0;

  // The eps-free factor Sigma22(T) / (ell^2 (u(T) + ell)^2).
  double h() const noexcept;
};

// Integrates the deterministic path, finds T and Sigma(T). Throws
// NoAsymptoticsError when v never reaches ell within t_max.
OnsetGaussian onset_variance(const Scenario& scenario, double epsilon);

// Normal density / CDF of the onset time. Throw PointMassError when the
// variance is zero.
double gaussian_onset_pdf(const OnsetGaussian& g, double t);
double gaussian_onset_cdf(const OnsetGaussian& g, double t);

struct HRow {
  double value = 0.0;
  double onset_time = 0.0;
  double u_at_onset = 0.0;
  double sigma22 = 0.0;
  double h = 0.0;
  double variance_at_eps = 0.0;
};

// H(T) along a one-parameter sweep; variance_at_eps = epsilon^2 H.
std::vector<HRow> h_of_T_curve(const Scenario& base, SweepParameter which,
                               std::span<const double> values, double epsilon);

}  // namespace rionset
