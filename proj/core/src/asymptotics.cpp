#include "rionset/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "rionset/error.hpp"
#include "rionset/io.hpp"

namespace rionset {

CovMatrix::CovMatrix(const Matrix3& m) : m_(m) {
  if (!m_.allFinite()) throw DomainError("covariance has non-finite entries");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("covariance matrix is not symmetric");
  }
  if (min_eigenvalue() < -1e-10 * scale) {
    throw DomainError("covariance matrix is not positive semi-definite");
  }
}

double CovMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

Matrix3 lyapunov_rhs(const Matrix3& a, const Matrix3& sigma) {
  Matrix3 as = a * sigma;
  return Matrix3::Identity() + as + as.transpose();
}

Matrix3 rk4_lyapunov(const Matrix3& sigma, const Matrix3& a0, const Matrix3& am,
                     const Matrix3& a1, double h) {
  const Matrix3 k1 = lyapunov_rhs(a0, sigma);
  const Matrix3 k2 = lyapunov_rhs(am, sigma + 0.5 * h * k1);
  const Matrix3 k3 = lyapunov_rhs(am, sigma + 0.5 * h * k2);
  const Matrix3 k4 = lyapunov_rhs(a1, sigma + h * k3);
  Matrix3 next = sigma + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return 0.5 * (next + next.transpose());
}

}  // namespace

CovMatrix integrate_lyapunov(const JacobianFn& a, double dt, double t_end,
                             const SigmaObserver& observer) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw DomainError("t_end must be finite and >= 0");
  }
  Matrix3 sigma = Matrix3::Zero();
  // Whole steps whose right end stays at or before t_end.
  const auto whole = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  Matrix3 a_left = a(0.0);
  double t = 0.0;
  for (std::size_t k = 0; k < whole; ++k) {
    const double t_next = static_cast<double>(k + 1) * dt;
    if (t_next > t_end) break;
    const Matrix3 a_mid = a(t + 0.5 * dt);
    const Matrix3 a_right = a(t_next);
    sigma = rk4_lyapunov(sigma, a_left, a_mid, a_right, dt);
    if (!sigma.allFinite()) throw BlowupError("Sigma integration blew up", t);
    a_left = a_right;
    t = t_next;
    if (observer) observer(t, sigma);
  }
  const double rest = t_end - t;
  if (rest > 0.0) {
    sigma = rk4_lyapunov(sigma, a_left, a(t + 0.5 * rest), a(t_end), rest);
    if (!sigma.allFinite()) throw BlowupError("Sigma integration blew up", t);
    if (observer) observer(t_end, sigma);
  }
  return CovMatrix(sigma);
}

CovMatrix integrate_sigma(const Trajectory& traj, double t_end,
                          const SigmaObserver& observer) {
  if (t_end > traj.t_end()) {
    throw std::out_of_range("t_end " + std::to_string(t_end) +
                            " beyond trajectory end " +
                            std::to_string(traj.t_end()));
  }
  const ModelParams params = traj.params();
  const JacobianFn a = [&](double t) {
    return jacobian(params, traj.state_at(std::min(t, traj.t_end())));
  };
  return integrate_lyapunov(a, traj.dt(), t_end, observer);
}

double OnsetGaussian::h() const noexcept {
  const double denom = ell * (u_at_onset + ell);
  return sigma22 / (denom * denom);
}

OnsetGaussian onset_variance(const Scenario& scenario, double epsilon) {
  scenario.validate();
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be finite and >= 0");
  }
  const Trajectory traj =
      integrate_ode(scenario.params, scenario.x0, scenario.dt, scenario.t_max);
  const DetOnset onset = deterministic_onset_time(traj, scenario.ell);
  if (!onset.reached()) {
    throw NoAsymptoticsError("v never reaches ell=" + format_double(scenario.ell) +
                             " before t_max; the Gaussian limit does not apply");
  }
  const CovMatrix sigma = integrate_sigma(traj, *onset.time);
  OnsetGaussian g;
  g.mean = *onset.time;
  g.epsilon = epsilon;
  g.ell = scenario.ell;
  g.sigma22 = sigma(1, 1);
  g.u_at_onset = onset.hit_state.u;
  g.variance = epsilon * epsilon * g.h();
  return g;
}

double gaussian_onset_pdf(const OnsetGaussian& g, double t) {
  if (!(g.variance > 0.0)) {
    throw PointMassError("onset distribution is a point mass at T=" +
                         format_double(g.mean));
  }
  const double z = (t - g.mean);
  return std::exp(-0.5 * z * z / g.variance) /
         std::sqrt(2.0 * std::numbers::pi * g.variance);
}

double gaussian_onset_cdf(const OnsetGaussian& g, double t) {
  if (!(g.variance > 0.0)) {
    throw PointMassError("onset distribution is a point mass at T=" +
                         format_double(g.mean));
  }
  return 0.5 * std::erfc(-(t - g.mean) / std::sqrt(2.0 * g.variance));
}

std::vector<HRow> h_of_T_curve(const Scenario& base, SweepParameter which,
                               std::span<const double> values, double epsilon) {
  std::vector<HRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    const OnsetGaussian g = onset_variance(with_parameter(base, which, value), epsilon);
    rows.push_back({value, g.mean, g.u_at_onset, g.sigma22, g.h(), g.variance});
  }
  return rows;
}

}  // namespace rionset
