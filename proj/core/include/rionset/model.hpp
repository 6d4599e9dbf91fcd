#pragma once

#include <cmath>

#include <Eigen/Core>

namespace rionset {

using Matrix3 = Eigen::Matrix3d;

// Nondimensional MSD parameters: aspect ratio p, Newtonian cooling r and
// static stability s. All three must be strictly positive.
struct ModelParams {
  double p = 200.0;
  double r = 0.25;
  double s = 0.1;

  static ModelParams defaults() { return {}; }

  // Throws DomainError unless p, r, s are finite and > 0.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// A point (u, v, b): maximum radial wind, maximum tangential wind and
// warm-core anomaly.
struct State {
  double u = 0.0;
  double v = 0.0;
  double b = 0.0;

  bool finite() const noexcept {
    return std::isfinite(u) && std::isfinite(v) && std::isfinite(b);
  }

  State& operator+=(const State& o) noexcept {
    u += o.u;
    v += o.v;
    b += o.b;
    return *this;
  }

  friend State operator+(State a, const State& b) noexcept { return a += b; }
  friend State operator-(const State& a, const State& b) noexcept {
    return {a.u - b.u, a.v - b.v, a.b - b.b};
  }
  friend State operator*(double k, const State& a) noexcept {
    return {k * a.u, k * a.v, k * a.b};
  }
  friend bool operator==(const State&, const State&) = default;
};

// Linear interpolation a + f (b - a).
inline State lerp(const State& a, const State& b, double f) noexcept {
  return {a.u + f * (b.u - a.u), a.v + f * (b.v - a.v), a.b + f * (b.b - a.b)};
}

// Cyclonic (v > 0) MSD vector field. No clamping of v: negative v is legal
// input, extinction is detected by the hitting logic.
struct MsdDrift {
  ModelParams params;

  State operator()(const State& x) const noexcept {
    const double p = params.p;
    return {p * x.v * x.v - (p + 1.0) * x.b - x.u * x.v,
            -x.u * x.v - x.v * x.v,
            x.b * x.u + params.s * x.u + x.v - params.r * x.b};
  }
};

// Checked drift: validates params and requires a finite x.
State drift(const ModelParams& params, const State& x);

// Dmu(x), rows (du, dv, db) by columns (u, v, b).
Matrix3 jacobian(const ModelParams& params, const State& x);

}  // namespace rionset
