#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rionset/error.hpp"
#include "rionset/integrator.hpp"
#include "rionset/model.hpp"
#include "rionset/rng.hpp"

namespace rionset {

enum class StepperKind { EulerMaruyama, Rk4PlusNoise };

std::string_view to_string(StepperKind kind);
StepperKind parse_stepper(std::string_view name);

struct NoiseConfig {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

enum class OutcomeKind { Onset, Extinction, Censored };

std::string_view to_string(OutcomeKind kind);

struct HittingOutcome {
  OutcomeKind kind = OutcomeKind::Censored;
  double time = 0.0;
  State final_state;
};

// One step of dX = mu dt + eps dW. `increment` is the already scaled noise
// eps * sqrt(dt) * xi. Rk4PlusNoise takes an RK4 step on the drift and then
// adds the increment; EulerMaruyama is x + mu(x) dt + increment.
template <class Drift>
State step(const Drift& mu, const State& x, double dt, const State& increment,
           StepperKind kind) {
  State next = kind == StepperKind::Rk4PlusNoise ? rk4_step(mu, x, dt)
                                                 : x + dt * mu(x);
  next += increment;
  return next;
}

State step(const ModelParams& params, const State& x, double dt,
           const State& increment, StepperKind kind);

// Steps from x0 until v >= ell (Onset), v <= 0 (Extinction) or t_max
// (Censored). Crossing times are linearly interpolated inside the step. The
// noise of step k is drawn from GaussianStream(seed, stream_index) draw k,
// so the outcome is a pure function of the arguments. With epsilon == 0 no
// noise is drawn and the path equals integrate_ode's grid bit for bit.
// When `path` is non-null every grid state (and the final interpolated
// state) is appended to it.
template <class Drift>
HittingOutcome run_to_hit(const Drift& mu, const State& x0, double ell,
                          double dt, double t_max, const NoiseConfig& noise,
                          StepperKind kind, std::vector<PathPoint>* path = nullptr) {
  if (!(ell > 0.0)) throw DomainError("onset level must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be > 0");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be > 0");
  if (!(noise.epsilon >= 0.0) || !std::isfinite(noise.epsilon)) {
    throw DomainError("epsilon must be finite and >= 0");
  }
  if (!x0.finite()) throw DomainError("initial state is not finite");

  if (path) path->push_back({0.0, x0});
  if (x0.v >= ell) return {OutcomeKind::Onset, 0.0, x0};
  if (x0.v <= 0.0) return {OutcomeKind::Extinction, 0.0, x0};

  const std::size_t n = step_count(dt, t_max);
  const double scale = noise.epsilon * std::sqrt(dt);
  GaussianStream rng(noise.seed, noise.stream_index);
  State x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    State next;
    if (scale > 0.0) {
      next = step(mu, x, dt, scale * rng.next_triple(), kind);
    } else {
      next = kind == StepperKind::Rk4PlusNoise ? rk4_step(mu, x, dt)
                                               : x + dt * mu(x);
    }
    const double t = static_cast<double>(k) * dt;
    if (!next.finite()) {
      throw BlowupError("stochastic integration blew up after t=" +
                            std::to_string(t),
                        t);
    }
    if (next.v >= ell) {
      const double f = (ell - x.v) / (next.v - x.v);
      HittingOutcome hit{OutcomeKind::Onset, t + f * dt, lerp(x, next, f)};
      if (path) path->push_back({hit.time, hit.final_state});
      return hit;
    }
    if (next.v <= 0.0) {
      const double f = x.v / (x.v - next.v);
      HittingOutcome hit{OutcomeKind::Extinction, t + f * dt, lerp(x, next, f)};
      if (path) path->push_back({hit.time, hit.final_state});
      return hit;
    }
    x = next;
    if (path) path->push_back({static_cast<double>(k + 1) * dt, x});
  }
  return {OutcomeKind::Censored, t_max, x};
}

HittingOutcome run_to_hit(const ModelParams& params, const State& x0,
                          double ell, double dt, double t_max,
                          const NoiseConfig& noise,
                          StepperKind kind = StepperKind::Rk4PlusNoise,
                          std::vector<PathPoint>* path = nullptr);

// Scalar drift F embedded in the v-slot: (0, F(v), 0). The u and b
// components are driven by noise alone and never feed back into v.
template <class F>
struct ScalarDriftEmbedding {
  F f;
  State operator()(const State& x) const { return {0.0, f(x.v), 0.0}; }
};

template <class F>
ScalarDriftEmbedding(F) -> ScalarDriftEmbedding<F>;

}  // namespace rionset
