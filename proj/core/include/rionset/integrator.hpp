#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "rionset/model.hpp"

namespace rionset {

// Classical fourth-order Runge-Kutta step for an autonomous field.
template <class Drift>
State rk4_step(const Drift& f, const State& x, double dt) {
  const State k1 = f(x);
  const State k2 = f(x + (0.5 * dt) * k1);
  const State k3 = f(x + (0.5 * dt) * k2);
  const State k4 = f(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// A timestamped state, the row type of every path CSV.
struct PathPoint {
  double t = 0.0;
  State x;
};

// Dense uniform-grid solution of the deterministic MSD system.
class Trajectory {
 public:
  Trajectory(ModelParams params, double dt, std::vector<State> states,
             double t0 = 0.0);

  const ModelParams& params() const noexcept { return params_; }
  double dt() const noexcept { return dt_; }
  double t0() const noexcept { return t0_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const State> states() const noexcept { return states_; }
  const State& operator[](std::size_t k) const { return states_[k]; }

  double time_at(std::size_t k) const noexcept {
    return t0_ + static_cast<double>(k) * dt_;
  }
  double t_end() const noexcept { return time_at(states_.size() - 1); }

  // Linear interpolation between the bracketing grid states. Throws
  // std::out_of_range outside [t0, t_end].
  State state_at(double t) const;

  // Last stored state; a diagnostic for where the flow settles.
  const State& final_state() const noexcept { return states_.back(); }

 private:
  ModelParams params_;
  double dt_;
  double t0_;
  std::vector<State> states_;
};

// Number of fixed steps needed to reach t_max: ceil(t_max / dt).
std::size_t step_count(double dt, double t_max);

// RK4 on mu from x0 over [0, t_max] with fixed step dt. The grid has
// ceil(t_max / dt) steps. Throws BlowupError on a non-finite state.
Trajectory integrate_ode(const ModelParams& params, const State& x0, double dt,
                         double t_max);

struct DetOnset {
  std::optional<double> time;  // empty: v stayed below the level
  State hit_state;

  bool reached() const noexcept { return time.has_value(); }
};

// First upward crossing of v = ell, refined by linear interpolation between
// the bracketing grid points. A trajectory starting at or above ell reports 0.
DetOnset deterministic_onset_time(const Trajectory& traj, double ell);

// Everything needed to place a single deterministic or stochastic run.
struct Scenario {
  ModelParams params;
  State x0{-0.01, 0.01, 1e-4};
  double ell = 0.1;
  double dt = 1e-3;
  double t_max = 50.0;

  static Scenario defaults() { return {}; }
  void validate() const;
};

enum class SweepParameter { V0, S, R, P };

std::string_view to_string(SweepParameter which);
SweepParameter parse_sweep_parameter(std::string_view name);

// Copy of base with one parameter replaced.
Scenario with_parameter(Scenario base, SweepParameter which, double value);

struct OnsetTimeRow {
  double value = 0.0;
  DetOnset onset;
  double asymptotic_v = 0.0;  // v at the end of the horizon
};

// Deterministic onset time along a one-parameter sweep.
std::vector<OnsetTimeRow> onset_time_curve(const Scenario& base,
                                           SweepParameter which,
                                           std::span<const double> values);

// CSV with header t,u,v,b and 17 significant digits.
void write_path_csv(std::ostream& out, std::span<const PathPoint> points);
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace rionset
