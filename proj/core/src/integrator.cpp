#include "rionset/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rionset/error.hpp"
#include "rionset/io.hpp"

namespace rionset {

Trajectory::Trajectory(ModelParams params, double dt, std::vector<State> states,
                       double t0)
    : params_(params), dt_(dt), t0_(t0), states_(std::move(states)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw DomainError("trajectory step must be finite and > 0");
  }
  if (states_.empty()) throw DomainError("trajectory has no states");
}

State Trajectory::state_at(double t) const {
  if (!(t >= t0_) || t > t_end() * (1.0 + 1e-12) + 1e-300) {
    throw std::out_of_range("time " + std::to_string(t) +
                            " outside trajectory span");
  }
  const double pos = (t - t0_) / dt_;
  auto k = static_cast<std::size_t>(std::floor(pos));
  if (k + 1 >= states_.size()) return states_.back();
  return lerp(states_[k], states_[k + 1], pos - static_cast<double>(k));
}

std::size_t step_count(double dt, double t_max) {
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

Trajectory integrate_ode(const ModelParams& params, const State& x0, double dt,
                         double t_max) {
  params.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be > 0");
  if (!(t_max >= dt)) throw DomainError("t_max must be >= dt");
  if (!x0.finite()) throw DomainError("initial state is not finite");

  const std::size_t n = step_count(dt, t_max);
  const MsdDrift mu{params};
  std::vector<State> states;
  states.reserve(n + 1);
  states.push_back(x0);
  for (std::size_t k = 0; k < n; ++k) {
    State next = rk4_step(mu, states.back(), dt);
    if (!next.finite()) {
      throw BlowupError("deterministic integration blew up after t=" +
                            std::to_string(static_cast<double>(k) * dt),
                        static_cast<double>(k) * dt);
    }
    states.push_back(next);
  }
  return Trajectory(params, dt, std::move(states));
}

DetOnset deterministic_onset_time(const Trajectory& traj, double ell) {
  if (!(ell > 0.0)) throw DomainError("onset level must be > 0");
  const auto states = traj.states();
  if (states.front().v >= ell) return {traj.time_at(0), states.front()};
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const State& a = states[k];
    const State& b = states[k + 1];
    if (a.v < ell && b.v >= ell) {
      const double f = (ell - a.v) / (b.v - a.v);
      return {traj.time_at(k) + f * traj.dt(), lerp(a, b, f)};
    }
  }
  return {std::nullopt, states.back()};
}

void Scenario::validate() const {
  params.validate();
  if (!x0.finite()) throw DomainError("initial state is not finite");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("ell must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be > 0");
  if (!(t_max >= dt) || !std::isfinite(t_max)) {
    throw DomainError("t_max must be finite and >= dt");
  }
}

std::string_view to_string(SweepParameter which) {
  switch (which) {
    case SweepParameter::V0: return "v0";
    case SweepParameter::S: return "s";
    case SweepParameter::R: return "r";
    case SweepParameter::P: return "p";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "v0") return SweepParameter::V0;
  if (name == "s") return SweepParameter::S;
  if (name == "r") return SweepParameter::R;
  if (name == "p") return SweepParameter::P;
  throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                              "' (expected v0, s, r or p)");
}

Scenario with_parameter(Scenario base, SweepParameter which, double value) {
  switch (which) {
    case SweepParameter::V0: base.x0.v = value; break;
    case SweepParameter::S: base.params.s = value; break;
    case SweepParameter::R: base.params.r = value; break;
    case SweepParameter::P: base.params.p = value; break;
  }
  return base;
}

std::vector<OnsetTimeRow> onset_time_curve(const Scenario& base,
                                           SweepParameter which,
                                           std::span<const double> values) {
  std::vector<OnsetTimeRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    const Scenario sc = with_parameter(base, which, value);
    sc.validate();
    const Trajectory traj = integrate_ode(sc.params, sc.x0, sc.dt, sc.t_max);
    rows.push_back({value, deterministic_onset_time(traj, sc.ell),
                    traj.final_state().v});
  }
  return rows;
}

void write_path_csv(std::ostream& out, std::span<const PathPoint> points) {
  out << "t,u,v,b\n";
  for (const auto& pt : points) {
    out << format_double(pt.t) << ',' << format_double(pt.x.u) << ','
        << format_double(pt.x.v) << ',' << format_double(pt.x.b) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,u,v,b\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const State& x = traj[k];
    out << format_double(traj.time_at(k)) << ',' << format_double(x.u) << ','
        << format_double(x.v) << ',' << format_double(x.b) << '\n';
  }
}

}  // namespace rionset
