#include "rionset/sde.hpp"

#include <stdexcept>

namespace rionset {

std::string_view to_string(StepperKind kind) {
  return kind == StepperKind::EulerMaruyama ? "em" : "rk4";
}

StepperKind parse_stepper(std::string_view name) {
  if (name == "rk4" || name == "Rk4PlusNoise") return StepperKind::Rk4PlusNoise;
  if (name == "em" || name == "EulerMaruyama") return StepperKind::EulerMaruyama;
  throw std::invalid_argument("unknown stepper '" + std::string(name) +
                              "' (expected rk4 or em)");
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Onset: return "onset";
    case OutcomeKind::Extinction: return "extinction";
    case OutcomeKind::Censored: return "censored";
  }
  return "?";
}

State step(const ModelParams& params, const State& x, double dt,
           const State& increment, StepperKind kind) {
  params.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  State next = step(MsdDrift{params}, x, dt, increment, kind);
  if (!next.finite()) throw BlowupError("step produced a non-finite state", 0.0);
  return next;
}

HittingOutcome run_to_hit(const ModelParams& params, const State& x0,
                          double ell, double dt, double t_max,
                          const NoiseConfig& noise, StepperKind kind,
                          std::vector<PathPoint>* path) {
  params.validate();
  return run_to_hit(MsdDrift{params}, x0, ell, dt, t_max, noise, kind, path);
}

}  // namespace rionset
