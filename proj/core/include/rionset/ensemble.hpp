#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rionset/asymptotics.hpp"
#include "rionset/integrator.hpp"
#include "rionset/sde.hpp"
#include "rionset/stats.hpp"

namespace rionset {

struct EnsembleConfig {
  std::size_t n_realizations = 1000;
  Scenario scenario;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  StepperKind stepper = StepperKind::Rk4PlusNoise;
  std::uint64_t first_stream = 0;  // realization i uses stream first_stream + i
  unsigned workers = 0;            // 0: resolve_workers()

  void validate() const;
};

// One trajectory's result. An empty outcome means the path blew up.
struct Realization {
  std::uint64_t stream = 0;
  std::optional<HittingOutcome> outcome;
  double blowup_time = 0.0;
};

// All realizations in stream order. Identical for any worker count.
std::vector<Realization> simulate(const EnsembleConfig& cfg);

struct EnsembleStats {
  std::size_t n_realizations = 0;
  std::size_t n_onset = 0;
  std::size_t n_extinct = 0;
  std::size_t n_censored = 0;
  std::size_t n_blowup = 0;
  double p_hat = 0.0;  // n_onset / n_realizations
  Interval ci;         // 95% Wilson
  std::optional<double> tau_mean;  // conditional on onset; needs n_onset >= 1
  std::optional<double> tau_var;   // unbiased; needs n_onset >= 2
  Histogram histogram;             // onset times

  bool moments_defined() const noexcept { return tau_var.has_value(); }
};

// Onset times, sorted ascending.
std::vector<double> onset_times(std::span<const Realization> runs);

// Order-independent aggregation. `bins` overrides Freedman-Diaconis.
EnsembleStats summarize(std::span<const Realization> runs,
                        std::optional<std::size_t> bins = std::nullopt);

EnsembleStats run_ensemble(const EnsembleConfig& cfg,
                           std::optional<std::size_t> bins = std::nullopt);

// Replicated-experiment layout for probability curves: `experiments`
// batches of `realizations`, pooled into one estimate.
struct ProbabilityProtocol {
  std::size_t experiments = 10;
  std::size_t realizations = 100;
};

struct ProbabilityPoint {
  double value = 0.0;
  double epsilon = 0.0;
  EnsembleStats pooled;
  std::vector<double> experiment_p;  // one p_hat per batch
  double experiment_mean = 0.0;
  Interval experiment_ci;            // mean +/- t_{0.975} sd / sqrt(k)
};

// p_hat along a sweep of `which` (every point reuses cfg.seed and the same
// stream layout).
std::vector<ProbabilityPoint> onset_probability_curve(
    const EnsembleConfig& cfg, SweepParameter which,
    std::span<const double> values, const ProbabilityProtocol& protocol = {});

struct IndicatorOptions {
  double target = 0.8;
  double lo = 0.0;
  std::optional<double> hi;  // defaults to ell
  double width_tol = 1e-4;
  std::size_t max_iterations = 64;
};

struct IndicatorResult {
  std::optional<double> v0;  // empty: target not bracketed
  double p_hat = 0.0;
  Interval ci;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

// Bisection on v0 for p_hat(v0) = target using cfg.epsilon. Stops when the
// Wilson interval at the midpoint covers the target or the bracket is
// narrower than width_tol.
IndicatorResult onset_indicator(const EnsembleConfig& cfg,
                                const IndicatorOptions& options = {});

struct VarianceRow {
  double v0 = 0.0;
  double epsilon = 0.0;
  EnsembleStats monte_carlo;
  std::optional<OnsetGaussian> theory;  // empty if no deterministic onset
};

std::vector<VarianceRow> conditional_variance_curve(
    const EnsembleConfig& cfg, std::span<const double> v0_values,
    std::span<const double> epsilons);

}  // namespace rionset
