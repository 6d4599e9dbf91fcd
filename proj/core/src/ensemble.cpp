#include "rionset/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rionset/error.hpp"
#include "rionset/parallel.hpp"

namespace rionset {

void EnsembleConfig::validate() const {
  scenario.validate();
  if (n_realizations < 1) throw DomainError("n_realizations must be >= 1");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be finite and >= 0");
  }
}

std::vector<Realization> simulate(const EnsembleConfig& cfg) {
  cfg.validate();
  const Scenario& sc = cfg.scenario;
  const MsdDrift mu{sc.params};
  std::vector<Realization> runs(cfg.n_realizations);
  parallel_for(cfg.n_realizations, resolve_workers(cfg.workers), [&](std::size_t i) {
    Realization& run = runs[i];
    run.stream = cfg.first_stream + i;
    try {
      run.outcome = run_to_hit(mu, sc.x0, sc.ell, sc.dt, sc.t_max,
                               NoiseConfig{cfg.epsilon, cfg.seed, run.stream},
                               cfg.stepper);
    } catch (const BlowupError& e) {
      run.blowup_time = e.last_valid_time();
    }
  });
  return runs;
}

std::vector<double> onset_times(std::span<const Realization> runs) {
  std::vector<double> times;
  for (const auto& run : runs) {
    if (run.outcome && run.outcome->kind == OutcomeKind::Onset) {
      times.push_back(run.outcome->time);
    }
  }
  std::sort(times.begin(), times.end());
  return times;
}

EnsembleStats summarize(std::span<const Realization> runs,
                        std::optional<std::size_t> bins) {
  if (runs.empty()) throw DomainError("cannot summarise an empty ensemble");
  EnsembleStats st;
  st.n_realizations = runs.size();
  for (const auto& run : runs) {
    if (!run.outcome) {
      ++st.n_blowup;
      continue;
    }
    switch (run.outcome->kind) {
      case OutcomeKind::Onset: ++st.n_onset; break;
      case OutcomeKind::Extinction: ++st.n_extinct; break;
      case OutcomeKind::Censored: ++st.n_censored; break;
    }
  }
  st.p_hat = static_cast<double>(st.n_onset) / static_cast<double>(st.n_realizations);
  st.ci = wilson_interval(st.n_onset, st.n_realizations);

  const std::vector<double> times = onset_times(runs);
  const SampleMoments m = sample_moments(times);
  st.tau_mean = m.mean;
  st.tau_var = m.variance;
  st.histogram = make_histogram(times, bins);
  return st;
}

EnsembleStats run_ensemble(const EnsembleConfig& cfg,
                           std::optional<std::size_t> bins) {
  const auto runs = simulate(cfg);
  return summarize(runs, bins);
}

std::vector<ProbabilityPoint> onset_probability_curve(
    const EnsembleConfig& cfg, SweepParameter which,
    std::span<const double> values, const ProbabilityProtocol& protocol) {
  if (protocol.experiments < 1 || protocol.realizations < 1) {
    throw DomainError("probability protocol needs >= 1 experiment and realization");
  }
  std::vector<ProbabilityPoint> points;
  points.reserve(values.size());
  for (double value : values) {
    EnsembleConfig point_cfg = cfg;
    point_cfg.scenario = with_parameter(cfg.scenario, which, value);
    point_cfg.n_realizations = protocol.experiments * protocol.realizations;
    const auto runs = simulate(point_cfg);

    ProbabilityPoint pt;
    pt.value = value;
    pt.epsilon = cfg.epsilon;
    pt.pooled = summarize(runs);
    for (std::size_t e = 0; e < protocol.experiments; ++e) {
      const std::span<const Realization> batch(runs.data() + e * protocol.realizations,
                                               protocol.realizations);
      const auto onsets = static_cast<double>(std::count_if(
          batch.begin(), batch.end(), [](const Realization& r) {
            return r.outcome && r.outcome->kind == OutcomeKind::Onset;
          }));
      pt.experiment_p.push_back(onsets / static_cast<double>(protocol.realizations));
    }
    const SampleMoments m = sample_moments(pt.experiment_p);
    pt.experiment_mean = *m.mean;
    if (m.variance) {
      const double half = t_quantile_975(protocol.experiments - 1) *
                          std::sqrt(*m.variance / static_cast<double>(protocol.experiments));
      pt.experiment_ci = {pt.experiment_mean - half, pt.experiment_mean + half};
    } else {
      pt.experiment_ci = {pt.experiment_mean, pt.experiment_mean};
    }
    points.push_back(std::move(pt));
  }
  return points;
}

IndicatorResult onset_indicator(const EnsembleConfig& cfg,
                                const IndicatorOptions& options) {
  cfg.validate();
  const double ell = cfg.scenario.ell;
  double lo = options.lo;
  double hi = options.hi.value_or(ell);
  if (!(options.target > 0.0 && options.target < 1.0)) {
    throw DomainError("indicator target must lie in (0, 1)");
  }
  if (!(lo < hi)) throw DomainError("indicator bracket must satisfy lo < hi");
  if (!(options.width_tol > 0.0)) throw DomainError("width_tol must be > 0");

  IndicatorResult result;
  auto evaluate = [&](double v0) {
    EnsembleConfig c = cfg;
    c.scenario.x0.v = v0;
    ++result.evaluations;
    return run_ensemble(c);
  };

  // Endpoints outside (0, ell) have known probabilities 0 and 1.
  const double p_lo = lo <= 0.0 ? 0.0 : evaluate(lo).p_hat;
  const double p_hi = hi >= ell ? 1.0 : evaluate(hi).p_hat;
  if (!(p_lo < options.target && options.target < p_hi)) return result;

  while (result.iterations < options.max_iterations) {
    ++result.iterations;
    const double mid = 0.5 * (lo + hi);
    const EnsembleStats st = evaluate(mid);
    result.v0 = mid;
    result.p_hat = st.p_hat;
    result.ci = st.ci;
    if (st.ci.contains(options.target)) return result;
    if (st.p_hat < options.target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < options.width_tol) break;
  }
  const double mid = 0.5 * (lo + hi);
  const EnsembleStats st = evaluate(mid);
  result.v0 = mid;
  result.p_hat = st.p_hat;
  result.ci = st.ci;
  return result;
}

std::vector<VarianceRow> conditional_variance_curve(
    const EnsembleConfig& cfg, std::span<const double> v0_values,
    std::span<const double> epsilons) {
  std::vector<VarianceRow> rows;
  for (double eps : epsilons) {
    for (double v0 : v0_values) {
      EnsembleConfig c = cfg;
      c.epsilon = eps;
      c.scenario.x0.v = v0;
      VarianceRow row;
      row.v0 = v0;
      row.epsilon = eps;
      row.monte_carlo = run_ensemble(c);
      try {
        row.theory = onset_variance(c.scenario, eps);
      } catch (const NoAsymptoticsError&) {
        row.theory.reset();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace rionset
