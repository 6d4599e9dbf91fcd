#include "rionset/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rionset/asymptotics.hpp"
#include "rionset/ensemble.hpp"
#include "rionset/error.hpp"
#include "rionset/io.hpp"
#include "rionset/onedim.hpp"
#include "rionset/parallel.hpp"

namespace rionset::cli {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// key=value files

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    }
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

KeyValues read_key_values_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  return read_key_values(in);
}

void write_key_values(std::ostream& out, const KeyValues& values) {
  for (const auto& [k, v] : values) out << k << " = " << v << '\n';
}

// ---------------------------------------------------------------------------
// keys and defaults

namespace {

const std::vector<std::string> kModelKeys = {"p",  "r",  "s",   "u0",  "v0",
                                             "b0", "ell", "dt", "tmax"};
const std::vector<std::string> kIoKeys = {"out", "format"};

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const std::map<std::string, std::vector<std::string>, std::less<>>& key_table() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table = {
      {"det-time", concat({kModelKeys, {"param", "grid", "eps"}, kIoKeys})},
      {"onset-prob", concat({kModelKeys,
                             {"param", "grid", "eps-grid", "experiments",
                              "realizations", "seed", "stepper"},
                             kIoKeys})},
      {"indicator", concat({kModelKeys,
                            {"eps-grid", "n", "seed", "stepper", "target", "width-tol"},
                            kIoKeys})},
      {"hist", concat({kModelKeys,
                       {"v0-grid", "eps-grid", "n", "seed", "stepper", "bins"},
                       kIoKeys})},
      {"variance",
       concat({kModelKeys, {"v0-grid", "eps-grid", "n", "seed", "stepper"}, kIoKeys})},
      {"onedim",
       concat({{"ell", "drift", "coef", "x-grid", "eps-grid", "c", "alpha-grid"}, kIoKeys})},
      {"simulate", concat({kModelKeys, {"eps", "seed", "stepper", "stream"}, kIoKeys})},
  };
  return table;
}

std::string default_grid(SweepParameter which) {
  switch (which) {
    case SweepParameter::V0: return "0.005:0.1:20";
    case SweepParameter::S: return "0.05:0.3:11";
    case SweepParameter::R: return "0.1:0.5:9";
    case SweepParameter::P: return "50:400:8";
  }
  return "";
}

std::string default_value(std::string_view sub, std::string_view key) {
  static const std::map<std::string, std::string, std::less<>> common = {
      {"p", "200"},          {"r", "0.25"},        {"s", "0.1"},
      {"u0", "-0.01"},       {"v0", "0.01"},       {"b0", "0.0001"},
      {"ell", "0.1"},        {"dt", "0.001"},      {"tmax", "50"},
      {"eps", "0.01"},       {"n", "1000"},        {"seed", "1"},
      {"stepper", "rk4"},    {"out", "rionset_out"}, {"format", "csv"},
      {"param", "v0"},       {"experiments", "10"}, {"realizations", "100"},
      {"target", "0.8"},     {"width-tol", "0.0001"}, {"bins", "0"},
      {"drift", "linear"},   {"coef", "1"},        {"x-grid", "0.01,0.02,0.05"},
      {"c", "1"},            {"alpha-grid", "0.5,1,2"}, {"stream", "0"},
  };
  if (key == "eps-grid") {
    if (sub == "onset-prob") return "0.001,0.01,0.05,0.1";
    if (sub == "indicator") return "0.002:0.01:5";
    if (sub == "onedim") return "0.1,0.01,0.001";
    return "0.0001,0.001,0.01";
  }
  if (key == "v0-grid") return sub == "hist" ? "0.01,0.02,0.04" : "0.01:0.05:9";
  if (sub == "det-time" && key == "eps") return "0.001";
  const auto it = common.find(key);
  return it == common.end() ? std::string{} : it->second;
}

double parse_number(std::string_view key, const std::string& text) {
  double x = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc{} || ptr != end || !std::isfinite(x)) {
    throw ConfigError("invalid number for --" + std::string(key) + ": '" + text + "'");
  }
  return x;
}

std::uint64_t parse_count(std::string_view key, const std::string& text) {
  std::uint64_t x = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid non-negative integer for --" + std::string(key) + ": '" +
                      text + "'");
  }
  return x;
}

std::vector<double> parse_grid_value(std::string_view key, const std::string& text) {
  try {
    auto g = parse_grid(text);
    if (g.empty()) throw std::invalid_argument("empty grid");
    return g;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("invalid grid for --" + std::string(key) + ": " + e.what());
  }
}

void assign(RunConfig& cfg, const std::string& key, const std::string& v) {
  State& x0 = cfg.scenario.x0;
  if (key == "p") cfg.scenario.params.p = parse_number(key, v);
  else if (key == "r") cfg.scenario.params.r = parse_number(key, v);
  else if (key == "s") cfg.scenario.params.s = parse_number(key, v);
  else if (key == "u0") x0.u = parse_number(key, v);
  else if (key == "v0") x0.v = parse_number(key, v);
  else if (key == "b0") x0.b = parse_number(key, v);
  else if (key == "ell") cfg.scenario.ell = parse_number(key, v);
  else if (key == "dt") cfg.scenario.dt = parse_number(key, v);
  else if (key == "tmax") cfg.scenario.t_max = parse_number(key, v);
  else if (key == "eps") cfg.epsilon = parse_number(key, v);
  else if (key == "n") cfg.n = parse_count(key, v);
  else if (key == "seed") cfg.seed = parse_count(key, v);
  else if (key == "stepper") {
    try {
      cfg.stepper = parse_stepper(v);
    } catch (const std::exception&) {
      throw ConfigError("invalid --stepper '" + v + "' (expected em or rk4)");
    }
  } else if (key == "out") {
    if (v.empty()) throw ConfigError("--out must not be empty");
    cfg.out = v;
  } else if (key == "format") {
    if (v != "csv" && v != "json") throw ConfigError("--format must be csv or json");
    cfg.format = v;
  } else if (key == "param") {
    try {
      cfg.param = parse_sweep_parameter(v);
    } catch (const std::exception&) {
      throw ConfigError("invalid --param '" + v + "' (expected v0, s, r or p)");
    }
  } else if (key == "grid") cfg.grid = parse_grid_value(key, v);
  else if (key == "eps-grid") cfg.eps_grid = parse_grid_value(key, v);
  else if (key == "v0-grid") cfg.v0_grid = parse_grid_value(key, v);
  else if (key == "x-grid") cfg.x_grid = parse_grid_value(key, v);
  else if (key == "alpha-grid") cfg.alpha_grid = parse_grid_value(key, v);
  else if (key == "experiments") cfg.experiments = parse_count(key, v);
  else if (key == "realizations") cfg.realizations = parse_count(key, v);
  else if (key == "target") cfg.target = parse_number(key, v);
  else if (key == "width-tol") cfg.width_tol = parse_number(key, v);
  else if (key == "bins") cfg.bins = parse_count(key, v);
  else if (key == "drift") cfg.drift = v;
  else if (key == "coef") cfg.coef = parse_number(key, v);
  else if (key == "c") cfg.c = parse_number(key, v);
  else if (key == "stream") cfg.stream = parse_count(key, v);
  else throw ConfigError("unknown key '" + key + "'");
}

std::string render(const RunConfig& cfg, const std::string& key) {
  const State& x0 = cfg.scenario.x0;
  const auto num = [](double x) { return format_double(x); };
  if (key == "p") return num(cfg.scenario.params.p);
  if (key == "r") return num(cfg.scenario.params.r);
  if (key == "s") return num(cfg.scenario.params.s);
  if (key == "u0") return num(x0.u);
  if (key == "v0") return num(x0.v);
  if (key == "b0") return num(x0.b);
  if (key == "ell") return num(cfg.scenario.ell);
  if (key == "dt") return num(cfg.scenario.dt);
  if (key == "tmax") return num(cfg.scenario.t_max);
  if (key == "eps") return num(cfg.epsilon);
  if (key == "n") return std::to_string(cfg.n);
  if (key == "seed") return std::to_string(cfg.seed);
  if (key == "stepper") return std::string(to_string(cfg.stepper));
  if (key == "out") return cfg.out.string();
  if (key == "format") return cfg.format;
  if (key == "param") return std::string(to_string(cfg.param));
  if (key == "grid") return format_grid(cfg.grid);
  if (key == "eps-grid") return format_grid(cfg.eps_grid);
  if (key == "v0-grid") return format_grid(cfg.v0_grid);
  if (key == "x-grid") return format_grid(cfg.x_grid);
  if (key == "alpha-grid") return format_grid(cfg.alpha_grid);
  if (key == "experiments") return std::to_string(cfg.experiments);
  if (key == "realizations") return std::to_string(cfg.realizations);
  if (key == "target") return num(cfg.target);
  if (key == "width-tol") return num(cfg.width_tol);
  if (key == "bins") return std::to_string(cfg.bins);
  if (key == "drift") return cfg.drift;
  if (key == "coef") return num(cfg.coef);
  if (key == "c") return num(cfg.c);
  if (key == "stream") return std::to_string(cfg.stream);
  throw ConfigError("unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "det-time", "onset-prob", "indicator", "hist", "variance", "onedim", "simulate"};
  return names;
}

const std::vector<std::string>& keys_for(std::string_view subcommand) {
  const auto& table = key_table();
  const auto it = table.find(subcommand);
  if (it == table.end()) {
    throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
  }
  return it->second;
}

KeyValues RunConfig::manifest() const {
  KeyValues out;
  out["schema_version"] = std::to_string(kSchemaVersion);
  out["subcommand"] = subcommand;
  for (const auto& key : keys_for(subcommand)) out[key] = render(*this, key);
  return out;
}

RunConfig resolve(std::string_view subcommand, const KeyValues& file,
                  const KeyValues& flags) {
  const auto& keys = keys_for(subcommand);
  const auto known = [&keys](const std::string& k) {
    return std::find(keys.begin(), keys.end(), k) != keys.end();
  };
  KeyValues merged;
  for (const auto& [k, v] : file) {
    if (k == "schema_version") {
      if (v != std::to_string(kSchemaVersion)) {
        throw ConfigError("unsupported schema_version " + v);
      }
      continue;
    }
    if (k == "subcommand") {
      if (v != subcommand) {
        throw ConfigError("config file is for '" + v + "', not '" +
                          std::string(subcommand) + "'");
      }
      continue;
    }
    if (!known(k)) {
      throw ConfigError("key '" + k + "' does not apply to " + std::string(subcommand));
    }
    merged[k] = v;
  }
  for (const auto& [k, v] : flags) {
    if (!known(k)) {
      throw ConfigError("key '" + k + "' does not apply to " + std::string(subcommand));
    }
    merged[k] = v;
  }

  RunConfig cfg;
  cfg.subcommand = std::string(subcommand);
  // param first: the default sweep grid depends on it.
  std::vector<std::string> order = keys;
  std::stable_partition(order.begin(), order.end(),
                        [](const std::string& k) { return k == "param"; });
  for (const auto& key : order) {
    const auto it = merged.find(key);
    std::string value;
    if (it != merged.end()) {
      value = it->second;
    } else if (key == "grid") {
      value = default_grid(cfg.param);
    } else {
      value = default_value(subcommand, key);
    }
    assign(cfg, key, value);
  }
  try {
    cfg.scenario.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// tables

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return {};
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        else return v;
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else return v;
      },
      c);
}

Cell opt(const std::optional<double>& x) {
  if (x) return *x;
  return std::monostate{};
}

Cell count(std::size_t n) { return static_cast<long long>(n); }

}  // namespace

void write_table(const fs::path& dir, const Table& table, std::string_view format) {
  const fs::path path = dir / (table.name + "." + std::string(format));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format == "json") {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
      doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// subcommands

namespace {

EnsembleConfig ensemble_config(const RunConfig& cfg) {
  EnsembleConfig e;
  e.n_realizations = cfg.n;
  e.scenario = cfg.scenario;
  e.epsilon = cfg.epsilon;
  e.seed = cfg.seed;
  e.stepper = cfg.stepper;
  return e;
}

std::vector<Table> cmd_det_time(const RunConfig& cfg, std::ostream& log) {
  log << "det-time: " << cfg.grid.size() << " values of " << to_string(cfg.param) << '\n';
  Table onset{"onset_time", {"value", "onset_time", "reached", "asymptotic_v"}, {}};
  for (const auto& row : onset_time_curve(cfg.scenario, cfg.param, cfg.grid)) {
    onset.add({row.value, opt(row.onset.time), count(row.onset.reached() ? 1 : 0),
               row.asymptotic_v});
  }
  Table h{"h_of_t",
          {"sweep_value", "T", "u_T", "sigma22_T", "H", "variance_at_eps"},
          {}};
  for (double value : cfg.grid) {
    try {
      const auto g = onset_variance(with_parameter(cfg.scenario, cfg.param, value), cfg.epsilon);
      h.add({value, g.mean, g.u_at_onset, g.sigma22, g.h(), g.variance});
    } catch (const NoAsymptoticsError&) {
      h.add({value, {}, {}, {}, {}, {}});
    }
  }
  return {onset, h};
}

std::vector<Table> cmd_onset_prob(const RunConfig& cfg, std::ostream& log) {
  const ProbabilityProtocol protocol{cfg.experiments, cfg.realizations};
  Table curve{"onset_prob",
              {"sweep_value", "epsilon", "p_hat", "ci_low", "ci_high", "n_onset", "tau_mean",
               "tau_var", "experiment_mean", "experiment_ci_low", "experiment_ci_high"},
              {}};
  Table batches{"onset_prob_experiments", {"sweep_value", "epsilon", "experiment", "p_hat"}, {}};
  EnsembleConfig base = ensemble_config(cfg);
  for (double eps : cfg.eps_grid) {
    log << "onset-prob: eps=" << format_double(eps) << ", " << cfg.grid.size() << " values of "
        << to_string(cfg.param) << '\n';
    base.epsilon = eps;
    for (const auto& pt : onset_probability_curve(base, cfg.param, cfg.grid, protocol)) {
      const auto& s = pt.pooled;
      curve.add({pt.value, eps, s.p_hat, s.ci.low, s.ci.high, count(s.n_onset),
                 opt(s.tau_mean), opt(s.tau_var), pt.experiment_mean, pt.experiment_ci.low,
                 pt.experiment_ci.high});
      for (std::size_t i = 0; i < pt.experiment_p.size(); ++i) {
        batches.add({pt.value, eps, count(i), pt.experiment_p[i]});
      }
    }
  }
  return {curve, batches};
}

std::vector<Table> cmd_indicator(const RunConfig& cfg, std::ostream& log) {
  Table t{"indicator",
          {"epsilon", "v0", "p_hat", "ci_low", "ci_high", "iterations", "evaluations",
           "target"},
          {}};
  EnsembleConfig base = ensemble_config(cfg);
  IndicatorOptions options;
  options.target = cfg.target;
  options.width_tol = cfg.width_tol;
  for (double eps : cfg.eps_grid) {
    base.epsilon = eps;
    const auto r = onset_indicator(base, options);
    log << "indicator: eps=" << format_double(eps) << " v0="
        << (r.v0 ? format_double(*r.v0) : std::string("none")) << '\n';
    t.add({eps, opt(r.v0), r.p_hat, r.ci.low, r.ci.high, count(r.iterations),
           count(r.evaluations), cfg.target});
  }
  return {t};
}

std::vector<Table> cmd_hist(const RunConfig& cfg, std::ostream& log) {
  std::vector<Table> tables;
  Table summary{"hist_summary",
                {"panel", "v0", "epsilon", "n_realizations", "n_onset", "n_extinct",
                 "n_censored", "n_blowup", "P", "ci_low", "ci_high", "T", "tau_mean",
                 "tau_var", "gaussian_mean", "gaussian_variance"},
                {}};
  const std::optional<std::size_t> bins =
      cfg.bins > 0 ? std::optional<std::size_t>(cfg.bins) : std::nullopt;
  std::size_t panel = 0;
  for (double v0 : cfg.v0_grid) {
    RunConfig c = cfg;
    c.scenario.x0.v = v0;
    const Trajectory traj =
        integrate_ode(c.scenario.params, c.scenario.x0, c.scenario.dt, c.scenario.t_max);
    const DetOnset det = deterministic_onset_time(traj, c.scenario.ell);
    for (double eps : cfg.eps_grid) {
      c.epsilon = eps;
      log << "hist: panel " << panel << " v0=" << format_double(v0)
          << " eps=" << format_double(eps) << '\n';
      const EnsembleStats s = run_ensemble(ensemble_config(c), bins);
      std::optional<OnsetGaussian> g;
      try {
        g = onset_variance(c.scenario, eps);
      } catch (const NoAsymptoticsError&) {
      }
      char name[32];
      std::snprintf(name, sizeof name, "hist_%03zu", panel);
      Table h{name, {"bin_left", "bin_right", "count", "gaussian_count"}, {}};
      for (std::size_t i = 0; i < s.histogram.counts.size(); ++i) {
        const double lo = s.histogram.edges[i];
        const double hi = s.histogram.edges[i + 1];
        Cell expected;
        if (g && g->variance > 0.0) {
          expected = static_cast<double>(s.n_onset) *
                     (gaussian_onset_cdf(*g, hi) - gaussian_onset_cdf(*g, lo));
        }
        h.add({lo, hi, count(s.histogram.counts[i]), expected});
      }
      tables.push_back(std::move(h));
      summary.add({count(panel), v0, eps, count(s.n_realizations), count(s.n_onset),
                   count(s.n_extinct), count(s.n_censored), count(s.n_blowup), s.p_hat,
                   s.ci.low, s.ci.high, opt(det.time), opt(s.tau_mean), opt(s.tau_var),
                   g ? Cell(g->mean) : Cell{}, g ? Cell(g->variance) : Cell{}});
      ++panel;
    }
  }
  tables.insert(tables.begin(), std::move(summary));
  return tables;
}

std::vector<Table> cmd_variance(const RunConfig& cfg, std::ostream& log) {
  log << "variance: " << cfg.v0_grid.size() << " x " << cfg.eps_grid.size() << " ensembles\n";
  Table t{"variance",
          {"v0", "epsilon", "n_onset", "mc_variance", "theory_variance", "onset_time", "h"},
          {}};
  for (const auto& row :
       conditional_variance_curve(ensemble_config(cfg), cfg.v0_grid, cfg.eps_grid)) {
    const auto& th = row.theory;
    t.add({row.v0, row.epsilon, count(row.monte_carlo.n_onset), opt(row.monte_carlo.tau_var),
           th ? Cell(th->variance) : Cell{}, th ? Cell(th->mean) : Cell{},
           th ? Cell(th->h()) : Cell{}});
  }
  return {t};
}

std::vector<Table> cmd_onedim(const RunConfig& cfg, std::ostream& log) {
  const DriftFn1D drift = make_drift(cfg.drift, cfg.coef);
  const double ell = cfg.scenario.ell;
  log << "onedim: drift " << cfg.drift << " coef=" << format_double(cfg.coef) << '\n';
  Table table{"onedim_table",
              {"epsilon", "x", "hit_prob", "cond_exp_hit_time", "psi", "psi_gap",
               "deterministic_time"},
              {}};
  Table conv{"onedim_convergence", {"epsilon", "x", "hit_prob", "limit", "abs_error"}, {}};
  std::optional<double> limit;
  if (drift.F_prime_at_0 && *drift.F_prime_at_0 > 0.0) {
    limit = asymptotic_hit_prob(drift, cfg.c, 1.0);
  }
  for (double eps : cfg.eps_grid) {
    const HittingKernel kernel(drift, eps, ell);
    const double psi = kernel.psi();
    for (double x : cfg.x_grid) {
      const double det = deterministic_hit_time_1d(drift, ell, x);
      table.add({eps, x, kernel.hit_prob(x), kernel.cond_exp_hit_time(x), psi,
                 kernel.psi_gap(x), std::isfinite(det) ? Cell(det) : Cell{}});
    }
    const double x = cfg.c * eps;
    if (x > 0.0 && x <= ell) {
      const double p = kernel.hit_prob(x);
      conv.add({eps, x, p, opt(limit), limit ? Cell(std::abs(p - *limit)) : Cell{}});
    } else {
      conv.add({eps, x, {}, opt(limit), {}});
    }
  }
  Table erf{"erf_regimes", {"alpha", "epsilon", "value", "regime", "leading_term"}, {}};
  for (double alpha : cfg.alpha_grid) {
    for (double eps : cfg.eps_grid) {
      const auto a = erf_asymptotics(cfg.c, alpha, eps);
      erf.add({alpha, eps, a.value, to_string(a.regime), a.leading_term});
    }
  }
  return {table, conv, erf};
}

std::vector<Table> cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  std::vector<PathPoint> path;
  const NoiseConfig noise{cfg.epsilon, cfg.seed, cfg.stream};
  const Scenario& sc = cfg.scenario;
  const HittingOutcome hit =
      run_to_hit(sc.params, sc.x0, sc.ell, sc.dt, sc.t_max, noise, cfg.stepper, &path);
  log << "simulate: " << to_string(hit.kind) << " at t=" << format_double(hit.time) << '\n';
  Table p{"path", {"t", "u", "v", "b"}, {}};
  for (const auto& pt : path) p.add({pt.t, pt.x.u, pt.x.v, pt.x.b});
  Table o{"outcome", {"outcome", "time", "u", "v", "b"}, {}};
  o.add({std::string(to_string(hit.kind)), hit.time, hit.final_state.u, hit.final_state.v,
         hit.final_state.b});
  return {p, o};
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& log) {
  using Handler = std::function<std::vector<Table>(const RunConfig&, std::ostream&)>;
  static const std::map<std::string, Handler, std::less<>> handlers = {
      {"det-time", cmd_det_time}, {"onset-prob", cmd_onset_prob},
      {"indicator", cmd_indicator}, {"hist", cmd_hist},
      {"variance", cmd_variance}, {"onedim", cmd_onedim},
      {"simulate", cmd_simulate},
  };
  const auto it = handlers.find(cfg.subcommand);
  if (it == handlers.end()) throw ConfigError("unknown subcommand '" + cfg.subcommand + "'");
  const auto tables = it->second(cfg, log);
  fs::create_directories(cfg.out);
  for (const auto& t : tables) write_table(cfg.out, t, cfg.format);
  {
    std::ofstream m(cfg.out / kManifestName, std::ios::binary);
    write_key_values(m, cfg.manifest());
    if (!m) throw std::runtime_error("cannot write manifest in " + cfg.out.string());
  }
  log << "wrote " << tables.size() << " " << cfg.format << " file(s) and " << kManifestName
      << " to " << cfg.out.string() << '\n';
}

// ---------------------------------------------------------------------------
// entry point

namespace {

const std::map<std::string, std::string, std::less<>>& descriptions() {
  static const std::map<std::string, std::string, std::less<>> d = {
      {"det-time", "deterministic onset time and H(T) along a parameter sweep"},
      {"onset-prob", "onset probability curves (replicated experiments)"},
      {"indicator", "smallest v0 with onset probability >= target, per epsilon"},
      {"hist", "conditional onset-time histograms with Gaussian overlay"},
      {"variance", "Monte-Carlo vs small-noise onset-time variance"},
      {"onedim", "exact 1-D hitting tables for a named drift"},
      {"simulate", "single stochastic path dump"},
  };
  return d;
}

std::string flag_help(const std::string& key) {
  static const std::map<std::string, std::string, std::less<>> h = {
      {"p", "aspect ratio"},
      {"r", "Newtonian cooling"},
      {"s", "static stability"},
      {"u0", "initial radial wind"},
      {"v0", "initial tangential wind"},
      {"b0", "initial warm-core anomaly"},
      {"ell", "onset level"},
      {"dt", "time step"},
      {"tmax", "time horizon"},
      {"eps", "noise amplitude"},
      {"n", "realizations per ensemble"},
      {"seed", "master seed"},
      {"stepper", "rk4 or em"},
      {"out", "output directory"},
      {"format", "csv or json"},
      {"param", "swept parameter: v0, s, r or p"},
      {"grid", "sweep grid, lo:hi:n or a comma list"},
      {"eps-grid", "epsilon grid"},
      {"v0-grid", "v0 grid"},
      {"x-grid", "starting points in (0, ell]"},
      {"alpha-grid", "exponents for erf regimes"},
      {"experiments", "experiments per point"},
      {"realizations", "realizations per experiment"},
      {"target", "target onset probability"},
      {"width-tol", "bisection bracket width"},
      {"bins", "histogram bins (0: Freedman-Diaconis)"},
      {"drift", "zero, linear or logistic"},
      {"coef", "drift coefficient"},
      {"c", "starting point x = c * eps"},
      {"stream", "noise stream index"},
  };
  const auto it = h.find(key);
  return it == h.end() ? std::string{} : it->second;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-hitting-time analysis of the stochastic MSD vortex model", "rionset"};
  app.require_subcommand(1);
  app.footer(std::string("Worker threads: $") + kWorkersEnv + " (default: all cores).");

  std::map<std::string, KeyValues> flag_values;
  std::map<std::string, std::string> config_paths;
  for (const auto& name : subcommands()) {
    CLI::App* sc = app.add_subcommand(name, descriptions().at(name));
    auto& values = flag_values[name];
    for (const auto& key : keys_for(name)) {
      sc->add_option("--" + key, values[key], flag_help(key));
    }
    sc->add_option("--config", config_paths[name], "key=value config file");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    CLI::App* sc = app.get_subcommands().front();
    const std::string name = sc->get_name();
    KeyValues flags;
    for (const auto& key : keys_for(name)) {
      if (sc->get_option("--" + key)->count() > 0) flags[key] = flag_values[name][key];
    }
    KeyValues file;
    if (!config_paths[name].empty()) file = read_key_values_file(config_paths[name]);
    const RunConfig cfg = resolve(name, file, flags);
    execute(cfg, out);
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ContractError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BlowupError& e) {
    err << "numeric blowup: " << e.what() << '\n';
    return kBlowup;
  } catch (const QuadratureError& e) {
    err << "quadrature failure: " << e.what() << '\n';
    return kQuadratureFailure;
  } catch (const NoAsymptoticsError& e) {
    err << "no asymptotics: " << e.what() << '\n';
    return kNoAsymptotics;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace rionset::cli
