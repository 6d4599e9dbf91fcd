#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rionset/integrator.hpp"
#include "rionset/sde.hpp"

namespace rionset::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kBlowup = 3,
  kQuadratureFailure = 4,
  kNoAsymptotics = 5,
};

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kManifestName = "run.manifest";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string, std::less<>>;

// Flat "key = value" text; '#' starts a comment line.
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values_file(const std::filesystem::path& path);
void write_key_values(std::ostream& out, const KeyValues& values);

const std::vector<std::string>& subcommands();
// Keys accepted by a subcommand (flag names without the leading dashes).
const std::vector<std::string>& keys_for(std::string_view subcommand);

struct RunConfig {
  std::string subcommand;
  Scenario scenario;
  double epsilon = 1e-2;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  StepperKind stepper = StepperKind::Rk4PlusNoise;
  std::filesystem::path out = "rionset_out";
  std::string format = "csv";

  SweepParameter param = SweepParameter::V0;
  std::vector<double> grid;
  std::vector<double> eps_grid;
  std::vector<double> v0_grid;
  std::size_t experiments = 10;
  std::size_t realizations = 100;
  double target = 0.8;
  double width_tol = 1e-4;
  std::size_t bins = 0;  // 0: Freedman-Diaconis

  std::string drift = "linear";
  double coef = 1.0;
  std::vector<double> x_grid;
  double c = 1.0;
  std::vector<double> alpha_grid;

  std::uint64_t stream = 0;

  // Fully resolved key=value echo (subcommand keys only) plus
  // schema_version and subcommand.
  KeyValues manifest() const;
};

// defaults < file < flags. Unknown keys, a foreign subcommand or schema
// version in `file`, and unparsable values raise ConfigError.
RunConfig resolve(std::string_view subcommand, const KeyValues& file,
                  const KeyValues& flags);

// One output file: CSV or a JSON array of row objects.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

void write_table(const std::filesystem::path& dir, const Table& table,
                 std::string_view format);

// Runs the subcommand, writes its tables plus the manifest into cfg.out and
// prints progress and a summary to `log`.
void execute(const RunConfig& cfg, std::ostream& log);

// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rionset::cli
