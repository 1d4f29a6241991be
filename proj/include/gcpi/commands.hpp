#pragma once
// Batch driver: configures models, runs the verification suites and
// parameter sweeps, and emits machine-readable results.
//
// Exit-status contract: 0 = all checks passed, 1 = a check failed,
// 2 = configuration or I/O error.

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcpi/models.hpp"

namespace gcpi {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2 };

struct RunConfig {
  std::string model = "spin"; // spin | jc | both (command dependent)
  double omega = 1.0;
  double omega0 = 1.0;
  double lambda = 0.5;
  std::optional<Cplx> b_const;                  // RE,IM
  std::optional<std::array<double, 3>> b_sin;   // amplitude, angular freq, phase
  double t_total = 3.0;
  std::optional<int> steps;
  std::optional<int> m_max;
  int n_max = 40;
  double dt = 1e-3;
  std::vector<std::string> modes = {"all"};
  Cplx z_i{};
  std::string out; // empty: CSV/report to stdout, no JSON summary
};

// Flat key = value text with # comments; keys are the long CLI flag names.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one key = value setting; throws ConfigError on unknown keys or
// malformed values.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

// Model builders shared by the commands.
SpinFieldModel spin_model_from(const RunConfig& config);
JaynesCummingsModel jc_model_from(const RunConfig& config);

// Commands. Human-readable report lines go to `report`; CSV (where the
// command produces one) goes to config.out or stdout; a JSON summary is
// written to config.out + ".summary.json" when config.out is set (report
// commands write their text to config.out instead of stdout).
int cmd_verify_compose(const RunConfig& config, std::ostream& report);
int cmd_spin(const RunConfig& config, std::ostream& report);
int cmd_jc(const RunConfig& config, std::ostream& report);
int cmd_stationary(const RunConfig& config, std::ostream& report);
int cmd_convergence(const RunConfig& config, std::ostream& report);

} // namespace gcpi
