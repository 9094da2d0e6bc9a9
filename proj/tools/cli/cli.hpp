#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mirrorvis/config.hpp"
#include "mirrorvis/propagator.hpp"
#include "mirrorvis/scan.hpp"

namespace mirrorvis::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitNumericalError = 3,
  kExitValidationFailure = 4,
};

enum class RouteChoice { ode, closed, quadrature, all };

struct VisibilityOptions {
  double periods = 3.0;
  int steps_per_period = 2000;
  RouteChoice route = RouteChoice::all;
  int quad_order = 40;
};

struct ScanOptions {
  double t_min = 1e-10;
  double t_max = 1e-2;
  std::size_t t_points = 200;
  double gamma_min = 1e-8;
  double gamma_max = 1e-1;
  std::size_t gamma_points = 200;
  // Unset means: take the config file value, else the default.
  std::optional<double> kappa;
  std::optional<double> lambda_qq;
  std::optional<double> lambda_nonenv;
  double csl_line = kLambdaCsl;
  std::string csl_out;  // defaults to <out stem>_csl.csv
};

struct ValidateOptions {
  std::optional<double> tolerance;  // overrides the stationarity tolerance
  RhsFault fault = RhsFault::none;
};

struct RunConfig {
  std::string command;
  std::string config_path;
  std::optional<ParamsConfig> params;
  std::string out;
  unsigned workers = 0;
  VisibilityOptions visibility;
  ScanOptions scan;
  ValidateOptions validate;
};

/// Canonical JSON of everything that determines a command's output.
std::string echo_json(const RunConfig& cfg);

/// JSON number rounded to 12 significant digits.
nlohmann::json rounded(double x);

nlohmann::json cmd_params(const RunConfig& cfg);
nlohmann::json cmd_revival(const RunConfig& cfg);
/// Writes the visibility CSV; warnings (e.g. dropped routes) go to `err`.
void cmd_visibility(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct ScanResult {
  ScanGrid grid;
  std::vector<CurvePoint> csl_curve;
  std::optional<double> optimal_T;
  double lambda_qq = 0.0;
};

ScanResult cmd_scan(const RunConfig& cfg);
void write_scan_outputs(const RunConfig& cfg, const ScanResult& r, std::ostream& grid_out,
                        std::ostream& curve_out);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  std::string tolerance;  // human-readable acceptance rule
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

ValidationReport cmd_validate(const RunConfig& cfg);
void print_report(const ValidationReport& report, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mirrorvis::cli
