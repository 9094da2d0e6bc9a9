#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli.hpp"
#include "mirrorvis/errors.hpp"
#include "mirrorvis/io.hpp"

namespace mirrorvis::cli {
namespace {

// Opens --out, or hands back `fallback` when no path (or "-") was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("--out", "cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  const auto stem = p.stem().string();
  return (p.parent_path() / (stem + suffix + p.extension().string())).string();
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--config", cfg.config_path, "JSON parameter file");
  sub->add_option("--out", cfg.out, "output path (default: stdout)");
  sub->add_option("--workers", cfg.workers, "worker threads (default: available parallelism)");
}

int dispatch(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.config_path.empty()) cfg.params = load_params_config(cfg.config_path);

  if (cfg.command == "params") {
    Sink sink(cfg.out, out);
    sink.get() << cmd_params(cfg).dump(2) << '\n';
  } else if (cfg.command == "revival") {
    Sink sink(cfg.out, out);
    sink.get() << cmd_revival(cfg).dump(2) << '\n';
  } else if (cfg.command == "visibility") {
    Sink sink(cfg.out, out);
    cmd_visibility(cfg, sink.get(), err);
  } else if (cfg.command == "scan") {
    const ScanResult r = cmd_scan(cfg);
    const std::string grid_path = cfg.out.empty() ? "scan.csv" : cfg.out;
    const std::string curve_path =
        cfg.scan.csl_out.empty() ? sibling_path(grid_path, "_csl") : cfg.scan.csl_out;
    Sink grid(grid_path, out);
    Sink curve(curve_path, out);
    write_scan_outputs(cfg, r, grid.get(), curve.get());
    for (const auto& c : r.grid.cells) {
      if (c.error) {
        err << fmt::format("warning: cell T = {} K, gamma = {} 1/s failed: {}\n",
                           format_number(c.T), format_number(c.gamma), *c.error);
      }
    }
    err << fmt::format("wrote {} ({} cells, {} failed) and {}\n", grid_path, r.grid.cells.size(),
                       r.grid.failed_cells(), curve_path);
    if (r.optimal_T) out << fmt::format("T* = {} K\n", format_number(*r.optimal_T));
  } else if (cfg.command == "validate") {
    const ValidationReport report = cmd_validate(cfg);
    Sink sink(cfg.out, out);
    print_report(report, sink.get());
    if (!report.passed()) return kExitValidationFailure;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon / vibrating-mirror interferometric visibility under decoherence"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* params = app.add_subcommand("params", "derive the dimensionless parameter set");
  add_common(params, cfg);

  auto* revival = app.add_subcommand("revival", "first-revival visibility as JSON");
  add_common(revival, cfg);

  auto* vis = app.add_subcommand("visibility", "visibility time series as CSV");
  add_common(vis, cfg);
  vis->add_option("--periods", cfg.visibility.periods, "time span in mechanical periods");
  vis->add_option("--steps-per-period", cfg.visibility.steps_per_period, "RK4 steps per period");
  const std::map<std::string, RouteChoice> routes = {{"ode", RouteChoice::ode},
                                                     {"closed", RouteChoice::closed},
                                                     {"quadrature", RouteChoice::quadrature},
                                                     {"all", RouteChoice::all}};
  vis->add_option("--route", cfg.visibility.route, "ode | closed | quadrature | all")
      ->transform(CLI::CheckedTransformer(routes, CLI::ignore_case));
  vis->add_option("--quad-order", cfg.visibility.quad_order, "Gauss-Hermite order");

  auto* scan = app.add_subcommand("scan", "first-revival visibility over a (T, gamma) grid");
  add_common(scan, cfg);
  auto& s = cfg.scan;
  scan->add_option("--t-min", s.t_min, "lowest temperature, K");
  scan->add_option("--t-max", s.t_max, "highest temperature, K");
  scan->add_option("--t-points", s.t_points, "temperature points (log-spaced)");
  scan->add_option("--gamma-min", s.gamma_min, "lowest friction rate, 1/s");
  scan->add_option("--gamma-max", s.gamma_max, "highest friction rate, 1/s");
  scan->add_option("--gamma-points", s.gamma_points, "friction points (log-spaced)");
  scan->add_option("--kappa", s.kappa, "coupling (default: config value, else 1)");
  scan->add_option("--lambda-qq", s.lambda_qq, "coordinate-diffusion multiplier (default 1)");
  scan->add_option("--lambda-nonenv", s.lambda_nonenv, "non-environmental Lambda (default 0)");
  scan->add_option("--csl-line", s.csl_line, "Lambda of the threshold curve");
  scan->add_option("--csl-out", s.csl_out, "threshold curve path (default <out>_csl.csv)");

  auto* validate = app.add_subcommand("validate", "run the built-in invariant checks");
  add_common(validate, cfg);
  validate->add_option("--tolerance", cfg.validate.tolerance, "stationarity tolerance override");
  const std::map<std::string, RhsFault> faults = {{"none", RhsFault::none},
                                                  {"c5-sign", RhsFault::flip_c5_coupling_sign}};
  validate->add_option("--inject-fault", cfg.validate.fault,
                       "test hook: corrupt the coefficient equations (c5-sign)")
      ->transform(CLI::CheckedTransformer(faults, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error";
    if (!e.key().empty()) err << " [" << e.key() << "]";
    err << ": " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  }
}

}  // namespace mirrorvis::cli
