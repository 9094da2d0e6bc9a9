#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "cli.hpp"
#include "mirrorvis/errors.hpp"
#include "mirrorvis/io.hpp"
#include "mirrorvis/visibility.hpp"

namespace mirrorvis::cli {
namespace {

using nlohmann::json;

const char* route_name(RouteChoice r) {
  switch (r) {
    case RouteChoice::ode:
      return "ode";
    case RouteChoice::closed:
      return "closed";
    case RouteChoice::quadrature:
      return "quadrature";
    case RouteChoice::all:
      return "all";
  }
  return "all";
}

const char* fault_name(RhsFault f) {
  return f == RhsFault::flip_c5_coupling_sign ? "c5-sign" : "none";
}

DimensionlessParams require_params(const RunConfig& cfg) {
  if (!cfg.params) throw ConfigError("--config", cfg.command + " needs --config <path>");
  return resolve(*cfg.params);
}

json optional_number(const std::optional<double>& v) {
  return v ? rounded(*v) : json(nullptr);
}

}  // namespace

json rounded(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(fmt::format("{:.11e}", x));
}

std::string echo_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["params"] = cfg.params ? json::parse(canonical_json(*cfg.params)) : json(nullptr);
  if (cfg.command == "visibility") {
    const auto& v = cfg.visibility;
    j["options"] = {{"periods", v.periods},
                    {"steps_per_period", v.steps_per_period},
                    {"route", route_name(v.route)},
                    {"quad_order", v.quad_order}};
  } else if (cfg.command == "scan") {
    const auto& s = cfg.scan;
    j["options"] = {{"t_min", s.t_min},
                    {"t_max", s.t_max},
                    {"t_points", s.t_points},
                    {"gamma_min", s.gamma_min},
                    {"gamma_max", s.gamma_max},
                    {"gamma_points", s.gamma_points},
                    {"kappa", s.kappa ? json(*s.kappa) : json(nullptr)},
                    {"lambda_qq", s.lambda_qq ? json(*s.lambda_qq) : json(nullptr)},
                    {"lambda_nonenv", s.lambda_nonenv ? json(*s.lambda_nonenv) : json(nullptr)},
                    {"csl_line", s.csl_line}};
  } else if (cfg.command == "validate") {
    const auto& v = cfg.validate;
    j["options"] = {{"tolerance", v.tolerance ? json(*v.tolerance) : json(nullptr)},
                    {"inject_fault", fault_name(v.fault)}};
  }
  // Worker count is deliberately absent: it never changes the output.
  return j.dump();
}

json cmd_params(const RunConfig& cfg) {
  const DimensionlessParams d = require_params(cfg);
  const Classicality cl = classicality_diagnostics(d);
  json j;
  j["sigma"] = optional_number(d.sigma);
  j["kappa"] = rounded(d.kappa);
  j["Lambda_T"] = rounded(d.Lambda_T);
  j["Lambda"] = rounded(d.Lambda);
  j["chi"] = rounded(d.chi);
  j["inv_Q"] = rounded(d.inv_Q);
  j["n_bar"] = rounded(d.n_bar);
  j["omega_tilde"] = optional_number(d.omega_tilde);
  j["extinction"] = rounded(cl.extinction);
  j["narrowing"] = rounded(cl.narrowing);
  j["config"] = json::parse(echo_json(cfg));
  return j;
}

json cmd_revival(const RunConfig& cfg) {
  const DimensionlessParams d = require_params(cfg);
  const FirstRevival r = first_revival(d);
  json j;
  j["t1_s"] = rounded(r.t1_seconds);
  j["nu"] = rounded(r.nu);
  j["neg_log_nu"] = rounded(r.neg_log_nu);
  j["config"] = json::parse(echo_json(cfg));
  return j;
}

void cmd_visibility(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DimensionlessParams d = require_params(cfg);
  const auto& v = cfg.visibility;
  if (!(v.periods >= 0.0) || !std::isfinite(v.periods)) {
    throw ConfigError("--periods", "--periods must be >= 0");
  }
  if (v.steps_per_period < 100) {
    throw ConfigError("--steps-per-period", "--steps-per-period must be >= 100");
  }
  if (v.quad_order < 20) throw ConfigError("--quad-order", "--quad-order must be >= 20");

  bool want_ode = v.route == RouteChoice::ode || v.route == RouteChoice::all;
  bool want_quad = v.route == RouteChoice::quadrature || v.route == RouteChoice::all;
  bool want_closed = v.route == RouteChoice::closed || v.route == RouteChoice::all;

  // Route/parameter incompatibilities are reported before any integration.
  if (want_quad && d.n_bar == 0.0) {
    if (v.route == RouteChoice::quadrature) {
      throw ConfigError("n_bar", "route quadrature needs n_bar > 0 (thermal P function)");
    }
    err << "warning: n_bar = 0, quadrature route skipped\n";
    want_quad = false;
  }
  if (want_closed && !d.underdamped()) {
    if (v.route == RouteChoice::closed) {
      throw ConfigError("inv_Q", "route closed needs inv_Q < 2 (underdamped)");
    }
    err << "warning: overdamped, closed-form route skipped\n";
    want_closed = false;
  }

  const double tau_max = 2.0 * std::numbers::pi * v.periods;
  const TimeGrid grid{tau_max, v.steps_per_period};
  IntegratorOptions opts;
  opts.steps_per_period = v.steps_per_period;

  std::vector<VisibilitySeries> series;
  const bool integrate = (want_ode || want_quad) && d.kappa > 0.0 && grid.intervals() > 0;
  C6Probes probes;
  if (integrate) probes = probe_c6(d, tau_max, opts);

  if (want_ode) {
    series.push_back(integrate ? visibility_thermal(d, probes) : visibility_thermal(d, tau_max, opts));
  }
  if (want_closed) {
    std::vector<double> t_s;
    for (double tau : grid.taus()) t_s.push_back(tau / d.omega_m);
    series.push_back(visibility_closed_form(d, t_s));
    if (series.back().outside_high_q) {
      err << "warning: inv_Q > 0.1, closed form is outside its high-Q validity\n";
    }
  }
  if (want_quad) {
    series.push_back(integrate ? visibility_quadrature(d, probes, v.quad_order)
                               : visibility_quadrature(d, tau_max, v.quad_order, opts));
  }
  write_visibility_csv(out, series, {echo_json(cfg), {}});
}

ScanResult cmd_scan(const RunConfig& cfg) {
  const auto& s = cfg.scan;
  PhysicalParams base = reference_setup();
  std::optional<double> file_kappa;
  if (cfg.params) {
    if (cfg.params->mode != InputMode::physical) {
      throw ConfigError("mode", "scan needs a physical-mode config (or none)");
    }
    base = cfg.params->physical;
    // Validates M, L, omega_c and yields the file's kappa.
    PhysicalParams probe = base;
    probe.lambda_qq = 0.0;
    file_kappa = derive_dimensionless(probe).kappa;
  }
  if (s.t_points == 0 || s.gamma_points == 0) throw ConfigError("--t-points", "axes need >= 1 point");

  const double kappa = s.kappa.value_or(file_kappa.value_or(1.0));
  const double lambda_qq = s.lambda_qq.value_or(cfg.params ? base.lambda_qq : 1.0);
  base.Lambda_nonenv = s.lambda_nonenv.value_or(cfg.params ? base.Lambda_nonenv : 0.0);
  if (!(kappa >= 0.0)) throw ConfigError("--kappa", "--kappa must be >= 0");
  if (!(lambda_qq == 0.0 || lambda_qq >= 1.0)) {
    throw ConfigError("--lambda-qq", "--lambda-qq must be 0 or >= 1");
  }
  if (!(base.Lambda_nonenv >= 0.0)) {
    throw ConfigError("--lambda-nonenv", "--lambda-nonenv must be >= 0");
  }
  if (!(s.t_min > 0.0 && s.t_max >= s.t_min)) throw ConfigError("--t-min", "need 0 < t-min <= t-max");
  if (!(s.gamma_min > 0.0 && s.gamma_max >= s.gamma_min)) {
    throw ConfigError("--gamma-min", "need 0 < gamma-min <= gamma-max");
  }
  if (!(s.csl_line > 0.0)) throw ConfigError("--csl-line", "--csl-line must be > 0");

  ScanResult r;
  r.lambda_qq = lambda_qq;
  r.grid = run_scan(base, log_axis(s.t_min, s.t_max, s.t_points),
                    log_axis(s.gamma_min, s.gamma_max, s.gamma_points), kappa, lambda_qq,
                    cfg.workers);
  r.csl_curve = csl_threshold_curve(r.grid, s.csl_line);
  if (lambda_qq >= 1.0) r.optimal_T = optimal_temperature(base.omega_m, lambda_qq);
  return r;
}

void write_scan_outputs(const RunConfig& cfg, const ScanResult& r, std::ostream& grid_out,
                        std::ostream& curve_out) {
  const std::string echo = echo_json(cfg);
  write_scan_csv(grid_out, r.grid,
                 {echo,
                  {fmt::format(" nu_t1 = exp(-pi kappa^2 (12 Lambda + chi)) at t1 = 2 pi / "
                               "omega_tilde (friction-free first revival; thermal revival factor "
                               "omitted); kappa = {}, lambda_qq = {}, Lambda_nonenv = {}",
                               format_number(r.grid.kappa), format_number(r.grid.lambda_qq),
                               format_number(r.grid.Lambda_nonenv))}});
  write_curve_csv(curve_out, r.csl_curve,
                  {echo, {fmt::format(" Lambda_T(T, gamma) = {}", format_number(cfg.scan.csl_line))}});
}

}  // namespace mirrorvis::cli
