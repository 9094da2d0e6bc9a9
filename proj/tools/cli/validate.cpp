#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "cli.hpp"
#include "mirrorvis/visibility.hpp"

namespace mirrorvis::cli {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Check = std::function<CheckResult(const ValidateOptions&)>;

IntegratorOptions integrator(const ValidateOptions& o, int steps = 2000, bool estimate = false) {
  IntegratorOptions opts;
  opts.steps_per_period = steps;
  opts.estimate_error = estimate;
  opts.fault = o.fault;
  return opts;
}

DimensionlessParams mixed_params() { return make_dimensionless(1.0, 0.1, 0.05, 1e-3, 5.0); }

CheckResult stationarity(const ValidateOptions& o) {
  const double tol = o.tolerance.value_or(1e-10);
  const auto d = make_dimensionless(0.0, 0.0, 0.0, 0.0, 0.0);
  const auto traj = propagate(d, {0.0, 0.0}, 3 * kTwoPi, integrator(o, 2000, true));
  const Coeffs start = initial_coeffs({0.0, 0.0});
  double drift = 0.0;
  for (const auto& s : traj.states) {
    for (std::size_t j = 0; j < 6; ++j) drift = std::max(drift, std::abs(s[j] - start[j]));
  }
  const double measured = std::max(drift, traj.halving_error);
  return {"ground-state stationarity (drift and step-halving estimate)", measured,
          fmt::format("<= {:.1e}", tol), measured <= tol,
          fmt::format("drift {:.3e}, halving {:.3e}", drift, traj.halving_error)};
}

CheckResult integrator_order(const ValidateOptions& o) {
  const auto d = mixed_params();
  const Complex a0{0.5, 0.2};
  const double coarse = propagate(d, a0, kTwoPi, integrator(o, 200, true)).halving_error;
  const double fine = propagate(d, a0, kTwoPi, integrator(o, 400, true)).halving_error;
  const double ratio = coarse / fine;
  return {"RK4 step-halving error ratio (h^4)", ratio, "in [12, 20]", ratio >= 12.0 && ratio <= 20.0,
          fmt::format("estimate {:.3e} at 200 steps/period, {:.3e} at 400", coarse, fine)};
}

CheckResult f_realness(const ValidateOptions& o) {
  const auto d = mixed_params();
  const auto p = probe_c6(d, 3 * kTwoPi, integrator(o));
  double residue = 0.0;
  for (std::size_t i = 0; i < p.taus.size(); ++i) {
    // Im f2 = Re(c6(1) - c6(0)) / kappa, Im f3 = -Re(c6(i) - c6(0)) / kappa.
    residue = std::max({residue, std::abs((p.one[i] - p.zero[i]).real()) / d.kappa,
                        std::abs((p.imag[i] - p.zero[i]).real()) / d.kappa});
  }
  return {"f2, f3 realness", residue, fmt::format("<= {:.0e}", kRealnessTolerance),
          residue <= kRealnessTolerance, ""};
}

CheckResult affinity(const ValidateOptions& o) {
  const auto d = mixed_params();
  const double tau_max = 3 * kTwoPi;
  const auto p = probe_c6(d, tau_max, integrator(o));
  const Complex a0{2.0, -3.0};
  const auto direct = propagate(d, a0, tau_max, integrator(o));
  double worst = 0.0;
  for (std::size_t i = 0; i < p.taus.size(); ++i) {
    const Complex c6 = direct.states[i][5];
    worst = std::max(worst, std::abs(c6 - p.at(i, a0)) / std::max(1.0, std::abs(c6)));
  }
  return {"c6 affine in alpha0 (probe reconstruction at 2-3i)", worst, "<= 1e-9", worst <= 1e-9, ""};
}

CheckResult pde_order(const ValidateOptions& o) {
  const auto d = make_dimensionless(1.0, 0.5, 0.01, 1e-3, 0.0);
  const Complex a0{0.5, 0.2};
  const std::pair<double, double> samples[] = {{0.3, 0.7}, {1.0, -1.0}, {-0.5, 0.2}};
  const double r1 = pde_residual(propagate(d, a0, kTwoPi, integrator(o, 2000)), d, samples);
  const double r2 = pde_residual(propagate(d, a0, kTwoPi, integrator(o, 4000)), d, samples);
  const double ratio = r1 / r2;
  return {"PDE residual convergence ratio on step halving (h^2)", ratio, "in [3.5, 4.5]",
          ratio >= 3.5 && ratio <= 4.5,
          fmt::format("residual {:.3e} at 2000 steps/period, {:.3e} at 4000", r1, r2)};
}

CheckResult route_quadrature(const ValidateOptions& o) {
  const auto d = make_dimensionless(1.0, 0.1, 0.05, 1e-4, 5.0);
  const auto p = probe_c6(d, 3 * kTwoPi, integrator(o));
  const double rel =
      max_relative_discrepancy(visibility_thermal(d, p), visibility_quadrature(d, p));
  return {"route agreement ode_analytic vs ode_quadrature", rel, "<= 1e-6", rel <= 1e-6, ""};
}

CheckResult route_closed(const ValidateOptions& o) {
  const auto d = make_dimensionless(1.0, 0.3, 0.05, 1e-4, 5.0);
  const auto ode = visibility_thermal(d, 3 * kTwoPi, integrator(o));
  const auto closed = visibility_closed_form(d, ode.t_seconds);
  const double rel = max_relative_discrepancy(ode, closed);
  return {"route agreement ode_analytic vs closed_form (Q_m = 1e4)", rel, "<= 1e-2", rel <= 1e-2,
          ""};
}

CheckResult chi_identity(const ValidateOptions&) {
  const PhysConstants c;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    PhysicalParams p = reference_setup();
    p.omega_m = 3e3 * std::pow(10.0, 2.0 * log_u(rng));
    p.T = 1e-6 * std::pow(10.0, 3.0 * log_u(rng));
    p.gamma = 1e-3 * std::pow(10.0, 2.0 * log_u(rng));
    p.lambda_qq = 1.0 + 4.5 * (log_u(rng) + 1.0);
    const double x = c.hbar * p.omega_m / (4.0 * c.k_B * p.T);
    const double expected = p.lambda_qq * x * x;
    worst = std::max(worst, std::abs(chi_identity_check(p, c) - expected) / expected);
  }
  return {"chi / (4 Lambda_T) = lambda (hbar omega_m / 4 k_B T)^2", worst, "<= 1e-12",
          worst <= 1e-12, "200 random inputs"};
}

CheckResult turnback(const ValidateOptions&) {
  const PhysicalParams base = reference_setup();
  const auto grid = run_scan(base, log_axis(1e-10, 1e-2, 200), {3e-2}, 1.0, 1.0, 1);
  const auto shape = column_shape(grid, 0);
  const double T_star = optimal_temperature(base.omega_m, 1.0);
  const std::size_t k = shape.argmin;
  const bool brackets = k > 0 && k + 1 < grid.T_values.size() && grid.T_values[k - 1] < T_star &&
                        T_star < grid.T_values[k + 1];
  return {"turnback: lambda = 1 column unimodal, minimum brackets T*", grid.T_values[k],
          fmt::format("unimodal and T* = {:.4e} K within one cell", T_star),
          shape.unimodal && brackets, fmt::format("grid minimum at T = {:.4e} K", grid.T_values[k])};
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport cmd_validate(const RunConfig& cfg) {
  const std::pair<const char*, Check> suite[] = {
      {"stationarity", stationarity},         {"integrator order", integrator_order},
      {"f realness", f_realness},             {"affinity", affinity},
      {"PDE residual order", pde_order},      {"route agreement (quadrature)", route_quadrature},
      {"route agreement (closed form)", route_closed},
      {"chi identity", chi_identity},         {"turnback", turnback}};
  ValidationReport report;
  for (const auto& [name, check] : suite) {
    try {
      report.checks.push_back(check(cfg.validate));
    } catch (const std::exception& e) {
      // A throwing check is a failed check; the rest still run.
      report.checks.push_back({name, std::nan(""), "no error", false, e.what()});
    }
  }
  return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << ": measured "
        << fmt::format("{:.6e}", c.measured) << ", required " << c.tolerance;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
  out << fmt::format("{} of {} checks passed\n", report.checks.size() - failed, report.checks.size());
}

}  // namespace mirrorvis::cli
