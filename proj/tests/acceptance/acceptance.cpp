// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "mirrorvis/propagator.hpp"
#include "mirrorvis/scan.hpp"
#include "mirrorvis/visibility.hpp"
#include "oracles.hpp"

using namespace mirrorvis;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "[x] ") + what;
    passed = passed && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

IntegratorOptions steps(int spp) {
  IntegratorOptions o;
  o.steps_per_period = spp;
  o.estimate_error = false;
  return o;
}

std::vector<double> default_T() { return log_axis(1e-10, 1e-2, 200); }
std::vector<double> default_gamma() { return log_axis(1e-8, 1e-1, 200); }

Verdict reference_decoherence() {
  Verdict v;
  const auto p = reference_setup();
  const auto t0 = Clock::now();
  const auto d = derive_dimensionless(p);
  const double elapsed = seconds_since(t0);
  v.require(d.Lambda_T >= 0.40 && d.Lambda_T <= 0.50,
            fmt::format("Lambda_T = {:.6f} in [0.40, 0.50]", d.Lambda_T));
  v.require(elapsed < 1e-3, fmt::format("{:.1f} us < 1 ms", elapsed * 1e6));
  return v;
}

Verdict reference_occupation() {
  Verdict v;
  const auto d = derive_dimensionless(reference_setup());
  v.require(d.n_bar >= 8.0e4 && d.n_bar <= 9.5e4,
            fmt::format("n_bar = {:.2f} in [8.0e4, 9.5e4]", d.n_bar));
  return v;
}

Verdict route_agreement() {
  Verdict v;
  const auto t0 = Clock::now();
  double worst_quad = 0.0, worst_closed_excess = 0.0;
  double slope_lo = 1e300, slope_hi = -1e300;
  int sets = 0;
  for (double kappa : {0.5, 1.0, 2.0}) {
    for (double n_bar : {0.0, 1.0, 10.0}) {
      for (double Lambda : {0.0, 0.1}) {
        for (double chi : {0.0, 0.05}) {
          double closed[2];
          int k = 0;
          for (double Q : {1e3, 1e4}) {
            const auto d = make_dimensionless(kappa, Lambda, chi, 1.0 / Q, n_bar);
            const auto probes = probe_c6(d, 3.0 * kTwoPi, steps(2000));
            const auto a = visibility_thermal(d, probes);
            const auto b = visibility_quadrature(d, probes);
            const auto c = visibility_closed_form(d, a.t_seconds);
            worst_quad = std::max(worst_quad, max_relative_discrepancy(a, b));
            closed[k] = max_relative_discrepancy(a, c);
            worst_closed_excess =
                std::max(worst_closed_excess, closed[k] / std::max(0.01, 5.0 / Q));
            ++k;
            ++sets;
          }
          const double slope = std::log10(closed[0] / closed[1]);
          slope_lo = std::min(slope_lo, slope);
          slope_hi = std::max(slope_hi, slope);
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  v.require(sets == 72, fmt::format("{} parameter sets", sets));
  v.require(worst_quad <= 1e-6, fmt::format("ode vs quadrature max rel {:.2e} <= 1e-6", worst_quad));
  v.require(worst_closed_excess <= 1.0,
            fmt::format("ode vs closed form max rel / max(1%, 5/Q) = {:.3f} <= 1", worst_closed_excess));
  v.require(slope_lo >= 0.8 && slope_hi <= 1.2,
            fmt::format("closed-form slope in 1/Q [{:.3f}, {:.3f}] within [0.8, 1.2]", slope_lo,
                        slope_hi));
  v.require(elapsed < 60.0, fmt::format("{:.2f} s < 60 s", elapsed));
  return v;
}

Verdict pde_residual_check() {
  Verdict v;
  const auto d = make_dimensionless(1.0, 0.5, 0.01, 1e-3, 0.0);
  const Complex a0{0.5, 0.2};
  const std::pair<double, double> samples[] = {{0.3, 0.7}, {1.0, -1.0}, {-0.5, 0.2}};
  const double r1 = pde_residual(propagate(d, a0, kTwoPi, steps(2000)), d, samples);
  const double r2 = pde_residual(propagate(d, a0, kTwoPi, steps(4000)), d, samples);
  v.require(r1 < 1e-5, fmt::format("residual at 2000 steps/period {:.3e} < 1e-5", r1));
  v.require(r1 / r2 >= 3.5 && r1 / r2 <= 4.5,
            fmt::format("halving ratio {:.4f} in [3.5, 4.5]", r1 / r2));
  return v;
}

Verdict first_revival_formula() {
  Verdict v;
  double worst = 0.0;
  int cases = 0;
  auto check = [&](const DimensionlessParams& d) {
    const auto r = first_revival(d);
    if (!(d.gamma() * r.t1_seconds < 1e-4) || r.neg_log_nu == 0.0) return;
    const double closed = closed_form_neg_log(d, r.t1_seconds);
    worst = std::max(worst, std::abs(closed - r.neg_log_nu) / r.neg_log_nu);
    ++cases;
  };
  for (double inv_Q : {0.0, 1e-7, 1e-6, 1e-5, 1.5e-5}) {
    for (double kappa : {0.5, 1.0, 2.0}) {
      for (double Lambda : {1e-3, 0.1, 0.44}) {
        for (double chi : {0.0, 0.05}) {
          for (double n_bar : {0.0, 10.0, 1e5}) check(make_dimensionless(kappa, Lambda, chi, inv_Q, n_bar));
        }
      }
    }
  }
  for (double T : log_axis(1e-9, 1e-2, 15)) {
    for (double gamma : log_axis(1e-8, 0.04, 15)) {
      PhysicalParams p = reference_setup();
      p.T = T;
      p.gamma = gamma;
      p.lambda_qq = 1.0;
      check(derive_dimensionless(p));
    }
  }
  v.require(worst < 0.01, fmt::format("max rel {:.2e} < 1% over {} cases with gamma t1 < 1e-4",
                                      worst, cases));
  return v;
}

Verdict decoherence_free_revival() {
  Verdict v;
  double worst_full = 0.0, worst_half = 0.0;
  for (double n_bar : {0.0, 5.0}) {
    const auto d = make_dimensionless(1.0, 0.0, 0.0, 0.0, n_bar);
    const auto probes = probe_c6(d, kTwoPi, steps(2000));
    const auto a = visibility_thermal(d, probes);
    const auto b = visibility_quadrature(d, probes);
    const auto c = visibility_closed_form(d, a.t_seconds);
    const double first_factor = (n_bar + 0.5) * (1.0 + 1.0 - 2.0 * std::cos(kPi));
    for (const auto* s : {&a, &b, &c}) {
      worst_full = std::max(worst_full, std::abs(s->nu.back() - 1.0));
      const double half_nu = s->nu[1000];
      worst_half = std::max(worst_half, std::abs(half_nu - std::exp(-first_factor)));
    }
  }
  v.require(worst_full <= 1e-10, fmt::format("|nu(2 pi) - 1| = {:.2e} <= 1e-10", worst_full));
  v.require(worst_half <= 1e-9,
            fmt::format("|nu(pi) - thermal revival factor| = {:.2e} <= 1e-9", worst_half));
  return v;
}

Verdict classicality() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double ext = 0.0, narrow_exact = 0.0, narrow_high_t = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    oracle::Setup s{std::pow(10.0, -14 + 4 * u(rng)), std::pow(10.0, 2 + 2 * u(rng)),
                    std::pow(10.0, 14 + 2 * u(rng)), std::pow(10.0, -3 + 2 * u(rng)),
                    std::pow(10.0, -6 + 5 * u(rng)), std::pow(10.0, -5 + 3 * u(rng))};
    const auto d = derive_dimensionless({s.M, s.omega_m, s.omega_c, s.L, s.T, s.gamma});
    const auto cl = classicality_diagnostics(d);
    ext = std::max(ext, std::abs(cl.extinction / oracle::extinction_si(s) - 1.0));
    const double n_exact = 1.0 / std::expm1(oracle::hbar * s.omega_m / (oracle::kB * s.T));
    const double kappa2 =
        s.omega_c * s.omega_c * oracle::hbar / (2.0 * s.M * std::pow(s.omega_m, 3) * s.L * s.L);
    narrow_exact = std::max(narrow_exact, std::abs(cl.narrowing / (kappa2 * n_exact) - 1.0));
    if (d.n_bar > 1e3) {
      narrow_high_t = std::max(narrow_high_t, std::abs(cl.narrowing / oracle::narrowing_si(s) - 1.0));
    }
  }
  v.require(ext <= 1e-10, fmt::format("extinction rel {:.2e} <= 1e-10", ext));
  v.require(narrow_exact <= 1e-10, fmt::format("narrowing rel {:.2e} <= 1e-10", narrow_exact));
  v.require(narrow_high_t <= 1e-3,
            fmt::format("hbar-free narrowing rel {:.2e} <= 1e-3 where n_bar > 1e3", narrow_high_t));
  return v;
}

Verdict turnback_optimum() {
  Verdict v;
  const auto T = default_T();
  const auto gammas = log_axis(1e-5, 1e-2, 4);
  const auto grid = run_scan(reference_setup(), T, gammas, 1.0, 1.0);
  const double T_star = optimal_temperature(3e3, 1.0);
  const double cell = std::log(T[1] / T[0]);
  bool unimodal = true, bracketed = true, invariant = true;
  const std::size_t first = column_shape(grid, 0).argmin;
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    const auto shape = column_shape(grid, j);
    unimodal = unimodal && shape.unimodal;
    bracketed = bracketed && std::abs(std::log(T[shape.argmin] / T_star)) <= cell;
    invariant = invariant && shape.argmin == first;
  }
  v.require(unimodal, "every column unimodal");
  v.require(bracketed, fmt::format("minimum at T = {:.4e} K within one cell of T* = {:.4e} K",
                                   T[first], T_star));
  v.require(invariant, "argmin unchanged for gamma 1e-5 .. 1e-2");
  return v;
}

Verdict chi_identity() {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    PhysicalParams p = reference_setup();
    p.omega_m = std::pow(10.0, 1 + 5 * u(rng));
    p.T = std::pow(10.0, -9 + 8 * u(rng));
    p.gamma = std::pow(10.0, -8 + 7 * u(rng));
    p.lambda_qq = 1.0 + 9.0 * u(rng);
    const double x = oracle::hbar * p.omega_m / (4.0 * oracle::kB * p.T);
    worst = std::max(worst, std::abs(chi_identity_check(p) / (p.lambda_qq * x * x) - 1.0));
  }
  v.require(worst <= 1e-12, fmt::format("max rel {:.2e} <= 1e-12 over 1000 inputs", worst));
  return v;
}

Verdict thermal_narrowing() {
  Verdict v;
  auto width = [](double n_bar) {
    const auto d = make_dimensionless(1.0, 0.0, 0.0, 0.0, n_bar);
    return revival_peak_width(visibility_thermal(d, 3.0 * kPi, steps(20000)), 1);
  };
  const double ratio = width(1e4) / width(1e2);
  v.require(ratio >= 0.09 && ratio <= 0.11, fmt::format("FWHM ratio {:.5f} in [0.09, 0.11]", ratio));
  return v;
}

Verdict contour_properties() {
  Verdict v;
  const auto T = default_T();
  const auto g = default_gamma();
  const auto t0 = Clock::now();
  const auto grid = run_scan(reference_setup(), T, g, 1.0, 1.0);
  const double elapsed = seconds_since(t0);

  bool monotone = true;
  for (std::size_t i = 0; i < T.size(); ++i) {
    for (std::size_t j = 1; j < g.size(); ++j) {
      monotone = monotone && grid.at(i, j).neg_log_nu > grid.at(i, j - 1).neg_log_nu;
    }
  }
  v.require(monotone && grid.failed_cells() == 0, "monotone in gamma at every T");

  const auto flat = run_scan(reference_setup(), T, g, 1.0, 0.0);
  double cross = 0.0;
  for (std::size_t i = 0; i + 1 < T.size(); ++i) {
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
      const double r = flat.at(i, j).neg_log_nu * flat.at(i + 1, j + 1).neg_log_nu /
                       (flat.at(i, j + 1).neg_log_nu * flat.at(i + 1, j).neg_log_nu);
      cross = std::max(cross, std::abs(r - 1.0));
    }
  }
  v.require(cross <= 1e-12, fmt::format("separable without coordinate diffusion, |cross - 1| = {:.2e}", cross));

  bool turnback = true;
  const std::size_t first = column_shape(grid, 0).argmin;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto shape = column_shape(grid, j);
    turnback = turnback && shape.unimodal && shape.argmin == first && first > 0 &&
               first + 1 < T.size();
  }
  v.require(turnback, fmt::format("turnback at T = {:.3e} K in every column", T[first]));

  ScanGrid at_2mK;
  at_2mK.T_values = {2e-3};
  at_2mK.omega_m = 3e3;
  const double gamma_csl = csl_threshold_curve(at_2mK, kLambdaCsl).front().gamma;
  v.require(std::abs(gamma_csl / 1.4e-7 - 1.0) <= 0.05,
            fmt::format("threshold curve at 2 mK: gamma = {:.4e} 1/s vs 1.4e-7 within 5%", gamma_csl));
  v.require(elapsed < 10.0, fmt::format("200x200 scan {:.3f} s < 10 s", elapsed));
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"thermal decoherence at the reference point", reference_decoherence},
      {"thermal occupation at the reference point", reference_occupation},
      {"three visibility routes agree", route_agreement},
      {"trajectory satisfies the characteristic-function equation", pde_residual_check},
      {"first-revival formula matches the closed form", first_revival_formula},
      {"decoherence-free revival", decoherence_free_revival},
      {"hbar-free classicality coefficients", classicality},
      {"turnback minimum and optimal temperature", turnback_optimum},
      {"coordinate-diffusion identity", chi_identity},
      {"thermal narrowing of the revival peak", thermal_narrowing},
      {"visibility contour properties", contour_properties},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.passed) ++failed;
    std::printf("%s  %s: %s\n", v.passed ? "PASS" : "FAIL", name, v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
