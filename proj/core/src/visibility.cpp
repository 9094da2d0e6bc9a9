#include "mirrorvis/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mirrorvis/errors.hpp"
#include "mirrorvis/gauss_hermite.hpp"

namespace mirrorvis {
namespace {

constexpr double kPi = std::numbers::pi;
// Rounding can leave an exponent a hair below zero; anything lower is a bug.
constexpr double kNegativeExponentSlack = 1e-9;

void require_underdamped(const DimensionlessParams& d, const char* who) {
  if (!d.underdamped()) {
    throw ParameterError(fmt::format("{}: overdamped (inv_Q = {} >= 2), no revivals", who, d.inv_Q));
  }
}

double clamp_exponent(double L, double tau, Route route) {
  if (L >= 0.0) return L;
  if (route != Route::closed_form && L < -kNegativeExponentSlack) {
    throw NumericalError(fmt::format("{}: negative exponent {:.3e} at tau = {:.6g}",
                                     to_string(route), L, tau));
  }
  return 0.0;
}

VisibilitySeries make_series(std::vector<double> taus, std::vector<double> neg_log, Route route,
                             double omega_m) {
  VisibilitySeries s;
  s.route = route;
  s.taus = std::move(taus);
  s.neg_log_nu = std::move(neg_log);
  s.t_seconds.resize(s.taus.size());
  s.nu.resize(s.taus.size());
  for (std::size_t i = 0; i < s.taus.size(); ++i) {
    s.neg_log_nu[i] = clamp_exponent(s.neg_log_nu[i], s.taus[i], route);
    s.t_seconds[i] = s.taus[i] / omega_m;
    s.nu[i] = s.neg_log_nu[i] > kNegLogClamp ? 0.0 : std::exp(-s.neg_log_nu[i]);
  }
  return s;
}

VisibilitySeries trivial_series(const DimensionlessParams& d, double tau_max, int spp,
                                Route route) {
  auto taus = TimeGrid{tau_max, spp}.taus();
  std::vector<double> zeros(taus.size(), 0.0);
  return make_series(std::move(taus), std::move(zeros), route, d.omega_m);
}

// log | (1/sqrt(pi)) * integral of exp(-u^2 - beta u) du |.
// The contour is moved to Im u = Im(shift) with shift a fraction of the way to
// the saddle -beta/2, leaving a residual frequency of at most kMaxResidual so
// the sum stays oscillatory but free of catastrophic cancellation.
double log_line_integral(Complex beta, const QuadratureRule& rule) {
  constexpr double kMaxResidual = 4.0;
  const double mag = std::abs(beta);
  const double theta = mag > kMaxResidual ? 1.0 - kMaxResidual / mag : 0.0;
  const Complex shift = -0.5 * theta * beta;
  const Complex residual = 2.0 * shift + beta;

  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::exp(-residual * rule.nodes[i]);
  }
  sum /= std::sqrt(kPi);
  const double modulus = std::abs(sum);
  if (!(modulus > 0.0) || !std::isfinite(modulus)) {
    throw NumericalError("visibility_quadrature: line integral vanished or overflowed");
  }
  return (-shift * shift - beta * shift).real() + std::log(modulus);
}

std::vector<double> quadrature_neg_log(const DimensionlessParams& d, const C6Probes& probes,
                                       const QuadratureRule& rule) {
  const double width = std::sqrt(d.n_bar);
  std::vector<double> out(probes.taus.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Separable integrand: the product rule equals the product of two 1D sums.
    const Complex beta_re = width * (probes.one[i] - probes.zero[i]);
    const Complex beta_im = width * (probes.imag[i] - probes.zero[i]);
    out[i] = probes.zero[i].real() - log_line_integral(beta_re, rule) -
             log_line_integral(beta_im, rule);
  }
  return out;
}

}  // namespace

std::string_view to_string(Route r) {
  switch (r) {
    case Route::ode_analytic:
      return "ode_analytic";
    case Route::ode_quadrature:
      return "ode_quadrature";
    case Route::closed_form:
      return "closed_form";
  }
  return "unknown";
}

std::vector<Complex> visibility_single(const DimensionlessParams& d, Complex alpha0, double tau_max,
                                       const IntegratorOptions& opts) {
  if (!(tau_max > 0.0)) return {Complex{1.0, 0.0}};
  IntegratorOptions o = opts;
  o.estimate_error = false;
  const auto traj = propagate(d, alpha0, tau_max, o);
  std::vector<Complex> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(std::exp(-s[5]));
  return out;
}

VisibilitySeries visibility_thermal(const DimensionlessParams& d, const C6Probes& probes) {
  if (d.kappa == 0.0) {
    return make_series(probes.taus, std::vector<double>(probes.taus.size(), 0.0),
                       Route::ode_analytic, d.omega_m);
  }
  const FTriple f = extract_f(probes, d.kappa);
  const double k2 = d.kappa * d.kappa;
  std::vector<double> neg_log(f.taus.size());
  for (std::size_t i = 0; i < neg_log.size(); ++i) {
    neg_log[i] = k2 * (f.f1[i] + 0.25 * d.n_bar * (f.f2[i] * f.f2[i] + f.f3[i] * f.f3[i]));
  }
  return make_series(f.taus, std::move(neg_log), Route::ode_analytic, d.omega_m);
}

VisibilitySeries visibility_thermal(const DimensionlessParams& d, double tau_max,
                                    const IntegratorOptions& opts) {
  if (d.kappa == 0.0 || !(tau_max > 0.0)) {
    return trivial_series(d, tau_max, opts.steps_per_period, Route::ode_analytic);
  }
  return visibility_thermal(d, probe_c6(d, tau_max, opts));
}

VisibilitySeries visibility_quadrature(const DimensionlessParams& d, const C6Probes& probes,
                                       int order) {
  if (order < 20) throw ParameterError("visibility_quadrature: order must be >= 20");
  if (!(d.n_bar >= 0.0)) throw ParameterError("visibility_quadrature: n_bar must be >= 0");
  if (d.kappa == 0.0) {
    return make_series(probes.taus, std::vector<double>(probes.taus.size(), 0.0),
                       Route::ode_quadrature, d.omega_m);
  }
  const auto coarse = quadrature_neg_log(d, probes, gauss_hermite(static_cast<std::size_t>(order)));
  const auto fine =
      quadrature_neg_log(d, probes, gauss_hermite(2 * static_cast<std::size_t>(order)));
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const double change = std::abs(fine[i] - coarse[i]);
    if (!(change <= 1e-6 * std::max(1.0, std::abs(fine[i])))) {
      throw NumericalError(fmt::format(
          "visibility_quadrature: order {} -> {} changed -ln nu by {:.3e} at tau = {:.6g}", order,
          2 * order, change, probes.taus[i]));
    }
  }
  return make_series(probes.taus, fine, Route::ode_quadrature, d.omega_m);
}

VisibilitySeries visibility_quadrature(const DimensionlessParams& d, double tau_max, int order,
                                       const IntegratorOptions& opts) {
  if (order < 20) throw ParameterError("visibility_quadrature: order must be >= 20");
  if (d.kappa == 0.0 || !(tau_max > 0.0)) {
    return trivial_series(d, tau_max, opts.steps_per_period, Route::ode_quadrature);
  }
  return visibility_quadrature(d, probe_c6(d, tau_max, opts), order);
}

double closed_form_neg_log(const DimensionlessParams& d, double t) {
  require_underdamped(d, "closed form");
  const double k2 = d.kappa * d.kappa;
  const double gamma = d.gamma();
  const double w = *d.omega_tilde;
  const double x = gamma * t;
  const double wt = w * t;
  const double decay = std::exp(-x);
  const double half_decay = std::exp(-0.5 * x);

  // (1 - e^{-x}) / x, with its series where the direct form cancels.
  const double ratio = x < 1e-6 ? 1.0 - x / 2.0 + x * x / 6.0 : -std::expm1(-x) / x;

  const double revival =
      (d.n_bar + 0.5) * k2 * (1.0 + decay - 2.0 * half_decay * std::cos(wt));
  // Lambda distributed into the braces so that Lambda = 0, chi > 0 is finite.
  const double decoherence =
      6.0 * k2 *
      (wt * (ratio / 3.0 * (d.Lambda + 0.25 * d.chi) + 2.0 / 3.0 * d.Lambda) -
       4.0 / 3.0 * d.Lambda * half_decay * std::sin(wt) +
       1.0 / 6.0 * decay * std::sin(2.0 * wt) * (d.Lambda - 0.25 * d.chi));
  return revival + decoherence;
}

VisibilitySeries visibility_closed_form(const DimensionlessParams& d,
                                        std::span<const double> t_seconds) {
  require_underdamped(d, "visibility_closed_form");
  std::vector<double> taus(t_seconds.size());
  std::vector<double> neg_log(t_seconds.size());
  for (std::size_t i = 0; i < t_seconds.size(); ++i) {
    taus[i] = t_seconds[i] * d.omega_m;
    neg_log[i] = closed_form_neg_log(d, t_seconds[i]);
  }
  auto s = make_series(std::move(taus), std::move(neg_log), Route::closed_form, d.omega_m);
  // Keep the caller's times exactly rather than the round trip through tau.
  s.t_seconds.assign(t_seconds.begin(), t_seconds.end());
  s.outside_high_q = d.inv_Q > 0.1;
  return s;
}

FirstRevival first_revival(const DimensionlessParams& d) {
  require_underdamped(d, "first_revival");
  FirstRevival r;
  r.t1_seconds = 2.0 * kPi / *d.omega_tilde;
  r.neg_log_nu = kPi * d.kappa * d.kappa * (12.0 * d.Lambda + d.chi);
  r.nu = r.neg_log_nu > kNegLogClamp ? 0.0 : std::exp(-r.neg_log_nu);
  return r;
}

double revival_peak_width(const VisibilitySeries& s, int m) {
  const double centre = 2.0 * kPi * m;
  std::size_t lo = s.size(), hi = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s.taus[i] - centre) <= kPi) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (lo >= s.size()) throw ParameterError("revival_peak_width: revival outside the series");

  std::size_t peak = lo;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (s.nu[i] > s.nu[peak]) peak = i;
  }
  const double half = 0.5 * s.nu[peak];
  if (!(half > 0.0)) throw NumericalError("revival_peak_width: peak height is zero");

  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double f = (s.nu[inside] - half) / (s.nu[inside] - s.nu[outside]);
    return s.taus[inside] + f * (s.taus[outside] - s.taus[inside]);
  };
  std::size_t left = peak;
  while (left > lo && s.nu[left - 1] >= half) --left;
  std::size_t right = peak;
  while (right < hi && s.nu[right + 1] >= half) ++right;
  if (left == lo || right == hi) {
    throw NumericalError("revival_peak_width: half maximum not reached inside the window");
  }
  return crossing(right, right + 1) - crossing(left, left - 1);
}

double max_relative_discrepancy(const VisibilitySeries& a, const VisibilitySeries& b) {
  if (a.size() != b.size()) throw ParameterError("max_relative_discrepancy: grid size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a.taus[i] > 0.0)) continue;
    const double x = a.neg_log_nu[i];
    const double y = b.neg_log_nu[i];
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(x - y) / scale);
  }
  return worst;
}

}  // namespace mirrorvis
