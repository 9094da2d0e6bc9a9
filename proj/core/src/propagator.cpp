#include "mirrorvis/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <fmt/format.h>

#include "mirrorvis/errors.hpp"

namespace mirrorvis {
namespace {

constexpr double kDivergenceBound = 1e12;
constexpr double kWidthImagTolerance = 1e-10;

using Stepper = boost::numeric::odeint::runge_kutta4<Coeffs, double, Coeffs, double>;

void check_state(const Coeffs& c, double tau) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double mag = std::abs(c[i]);
    if (!(mag <= kDivergenceBound)) {
      throw NumericalError(fmt::format("integration diverged: |c{}| = {:.3e} at tau = {:.6g}",
                                       i + 1, mag, tau));
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(c[i].imag()) >= kWidthImagTolerance) {
      throw NumericalError(fmt::format("Im c{} = {:.3e} at tau = {:.6g}; width coefficients must "
                                       "stay real",
                                       i + 1, c[i].imag(), tau));
    }
  }
}

// Integrates on the grid tau_i = i h, i = 0..n, returning every state.
std::vector<Coeffs> integrate(const DimensionlessParams& d, Complex alpha0, std::size_t n, double h,
                              RhsFault fault) {
  Stepper stepper;
  auto system = [&](const Coeffs& x, Coeffs& dxdt, double /*tau*/) { dxdt = rhs(x, d, fault); };

  std::vector<Coeffs> out;
  out.reserve(n + 1);
  Coeffs x = initial_coeffs(alpha0);
  out.push_back(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = static_cast<double>(i) * h;
    stepper.do_step(system, x, tau, h);
    check_state(x, tau + h);
    out.push_back(x);
  }
  return out;
}

}  // namespace

Coeffs initial_coeffs(Complex alpha0) {
  return {Complex{0.5}, Complex{0.0}, Complex{0.125}, Complex{-2.0 * alpha0.real()},
          Complex{-alpha0.imag()}, Complex{0.0}};
}

TimeGrid TimeGrid::periods(double n_periods, int steps_per_period) {
  return {2.0 * std::numbers::pi * n_periods, steps_per_period};
}

double TimeGrid::step() const { return 2.0 * std::numbers::pi / steps_per_period; }

std::size_t TimeGrid::intervals() const {
  if (!(tau_max > 0.0)) return 0;
  // Tolerate rounding so that an integer number of periods lands exactly.
  return static_cast<std::size_t>(std::ceil(tau_max / step() - 1e-9));
}

std::vector<double> TimeGrid::taus() const {
  const std::size_t n = intervals();
  const double h = step();
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = static_cast<double>(i) * h;
  return t;
}

Coeffs rhs(const Coeffs& c, const DimensionlessParams& d, RhsFault fault) {
  constexpr Complex I{0.0, 1.0};
  const double kappa = d.kappa;
  const double q = d.inv_Q;
  const double c5_coupling_sign = fault == RhsFault::flip_c5_coupling_sign ? -1.0 : 1.0;
  return {
      2.0 * c[1] + d.chi,
      4.0 * c[2] - c[0] - q * c[1],
      -0.5 * c[1] - 2.0 * q * c[2] + d.Lambda,
      2.0 * c[4] - 2.0 * I * kappa * c[0],
      -0.5 * c[3] - c5_coupling_sign * kappa * (I * c[1] + 0.5) - q * c[4],
      I * kappa * c[3],
  };
}

CoeffTrajectory propagate(const DimensionlessParams& d, Complex alpha0, double tau_max,
                          const IntegratorOptions& opts) {
  if (!(tau_max > 0.0)) throw ParameterError("propagate: tau_max must be > 0");
  if (opts.steps_per_period < 100) throw ParameterError("propagate: steps_per_period must be >= 100");

  const TimeGrid grid{tau_max, opts.steps_per_period};
  const std::size_t n = grid.intervals();
  const double h = grid.step();

  CoeffTrajectory traj;
  traj.alpha0 = alpha0;
  traj.taus = grid.taus();
  traj.states = integrate(d, alpha0, n, h, opts.fault);

  if (opts.estimate_error) {
    const auto fine = integrate(d, alpha0, 2 * n, 0.5 * h, opts.fault);
    double err = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        err = std::max(err, std::abs(traj.states[i][j] - fine[2 * i][j]));
      }
    }
    traj.halving_error = err;
  }
  return traj;
}

Complex C6Probes::at(std::size_t i, Complex alpha0) const {
  return zero[i] + alpha0.real() * (one[i] - zero[i]) + alpha0.imag() * (imag[i] - zero[i]);
}

C6Probes probe_c6(const DimensionlessParams& d, double tau_max, const IntegratorOptions& opts) {
  IntegratorOptions o = opts;
  o.estimate_error = false;
  const Complex probes[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  C6Probes out;
  std::vector<Complex>* dst[3] = {&out.zero, &out.one, &out.imag};
  for (int p = 0; p < 3; ++p) {
    const auto traj = propagate(d, probes[p], tau_max, o);
    if (p == 0) out.taus = traj.taus;
    dst[p]->reserve(traj.states.size());
    for (const auto& s : traj.states) dst[p]->push_back(s[5]);
  }
  return out;
}

FTriple extract_f(const C6Probes& probes, double kappa) {
  if (!(kappa > 0.0)) throw ParameterError("extract_f: kappa must be > 0");
  constexpr Complex I{0.0, 1.0};
  const std::size_t n = probes.taus.size();
  FTriple f;
  f.taus = probes.taus;
  f.f1.resize(n);
  f.f2.resize(n);
  f.f3.resize(n);
  f.phase.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex f1 = probes.zero[i] / (kappa * kappa);
    const Complex f2 = I * (probes.one[i] - probes.zero[i]) / kappa;
    const Complex f3 = -I * (probes.imag[i] - probes.zero[i]) / kappa;
    const double residue = std::max(std::abs(f2.imag()), std::abs(f3.imag()));
    if (residue > kRealnessTolerance) {
      throw NumericalError(fmt::format(
          "f2/f3 have imaginary residue {:.3e} at tau = {:.6g}; check the integrator settings",
          residue, probes.taus[i]));
    }
    f.f1[i] = f1.real();
    f.phase[i] = f1.imag();
    f.f2[i] = f2.real();
    f.f3[i] = f3.real();
  }
  return f;
}

FTriple extract_f(const DimensionlessParams& d, double tau_max, const IntegratorOptions& opts) {
  if (!(d.kappa > 0.0)) throw ParameterError("extract_f: kappa must be > 0");
  return extract_f(probe_c6(d, tau_max, opts), d.kappa);
}

Complex characteristic_value(const Coeffs& c, double k, double Delta) {
  constexpr Complex I{0.0, 1.0};
  const Complex exponent = c[0] * k * k + c[1] * k * Delta + c[2] * Delta * Delta +
                           I * c[3] * k + I * c[4] * Delta + c[5];
  return 0.5 * std::exp(-exponent);
}

double pde_residual(const CoeffTrajectory& traj, const DimensionlessParams& d,
                    std::span<const std::pair<double, double>> samples) {
  const std::size_t n = traj.taus.size();
  if (n < 3 || traj.states.size() != n) {
    throw ParameterError("pde_residual: trajectory needs at least 3 grid points");
  }
  constexpr Complex I{0.0, 1.0};
  double worst = 0.0;
  for (const auto& [k, D] : samples) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Coeffs& c = traj.states[i];
      const Complex rho = characteristic_value(c, k, D);
      const Complex d_k = -(2.0 * c[0] * k + c[1] * D + I * c[3]) * rho;
      const Complex d_D = -(c[1] * k + 2.0 * c[2] * D + I * c[4]) * rho;
      const Complex rhs_value = 2.0 * k * d_D - 0.5 * D * d_k - d.Lambda * D * D * rho +
                                d.kappa * (d_k + I * (0.5 * D) * rho) - d.inv_Q * D * d_D -
                                d.chi * k * k * rho;
      const Complex lhs_value =
          (characteristic_value(traj.states[i + 1], k, D) -
           characteristic_value(traj.states[i - 1], k, D)) /
          (traj.taus[i + 1] - traj.taus[i - 1]);
      const double scale = std::max(std::abs(rho), 1e-300);
      worst = std::max(worst, std::abs(lhs_value - rhs_value) / scale);
    }
  }
  return worst;
}

}  // namespace mirrorvis
