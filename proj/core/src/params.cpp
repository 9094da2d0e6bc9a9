#include "mirrorvis/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mirrorvis/errors.hpp"

namespace mirrorvis {
namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

std::optional<double> damped_frequency(double omega_m, double inv_Q) {
  if (inv_Q >= 2.0) return std::nullopt;
  return omega_m * std::sqrt(1.0 - 0.25 * inv_Q * inv_Q);
}

}  // namespace

PhysicalParams reference_setup(const PhysConstants& c) {
  PhysicalParams p;
  p.M = 1e-12;
  p.omega_m = 3e3;
  p.omega_c = 2.0 * std::numbers::pi * 299792458.0 / 1064e-9;
  const double sigma = std::sqrt(c.hbar / (2.0 * p.M * p.omega_m));
  p.L = p.omega_c * sigma / p.omega_m;
  p.T = 2e-3;
  p.gamma = 3e-2;
  return p;
}

double thermal_occupation(double omega_m, double T, const PhysConstants& c) {
  if (T == 0.0) return 0.0;
  // expm1 overflows to inf for very cold baths, which correctly yields 0.
  return 1.0 / std::expm1(c.hbar * omega_m / (c.k_B * T));
}

double thermal_decoherence(double omega_m, double T, double gamma, const PhysConstants& c) {
  return c.k_B * T / (2.0 * c.hbar * omega_m) * (gamma / omega_m);
}

void validate(const PhysicalParams& p) {
  require(positive(p.M), "M must be > 0");
  require(positive(p.omega_m), "omega_m must be > 0");
  require(positive(p.omega_c), "omega_c must be > 0");
  require(positive(p.L), "L must be > 0");
  require(nonnegative(p.T), "T must be >= 0");
  require(nonnegative(p.gamma), "gamma must be >= 0");
  require(nonnegative(p.Lambda_nonenv), "Lambda_nonenv must be >= 0");
  require(nonnegative(p.lambda_qq), "lambda_qq must be >= 0");
  require(p.lambda_qq == 0.0 || p.lambda_qq >= 1.0,
          "lambda_qq must be 0 or >= 1 (density-matrix positivity)");
  require(!(p.T == 0.0 && p.lambda_qq > 0.0),
          "T = 0 with lambda_qq > 0: minimal coordinate diffusion diverges");
}

void validate(const DimensionlessParams& d) {
  require(!d.sigma || positive(*d.sigma), "sigma must be > 0");
  require(nonnegative(d.kappa), "kappa must be >= 0");
  require(nonnegative(d.Lambda), "Lambda must be >= 0");
  require(nonnegative(d.Lambda_T), "Lambda_T must be >= 0");
  require(nonnegative(d.chi), "chi must be >= 0");
  require(nonnegative(d.inv_Q), "inv_Q must be >= 0");
  require(nonnegative(d.n_bar), "n_bar must be >= 0");
  require(positive(d.omega_m), "omega_m must be > 0");
  if (d.chi > 0.0 && d.Lambda > 0.0) {
    // Relative slack for the rounding in chi = lambda inv_Q^2 / (16 Lambda_T).
    require(d.chi * d.Lambda * (1.0 + 1e-12) >= d.inv_Q * d.inv_Q / 16.0,
            "chi * Lambda must be >= inv_Q^2 / 16 (density-matrix positivity)");
  }
}

DimensionlessParams derive_dimensionless(const PhysicalParams& p, const PhysConstants& c) {
  require(positive(c.hbar) && positive(c.k_B), "physical constants must be > 0");
  validate(p);

  DimensionlessParams d;
  const double sigma = std::sqrt(c.hbar / (2.0 * p.M * p.omega_m));
  d.sigma = sigma;
  d.kappa = (p.omega_c / p.omega_m) * (sigma / p.L);
  d.inv_Q = p.gamma / p.omega_m;
  d.n_bar = thermal_occupation(p.omega_m, p.T, c);
  d.Lambda_T = thermal_decoherence(p.omega_m, p.T, p.gamma, c);
  d.Lambda = d.Lambda_T + p.Lambda_nonenv;
  d.chi = (d.Lambda_T > 0.0 && p.lambda_qq > 0.0)
              ? p.lambda_qq * d.inv_Q * d.inv_Q / (16.0 * d.Lambda_T)
              : 0.0;
  d.omega_m = p.omega_m;
  d.omega_tilde = damped_frequency(p.omega_m, d.inv_Q);
  return d;
}

DimensionlessParams make_dimensionless(double kappa, double Lambda, double chi, double inv_Q,
                                       double n_bar) {
  DimensionlessParams d;
  d.kappa = kappa;
  d.Lambda = Lambda;
  d.Lambda_T = Lambda;
  d.chi = chi;
  d.inv_Q = inv_Q;
  d.n_bar = n_bar;
  d.omega_m = 1.0;
  if (std::isfinite(inv_Q)) d.omega_tilde = damped_frequency(1.0, inv_Q);
  validate(d);
  return d;
}

double chi_identity_check(const PhysicalParams& p, const PhysConstants& c) {
  require(p.T > 0.0, "chi identity needs T > 0");
  require(p.gamma > 0.0, "chi identity needs gamma > 0");
  require(p.lambda_qq >= 1.0, "chi identity needs lambda_qq >= 1");
  const auto d = derive_dimensionless(p, c);
  return d.chi / (4.0 * d.Lambda_T);
}

Classicality classicality_diagnostics(const DimensionlessParams& d) {
  const double k2 = d.kappa * d.kappa;
  return {k2 * d.Lambda_T, k2 * d.n_bar};
}

}  // namespace mirrorvis
