#pragma once

#include <optional>

namespace mirrorvis {

struct PhysConstants {
  double hbar = 1.054571817e-34;  // J s
  double k_B = 1.380649e-23;      // J/K
};

/// SI description of the photon/mirror setup.
struct PhysicalParams {
  double M = 0.0;        // mirror mass, kg
  double omega_m = 0.0;  // mirror angular frequency, rad/s
  double omega_c = 0.0;  // photon angular frequency, rad/s
  double L = 0.0;        // cavity length, m
  double T = 0.0;        // temperature, K
  double gamma = 0.0;    // friction rate, 1/s
  double lambda_qq = 0.0;      // multiplier of the minimal coordinate diffusion; 0 disables it
  double Lambda_nonenv = 0.0;  // added non-environmental position decoherence
};

/// Working parameter set of the characteristic-function dynamics. Time is
/// measured in units of 1/omega_m.
struct DimensionlessParams {
  std::optional<double> sigma;  // ground-state width in m; absent in dimensionless input mode
  double kappa = 0.0;
  double Lambda = 0.0;    // total position decoherence (thermal + non-environmental)
  double Lambda_T = 0.0;  // thermal part of Lambda
  double chi = 0.0;
  double inv_Q = 0.0;
  double n_bar = 0.0;
  double omega_m = 1.0;                // rad/s, for restoring physical time
  std::optional<double> omega_tilde;   // damped frequency, absent when overdamped

  double gamma() const { return inv_Q * omega_m; }
  bool underdamped() const { return omega_tilde.has_value(); }
};

/// Fixed values used when the caller gives no setup.
inline constexpr double kLambdaCsl = 2e-9;

/// Reference operating point: omega_m = 3e3 s^-1, T = 2 mK, Q_m = 1e5.
/// Mass and cavity length are not fixed by the reference setup; M = 1e-12 kg
/// is nominal and L is solved so that kappa = 1.
PhysicalParams reference_setup(const PhysConstants& c = {});

double thermal_occupation(double omega_m, double T, const PhysConstants& c = {});
double thermal_decoherence(double omega_m, double T, double gamma, const PhysConstants& c = {});

DimensionlessParams derive_dimensionless(const PhysicalParams& p, const PhysConstants& c = {});

/// Dimensionless input mode: kappa, Lambda, chi, inv_Q, n_bar given directly.
/// omega_m is taken as 1 rad/s so physical and dimensionless time coincide.
DimensionlessParams make_dimensionless(double kappa, double Lambda, double chi, double inv_Q,
                                       double n_bar);

void validate(const PhysicalParams& p);
void validate(const DimensionlessParams& d);

/// chi / (4 Lambda_T); equals lambda_qq (hbar omega_m / 4 k_B T)^2.
double chi_identity_check(const PhysicalParams& p, const PhysConstants& c = {});

struct Classicality {
  double extinction = 0.0;  // kappa^2 Lambda_T
  double narrowing = 0.0;   // kappa^2 n_bar
};

Classicality classicality_diagnostics(const DimensionlessParams& d);

}  // namespace mirrorvis
