#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mirrorvis/params.hpp"

namespace mirrorvis {

using Complex = std::complex<double>;

/// Coefficients c1..c6 of the Gaussian characteristic function
///   rho(k, Delta) = 1/2 exp(-[c1 k^2 + c2 k Delta + c3 Delta^2 + i c4 k + i c5 Delta + c6]).
/// Stored 0-based: c[0] is c1.
using Coeffs = std::array<Complex, 6>;

/// Coherent initial state alpha0 of the mirror.
Coeffs initial_coeffs(Complex alpha0);

/// Uniform grid tau_i = i * 2 pi / steps_per_period, i = 0..intervals(),
/// covering at least [0, tau_max].
struct TimeGrid {
  double tau_max = 0.0;
  int steps_per_period = 2000;

  static TimeGrid periods(double n_periods, int steps_per_period = 2000);

  double step() const;
  std::size_t intervals() const;
  std::vector<double> taus() const;
};

/// Test hook for mutation-style self checks: deliberately corrupts the
/// right-hand side. Never enabled in normal runs.
enum class RhsFault { none, flip_c5_coupling_sign };

/// Time derivative of the coefficients in dimensionless time.
Coeffs rhs(const Coeffs& c, const DimensionlessParams& d, RhsFault fault = RhsFault::none);

struct IntegratorOptions {
  int steps_per_period = 2000;
  bool estimate_error = true;
  RhsFault fault = RhsFault::none;
};

struct CoeffTrajectory {
  std::vector<double> taus;
  std::vector<Coeffs> states;
  Complex alpha0;
  /// max |c(h) - c(h/2)| over the common grid; negative when not estimated.
  double halving_error = -1.0;
};

/// Fixed-step classical RK4, h = 2 pi / steps_per_period.
/// Throws NumericalError when any |c_i| exceeds 1e12.
CoeffTrajectory propagate(const DimensionlessParams& d, Complex alpha0, double tau_max,
                          const IntegratorOptions& opts = {});

/// c6(tau) for the three probe amplitudes 0, 1 and i. Since c6 is affine in
/// alpha0 these determine it for every coherent state.
struct C6Probes {
  std::vector<double> taus;
  std::vector<Complex> zero, one, imag;

  /// c6(tau_i; alpha0) reconstructed from the probes.
  Complex at(std::size_t i, Complex alpha0) const;
};

C6Probes probe_c6(const DimensionlessParams& d, double tau_max, const IntegratorOptions& opts = {});

/// Response functions in c6 = kappa^2 (f1 + i phase) - i kappa (Re[a0] f2 - Im[a0] f3).
/// `phase` is the alpha0-independent imaginary part of c6/kappa^2; it only
/// shifts the fringes and drops out of the visibility.
struct FTriple {
  std::vector<double> taus;
  std::vector<double> f1, f2, f3;
  std::vector<double> phase;
};

inline constexpr double kRealnessTolerance = 1e-9;

FTriple extract_f(const C6Probes& probes, double kappa);
FTriple extract_f(const DimensionlessParams& d, double tau_max, const IntegratorOptions& opts = {});

Complex characteristic_value(const Coeffs& c, double k, double Delta);

/// Max over interior grid times and sample points of
/// |centered d rho/d tau - RHS of the characteristic-function equation| / |rho|.
double pde_residual(const CoeffTrajectory& traj, const DimensionlessParams& d,
                    std::span<const std::pair<double, double>> samples);

}  // namespace mirrorvis
