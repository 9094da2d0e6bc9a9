#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mirrorvis/params.hpp"
#include "mirrorvis/propagator.hpp"

namespace mirrorvis {

enum class Route { ode_analytic, ode_quadrature, closed_form };

std::string_view to_string(Route r);

/// Exponents above this are reported as nu = 0 rather than underflowing.
inline constexpr double kNegLogClamp = 700.0;

struct VisibilitySeries {
  std::vector<double> taus;
  std::vector<double> t_seconds;
  std::vector<double> nu;
  std::vector<double> neg_log_nu;  // primary output; nu is derived from it
  Route route = Route::ode_analytic;
  /// Closed form only: set when inv_Q > 0.1, outside its leading-order validity.
  bool outside_high_q = false;

  std::size_t size() const { return taus.size(); }
};

/// e^{-c6(tau)} for a single coherent state; its modulus is that state's visibility.
std::vector<Complex> visibility_single(const DimensionlessParams& d, Complex alpha0, double tau_max,
                                       const IntegratorOptions& opts = {});

/// Thermal visibility from the extracted response functions:
///   -ln nu = kappa^2 [f1 + (n_bar / 4)(f2^2 + f3^2)].
VisibilitySeries visibility_thermal(const DimensionlessParams& d, double tau_max,
                                    const IntegratorOptions& opts = {});
VisibilitySeries visibility_thermal(const DimensionlessParams& d, const C6Probes& probes);

inline constexpr int kDefaultQuadratureOrder = 40;

/// Thermal visibility by Gauss-Hermite product quadrature of e^{-c6(alpha0)}
/// against the thermal P function. Independent of the f-function algebra;
/// throws NumericalError if doubling the order moves -ln nu by more than
/// 1e-6 max(1, -ln nu).
VisibilitySeries visibility_quadrature(const DimensionlessParams& d, double tau_max,
                                       int order = kDefaultQuadratureOrder,
                                       const IntegratorOptions& opts = {});
VisibilitySeries visibility_quadrature(const DimensionlessParams& d, const C6Probes& probes,
                                       int order = kDefaultQuadratureOrder);

/// -ln nu from the leading-order-in-1/Q_m closed form at physical time t.
double closed_form_neg_log(const DimensionlessParams& d, double t_seconds);

VisibilitySeries visibility_closed_form(const DimensionlessParams& d,
                                        std::span<const double> t_seconds);

struct FirstRevival {
  double t1_seconds = 0.0;
  double nu = 1.0;
  double neg_log_nu = 0.0;
};

/// Height of the first revival at t1 = 2 pi / omega_tilde, friction neglected.
FirstRevival first_revival(const DimensionlessParams& d);

/// Full width at half maximum (in tau) of the revival peak nearest tau = 2 pi m,
/// with linear interpolation of the half-maximum crossings.
double revival_peak_width(const VisibilitySeries& s, int m);

/// max over tau > 0 of |a - b| / max(|a|, |b|) on neg_log_nu; series must share a grid.
double max_relative_discrepancy(const VisibilitySeries& a, const VisibilitySeries& b);

}  // namespace mirrorvis
