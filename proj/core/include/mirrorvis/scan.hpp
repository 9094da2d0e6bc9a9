#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mirrorvis/params.hpp"

namespace mirrorvis {

struct ScanCell {
  double T = 0.0;
  double gamma = 0.0;
  double Lambda_T = 0.0;
  double chi = 0.0;
  double n_bar = 0.0;
  double nu_t1 = 0.0;
  double neg_log_nu = 0.0;
  std::optional<std::string> error;  // set when this cell could not be evaluated
};

/// First-revival visibility over a (T, gamma) grid. Cells are stored
/// row-major with temperature as the outer index.
struct ScanGrid {
  std::vector<double> T_values;
  std::vector<double> gamma_values;
  double omega_m = 0.0;
  double kappa = 1.0;
  double lambda_qq = 0.0;
  double Lambda_nonenv = 0.0;
  std::vector<ScanCell> cells;

  const ScanCell& at(std::size_t iT, std::size_t iGamma) const {
    return cells[iT * gamma_values.size() + iGamma];
  }
  std::size_t failed_cells() const;
};

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_axis(double lo, double hi, std::size_t n);

/// One grid point: derive the dimensionless set for (T, gamma), force kappa,
/// evaluate the first revival. Errors are captured in the cell.
ScanCell scan_cell(const PhysicalParams& base, double T, double gamma, double kappa,
                   double lambda_qq, const PhysConstants& c = {});

/// workers = 0 uses the available hardware parallelism. The result does not
/// depend on the worker count.
ScanGrid run_scan(const PhysicalParams& base, const std::vector<double>& T_axis,
                  const std::vector<double>& gamma_axis, double kappa, double lambda_qq,
                  unsigned workers = 0, const PhysConstants& c = {});

/// Shape of neg_log_nu along one fixed-gamma column (in increasing T).
struct ColumnShape {
  std::size_t argmin = 0;
  bool unimodal = false;  // strictly decreasing up to argmin, strictly increasing after
};

ColumnShape column_shape(const ScanGrid& grid, std::size_t iGamma);

struct CurvePoint {
  double T = 0.0;
  double gamma = 0.0;
};

/// Locus Lambda_T(T, gamma) = Lambda_CSL over the grid's temperatures:
/// gamma(T) = 2 hbar omega_m^2 Lambda_CSL / (k_B T). Below it the thermal
/// background is weaker than the non-environmental strength.
std::vector<CurvePoint> csl_threshold_curve(const ScanGrid& grid, double Lambda_CSL,
                                            const PhysConstants& c = {});

/// Temperature minimising the first-revival extinction at fixed gamma,
/// (hbar omega_m / k_B) sqrt(lambda_qq / 48).
double optimal_temperature(double omega_m, double lambda_qq, const PhysConstants& c = {});

}  // namespace mirrorvis
