#include "mirrorvis/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mirrorvis/errors.hpp"
#include "mirrorvis/visibility.hpp"

namespace mirrorvis {
namespace {

void require_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ParameterError(std::string(name) + " axis is empty");
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw ParameterError(std::string(name) + " axis must be strictly increasing");
    }
  }
}

}  // namespace

std::size_t ScanGrid::failed_cells() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const ScanCell& c) { return c.error.has_value(); }));
}

std::vector<double> log_axis(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) {
    throw ParameterError("log_axis: need 0 < lo <= hi and n >= 1");
  }
  if (n == 1) return {lo};
  std::vector<double> axis(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    axis[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  axis.front() = lo;
  axis.back() = hi;
  return axis;
}

ScanCell scan_cell(const PhysicalParams& base, double T, double gamma, double kappa,
                   double lambda_qq, const PhysConstants& c) {
  ScanCell cell;
  cell.T = T;
  cell.gamma = gamma;
  try {
    PhysicalParams p = base;
    p.T = T;
    p.gamma = gamma;
    p.lambda_qq = lambda_qq;
    DimensionlessParams d = derive_dimensionless(p, c);
    d.kappa = kappa;
    const FirstRevival r = first_revival(d);
    cell.Lambda_T = d.Lambda_T;
    cell.chi = d.chi;
    cell.n_bar = d.n_bar;
    cell.nu_t1 = r.nu;
    cell.neg_log_nu = r.neg_log_nu;
  } catch (const std::exception& e) {
    const double nan = std::nan("");
    cell.Lambda_T = cell.chi = cell.n_bar = cell.nu_t1 = cell.neg_log_nu = nan;
    cell.error = e.what();
  }
  return cell;
}

ScanGrid run_scan(const PhysicalParams& base, const std::vector<double>& T_axis,
                  const std::vector<double>& gamma_axis, double kappa, double lambda_qq,
                  unsigned workers, const PhysConstants& c) {
  require_axis(T_axis, "T");
  require_axis(gamma_axis, "gamma");
  if (lambda_qq > 0.0 && !(T_axis.front() > 0.0)) {
    throw ParameterError("scan: all T must be > 0 when lambda_qq > 0");
  }

  ScanGrid grid;
  grid.T_values = T_axis;
  grid.gamma_values = gamma_axis;
  grid.omega_m = base.omega_m;
  grid.kappa = kappa;
  grid.lambda_qq = lambda_qq;
  grid.Lambda_nonenv = base.Lambda_nonenv;
  const std::size_t total = T_axis.size() * gamma_axis.size();
  grid.cells.resize(total);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::size_t iT = i / gamma_axis.size();
      const std::size_t iG = i % gamma_axis.size();
      grid.cells[i] = scan_cell(base, T_axis[iT], gamma_axis[iG], kappa, lambda_qq, c);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return grid;
}

ColumnShape column_shape(const ScanGrid& grid, std::size_t iGamma) {
  const std::size_t n = grid.T_values.size();
  ColumnShape shape;
  for (std::size_t i = 1; i < n; ++i) {
    if (grid.at(i, iGamma).neg_log_nu < grid.at(shape.argmin, iGamma).neg_log_nu) shape.argmin = i;
  }
  shape.unimodal = true;
  for (std::size_t i = 1; i < n; ++i) {
    const double prev = grid.at(i - 1, iGamma).neg_log_nu;
    const double cur = grid.at(i, iGamma).neg_log_nu;
    const bool ok = i <= shape.argmin ? cur < prev : cur > prev;
    shape.unimodal = shape.unimodal && ok;
  }
  return shape;
}

std::vector<CurvePoint> csl_threshold_curve(const ScanGrid& grid, double Lambda_CSL,
                                            const PhysConstants& c) {
  if (!(Lambda_CSL > 0.0)) throw ParameterError("csl_threshold_curve: Lambda_CSL must be > 0");
  std::vector<CurvePoint> curve;
  curve.reserve(grid.T_values.size());
  const double w2 = grid.omega_m * grid.omega_m;
  for (double T : grid.T_values) {
    curve.push_back({T, 2.0 * c.hbar * w2 * Lambda_CSL / (c.k_B * T)});
  }
  return curve;
}

double optimal_temperature(double omega_m, double lambda_qq, const PhysConstants& c) {
  if (!(lambda_qq >= 1.0)) throw ParameterError("optimal_temperature: lambda_qq must be >= 1");
  if (!(omega_m > 0.0)) throw ParameterError("optimal_temperature: omega_m must be > 0");
  return c.hbar * omega_m / c.k_B * std::sqrt(lambda_qq / 48.0);
}

}  // namespace mirrorvis
