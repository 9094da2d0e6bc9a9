#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mirrorvis/propagator.hpp"
#include "mirrorvis/scan.hpp"
#include "mirrorvis/visibility.hpp"

namespace mirrorvis {

/// Scientific notation with 12 significant digits; "nan" for NaN.
std::string format_number(double x);

/// Every writer starts with "#" + `echo` when `echo` is non-empty.
/// Extra comment lines (without the leading '#') follow it.
struct CsvPreamble {
  std::string echo;
  std::vector<std::string> comments;
};

/// Header: tau,re_c1,re_c2,re_c3,re_c4,im_c4,re_c5,im_c5,re_c6,im_c6
void write_trajectory_csv(std::ostream& out, const CoeffTrajectory& traj,
                          const CsvPreamble& pre = {});

/// Header: tau,t_s,nu,neg_log_nu,route. Series are written back to back.
void write_visibility_csv(std::ostream& out, std::span<const VisibilitySeries> series,
                          const CsvPreamble& pre = {});

/// Header: T_K,gamma_per_s,Lambda_T,chi,n_bar,nu_t1,neg_log_nu
void write_scan_csv(std::ostream& out, const ScanGrid& grid, const CsvPreamble& pre = {});

/// Header: T_K,gamma_per_s
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve,
                     const CsvPreamble& pre = {});

}  // namespace mirrorvis
