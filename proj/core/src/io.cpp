#include "mirrorvis/io.hpp"

#include <cmath>

#include <fmt/format.h>

namespace mirrorvis {
namespace {

void preamble(std::ostream& out, const CsvPreamble& pre) {
  if (!pre.echo.empty()) out << '#' << pre.echo << '\n';
  for (const auto& c : pre.comments) out << '#' << c << '\n';
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.11e}", x);
}

void write_trajectory_csv(std::ostream& out, const CoeffTrajectory& traj, const CsvPreamble& pre) {
  preamble(out, pre);
  out << "tau,re_c1,re_c2,re_c3,re_c4,im_c4,re_c5,im_c5,re_c6,im_c6\n";
  for (std::size_t i = 0; i < traj.taus.size(); ++i) {
    const Coeffs& c = traj.states[i];
    out << format_number(traj.taus[i]) << ',' << format_number(c[0].real()) << ','
        << format_number(c[1].real()) << ',' << format_number(c[2].real()) << ','
        << format_number(c[3].real()) << ',' << format_number(c[3].imag()) << ','
        << format_number(c[4].real()) << ',' << format_number(c[4].imag()) << ','
        << format_number(c[5].real()) << ',' << format_number(c[5].imag()) << '\n';
  }
}

void write_visibility_csv(std::ostream& out, std::span<const VisibilitySeries> series,
                          const CsvPreamble& pre) {
  preamble(out, pre);
  out << "tau,t_s,nu,neg_log_nu,route\n";
  for (const auto& s : series) {
    const auto route = to_string(s.route);
    for (std::size_t i = 0; i < s.size(); ++i) {
      out << format_number(s.taus[i]) << ',' << format_number(s.t_seconds[i]) << ','
          << format_number(s.nu[i]) << ',' << format_number(s.neg_log_nu[i]) << ',' << route
          << '\n';
    }
  }
}

void write_scan_csv(std::ostream& out, const ScanGrid& grid, const CsvPreamble& pre) {
  preamble(out, pre);
  out << "T_K,gamma_per_s,Lambda_T,chi,n_bar,nu_t1,neg_log_nu\n";
  for (const auto& c : grid.cells) {
    out << format_number(c.T) << ',' << format_number(c.gamma) << ','
        << format_number(c.Lambda_T) << ',' << format_number(c.chi) << ','
        << format_number(c.n_bar) << ',' << format_number(c.nu_t1) << ','
        << format_number(c.neg_log_nu) << '\n';
  }
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> curve, const CsvPreamble& pre) {
  preamble(out, pre);
  out << "T_K,gamma_per_s\n";
  for (const auto& p : curve) out << format_number(p.T) << ',' << format_number(p.gamma) << '\n';
}

}  // namespace mirrorvis
