#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mirrorvis/errors.hpp"
#include "mirrorvis/scan.hpp"
#include "oracles.hpp"

using namespace mirrorvis;

namespace {

void expect_same_cell(const ScanCell& a, const ScanCell& b) {
  EXPECT_EQ(a.T, b.T);
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.Lambda_T, b.Lambda_T);
  EXPECT_EQ(a.chi, b.chi);
  EXPECT_EQ(a.n_bar, b.n_bar);
  EXPECT_EQ(a.nu_t1, b.nu_t1);
  EXPECT_EQ(a.neg_log_nu, b.neg_log_nu);
  EXPECT_EQ(a.error, b.error);
}

}  // namespace

TEST(Scan, LogAxisEndpointsAreExact) {
  const auto a = log_axis(1e-10, 1e-2, 200);
  ASSERT_EQ(a.size(), 200u);
  EXPECT_EQ(a.front(), 1e-10);
  EXPECT_EQ(a.back(), 1e-2);
  EXPECT_NEAR(a[1] / a[0], std::pow(1e8, 1.0 / 199.0), 1e-12);
  EXPECT_EQ(log_axis(3.0, 5.0, 1), std::vector<double>{3.0});
  EXPECT_THROW(log_axis(0.0, 1.0, 5), ParameterError);
  EXPECT_THROW(log_axis(2.0, 1.0, 5), ParameterError);
}

TEST(Scan, SingleCellGridEqualsDirectEvaluation) {
  const auto base = reference_setup();
  const auto grid = run_scan(base, {2e-3}, {3e-2}, 1.0, 0.0, 1);
  ASSERT_EQ(grid.cells.size(), 1u);
  expect_same_cell(grid.at(0, 0), scan_cell(base, 2e-3, 3e-2, 1.0, 0.0));
  EXPECT_NEAR(grid.at(0, 0).nu_t1 / 7.16168801591166e-8, 1.0, 1e-9);
}

TEST(Scan, ThermalExtinctionIsSeparableWithoutCoordinateDiffusion) {
  const auto T = log_axis(1e-8, 1e-2, 13);
  const auto g = log_axis(1e-7, 1e-1, 11);
  const auto grid = run_scan(reference_setup(), T, g, 1.0, 0.0, 2);
  for (std::size_t i = 0; i + 1 < T.size(); i += 3) {
    for (std::size_t j = 0; j + 1 < g.size(); j += 2) {
      const double cross = grid.at(i, j).neg_log_nu * grid.at(i + 1, j + 1).neg_log_nu /
                           (grid.at(i, j + 1).neg_log_nu * grid.at(i + 1, j).neg_log_nu);
      EXPECT_NEAR(cross, 1.0, 1e-12);
    }
  }
}

TEST(Scan, ExtinctionGrowsWithFriction) {
  for (double lambda : {0.0, 1.0}) {
    const auto grid = run_scan(reference_setup(), log_axis(1e-10, 1e-2, 9),
                               log_axis(1e-8, 1e-1, 40), 1.0, lambda, 2);
    for (std::size_t i = 0; i < grid.T_values.size(); ++i) {
      for (std::size_t j = 1; j < grid.gamma_values.size(); ++j) {
        EXPECT_GT(grid.at(i, j).neg_log_nu, grid.at(i, j - 1).neg_log_nu);
      }
    }
  }
}

TEST(Scan, OptimalTemperatureValue) {
  EXPECT_NEAR(optimal_temperature(3e3, 1.0) / 3.30745172609806743e-9, 1.0, 1e-12);
  EXPECT_NEAR(optimal_temperature(3e3, 4.0) / optimal_temperature(3e3, 1.0), 2.0, 1e-14);
}

TEST(Scan, TurnbackMinimumBracketsOptimumForEveryFriction) {
  const auto T = log_axis(1e-10, 1e-2, 200);
  const auto g = log_axis(1e-5, 1e-2, 4);
  const auto grid = run_scan(reference_setup(), T, g, 1.0, 1.0, 2);
  const double T_star = optimal_temperature(3e3, 1.0);
  const double cell = std::log(T[1] / T[0]);
  std::size_t first = 0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto shape = column_shape(grid, j);
    EXPECT_TRUE(shape.unimodal) << "gamma " << g[j];
    EXPECT_LE(std::abs(std::log(T[shape.argmin] / T_star)), cell);
    if (j == 0) first = shape.argmin;
    EXPECT_EQ(shape.argmin, first);
  }
}

TEST(Scan, ResultIndependentOfWorkerCount) {
  const auto T = log_axis(1e-9, 1e-3, 17);
  const auto g = log_axis(1e-6, 1e-1, 19);
  const auto one = run_scan(reference_setup(), T, g, 1.3, 1.0, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    const auto many = run_scan(reference_setup(), T, g, 1.3, 1.0, w);
    ASSERT_EQ(many.cells.size(), one.cells.size());
    for (std::size_t k = 0; k < one.cells.size(); ++k) expect_same_cell(many.cells[k], one.cells[k]);
  }
  for (std::size_t i = T.size(); i-- > 0;) {
    for (std::size_t j = g.size(); j-- > 0;) {
      expect_same_cell(one.at(i, j), scan_cell(reference_setup(), T[i], g[j], 1.3, 1.0));
    }
  }
}

TEST(Scan, InvalidCellsAreRecordedNotFatal) {
  const auto grid = run_scan(reference_setup(), {1e-3}, {1.0, 1e4}, 1.0, 0.0, 1);
  EXPECT_EQ(grid.failed_cells(), 1u);
  EXPECT_FALSE(grid.at(0, 0).error.has_value());
  ASSERT_TRUE(grid.at(0, 1).error.has_value());
  EXPECT_TRUE(std::isnan(grid.at(0, 1).neg_log_nu));
}

TEST(Scan, RejectsBadAxes) {
  EXPECT_THROW(run_scan(reference_setup(), {}, {1.0}, 1.0, 0.0), ParameterError);
  EXPECT_THROW(run_scan(reference_setup(), {2.0, 1.0}, {1.0}, 1.0, 0.0), ParameterError);
  EXPECT_THROW(run_scan(reference_setup(), {0.0, 1.0}, {1.0}, 1.0, 1.0), ParameterError);
}

TEST(Scan, CslCurveIsInverseInTemperature) {
  const auto grid = run_scan(reference_setup(), {1e-3, 2e-3, 4e-3}, {1e-3}, 1.0, 0.0, 1);
  const auto curve = csl_threshold_curve(grid, kLambdaCsl);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_NEAR(curve[1].gamma / 1.37488186396397636e-10, 1.0, 1e-12);
  EXPECT_NEAR(curve[0].gamma / curve[1].gamma, 2.0, 1e-12);
  EXPECT_NEAR(curve[1].gamma / curve[2].gamma, 2.0, 1e-12);
  for (const auto& p : curve) {
    const double Lambda_T = oracle::kB * p.T / (2.0 * oracle::hbar * 3e3) * (p.gamma / 3e3);
    EXPECT_NEAR(Lambda_T / kLambdaCsl, 1.0, 1e-12);
  }
}
