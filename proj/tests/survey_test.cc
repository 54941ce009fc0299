// Copyright 2026 The aemle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aemle/survey.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aemle/errors.hpp"

using namespace aemle;

TEST(survey, anomaly_schedule_truncates_at_mbar) {
  Schedule s = anomaly_schedule(1e-2);
  EXPECT_EQ(s.kind(), ScheduleKind::EIS);
  EXPECT_EQ(s.max_depth(), 32);
  EXPECT_EQ(anomaly_schedule(1e-1).max_depth(), 4);
  // depth 2^18 is the last power of two below mbar(1e-6) = 499999
  EXPECT_EQ(anomaly_schedule(1e-6).size(), 20u);
  EXPECT_EQ(anomaly_schedule(1e-9).size(), 26u);
}

TEST(survey, density_stderr_and_seed_stability) {
  Schedule s = anomaly_schedule(1e-3);
  DensityResult a = anomaly_density(1e-3, 5000, 0.9, s, 1, 1);
  DensityResult b = anomaly_density(1e-3, 5000, 0.9, s, 1, 4);
  DensityResult c = anomaly_density(1e-3, 5000, 0.9, s, 2, 4);
  EXPECT_EQ(a.density_percent, b.density_percent);
  EXPECT_EQ(a.stderr_percent, b.stderr_percent);
  double rho = a.density_percent / 100;
  EXPECT_NEAR(a.stderr_percent, 100 * std::sqrt(rho * (1 - rho) / a.samples),
              1e-12);
  EXPECT_GE(a.density_percent, 0.0);
  EXPECT_LE(a.density_percent, 100.0);
  double combined = std::hypot(a.stderr_percent, c.stderr_percent);
  EXPECT_LE(std::abs(a.density_percent - c.density_percent), 3 * combined);
  EXPECT_EQ(a.samples + a.skipped, 5000);
  EXPECT_EQ(a.schedule_descriptor, s.descriptor());
}

TEST(survey, density_errors) {
  Schedule s = anomaly_schedule(1e-3);
  EXPECT_THROW(anomaly_density(1e-3, 999, 0.9, s, 1), ConfigError);
  EXPECT_THROW(anomaly_density(1e-3, 1000, 1.0, s, 1), ConfigError);
  EXPECT_THROW(anomaly_density(1e-3, 1000, 0.0, s, 1), ConfigError);
}

TEST(survey, no_anomalies_at_high_noise) {
  DensityResult r =
      anomaly_density(1e-1, 10000, 0.9, anomaly_schedule(1e-1), 3);
  EXPECT_EQ(r.density_percent, 0.0);
}

TEST(survey, error_vs_queries_rows) {
  std::vector<double> kappas{0.0, 0.01};
  auto rows = error_vs_queries(0.375, kappas, 12, 100);
  ASSERT_EQ(rows.size(), 2u * 13 * 2);
  bool saw_beyond = false;
  for (const QueryRow& r : rows) {
    if (r.kind == ScheduleKind::Classical) {
      EXPECT_NEAR(r.epsilon_min,
                  std::sqrt(0.375 * 0.625 / static_cast<double>(r.n_queries)),
                  1e-15);
    }
    if (r.kappa == 0.0) EXPECT_FALSE(r.beyond_mbar);
    if (r.kappa == 0.01 && r.kind == ScheduleKind::EIS) {
      EXPECT_EQ(r.beyond_mbar, r.M >= 7);
      saw_beyond = saw_beyond || r.beyond_mbar;
    }
  }
  EXPECT_TRUE(saw_beyond);
  EXPECT_EQ(noise_query_limit(0.01, 100), 13300);
  EXPECT_EQ(noise_query_limit(0.001, 100), 103200);
}

TEST(survey, contour_shape_and_quasi_linearity) {
  std::vector<double> a_grid{0.3, 0.375};
  std::vector<double> k_grid{1e-5, 1e-4, 1e-3};
  ContourGrid g = error_vs_kappa_contour(a_grid, k_grid);
  ASSERT_EQ(g.epsilon_min.size(), 2u);
  ASSERT_EQ(g.epsilon_min[0].size(), 3u);
  for (const auto& row : g.epsilon_min) {
    for (std::size_t j = 1; j < row.size(); ++j) {
      double ratio = row[j] / row[j - 1];
      EXPECT_GT(ratio, 10.0 / 3);
      EXPECT_LT(ratio, 30.0);
    }
  }
  std::vector<double> bad{0.0};
  EXPECT_THROW(error_vs_kappa_contour(bad, k_grid), DomainError);
}

TEST(survey, segments_counter) {
  std::vector<AnomalyTracePoint> t{{0, 0.1, 0}, {0, 0.95, 0}, {0, 0.99, 0},
                                   {0, 0.2, 0}, {0, 0.91, 0}, {0, NAN, 0}};
  EXPECT_EQ(count_anomalous_segments(t), 2);
  EXPECT_EQ(count_anomalous_segments(t, 0.98), 1);
}

TEST(survey, segment_count_scales_inversely_with_kappa) {
  std::vector<double> grid = open_grid(0.0, 1.0, 200000);
  auto count_at = [&](double kappa) {
    auto trace = anomaly_trace(grid, kappa, anomaly_schedule(kappa));
    return count_anomalous_segments(trace);
  };
  int c2 = count_at(1e-2);
  int c3 = count_at(1e-3);
  int c4 = count_at(1e-4);
  double r1 = static_cast<double>(c3) / c2;
  double r2 = static_cast<double>(c4) / c3;
  EXPECT_GE(r1, 5.0);
  EXPECT_LE(r1, 20.0);
  EXPECT_GE(r2, 5.0);
  EXPECT_LE(r2, 20.0);
}

TEST(survey, grids) {
  auto g = open_grid(0.0, 1.0, 3);
  EXPECT_DOUBLE_EQ(g[0], 0.25);
  EXPECT_DOUBLE_EQ(g[2], 0.75);
  auto l = log_grid(1e-3, 1e-1, 3);
  EXPECT_NEAR(l[1], 1e-2, 1e-15);
  EXPECT_EQ(l[2], 1e-1);
}
