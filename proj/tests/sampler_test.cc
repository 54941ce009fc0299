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

#include "aemle/sampler.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "aemle/errors.hpp"
#include "oracles.hpp"

using namespace aemle;

TEST(sampler, uniform_range_and_streams_differ) {
  CounterRng a(1, 0);
  CounterRng b(1, 1);
  CounterRng c(2, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    double x = a.uniform(), y = b.uniform(), z = c.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    same_ab += x == y;
    same_ac += x == z;
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(sampler, uniform_moments) {
  CounterRng rng(123, 9);
  const int n = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sq / n, 1.0 / 3, 0.003);
}

TEST(sampler, edge_probabilities) {
  Schedule s = make_schedule(ScheduleKind::Classical, 3, 50);
  ExperimentData one = sample_counts(amplitude_point(1.0, 0.0), s, 1);
  for (const ExperimentStage& st : one.stages()) EXPECT_EQ(st.hits, st.shots);
  Schedule e = make_schedule(ScheduleKind::EIS, 5, 50);
  ExperimentData zero = sample_counts(amplitude_point(0.0, 0.0), e, 1);
  for (const ExperimentStage& st : zero.stages()) EXPECT_EQ(st.hits, 0);
}

TEST(sampler, deterministic) {
  AmplitudePoint pt = amplitude_point(0.375, 0.067);
  Schedule s = make_schedule(ScheduleKind::EIS, 8, 100);
  EXPECT_EQ(sample_counts(pt, s, 17), sample_counts(pt, s, 17));
  EXPECT_FALSE(sample_counts(pt, s, 17) == sample_counts(pt, s, 18));
  EXPECT_FALSE(sample_counts(pt, s, 17, 0) == sample_counts(pt, s, 17, 1));
}

TEST(sampler, unbiased_against_closed_form) {
  AmplitudePoint pt = amplitude_point(0.375, 0.067);
  Schedule s = make_schedule(ScheduleKind::EIS, 5, 100);
  const int reps = 10000;
  std::vector<double> mean(s.size(), 0.0);
  for (int r = 0; r < reps; ++r) {
    ExperimentData d = sample_counts(pt, s, 2020, r);
    for (std::size_t k = 0; k < s.size(); ++k) {
      mean[k] += static_cast<double>(d[k].hits) / d[k].shots;
    }
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    double p = static_cast<double>(oracle::hit_prob(s[k].depth, 0.375, 0.067));
    double sigma = std::sqrt(p * (1 - p) / (100.0 * reps));
    EXPECT_NEAR(mean[k] / reps, p, 3 * sigma) << "depth " << s[k].depth;
  }
}

TEST(sampler, hit_rate_curve) {
  AmplitudePoint noiseless = amplitude_point(0.375, 0.0);
  std::vector<std::int64_t> depths;
  for (int m = 0; m <= 20; ++m) depths.push_back(m);
  auto curve = hit_rate_curve(noiseless, depths, 8192, 5);
  ASSERT_EQ(curve.size(), depths.size());
  for (auto [m, rate] : curve) {
    double p = static_cast<double>(oracle::hit_prob(m, 0.375, 0.0));
    EXPECT_NEAR(rate, p, 4 * std::sqrt(p * (1 - p) / 8192) + 1e-12);
  }
  std::vector<std::int64_t> deep{60};
  auto tail = hit_rate_curve(amplitude_point(0.375, 0.067), deep, 8192, 5);
  EXPECT_NEAR(tail[0].second, 0.5, 3 * std::sqrt(0.25 / 8192) +
                                        0.5 * std::exp(-0.067 * 60));
  EXPECT_THROW(hit_rate_curve(noiseless, depths, 0, 5), ConfigError);
}

TEST(sampler, run_trials_shape_and_thread_independence) {
  AmplitudePoint pt = amplitude_point(0.375, 0.067);
  MleConfig cfg;
  cfg.divisions_per_stage = 24;
  TrialOptions one{std::nullopt, 1};
  TrialOptions many{std::nullopt, 4};
  TrialBatchResult a = run_trials(pt, ScheduleKind::EIS, 4, 100, 40, 9, cfg, one);
  TrialBatchResult b = run_trials(pt, ScheduleKind::EIS, 4, 100, 40, 9, cfg, many);
  ASSERT_EQ(a.records.size(), 4u);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const TrialRecord& r = a.records[i];
    EXPECT_EQ(r.M, static_cast<int>(i) + 1);
    if (i > 0) EXPECT_GT(r.n_queries, a.records[i - 1].n_queries);
    EXPECT_GE(r.rmse, 0.0);
    EXPECT_EQ(r.failed_trials, 0);
    EXPECT_LE(r.stderr_rmse, r.rmse / std::sqrt(40.0) * std::sqrt(2.0) * 2);
    EXPECT_EQ(r.rmse, b.records[i].rmse);
    EXPECT_EQ(r.mean_kappa_hat, b.records[i].mean_kappa_hat);
    EXPECT_EQ(r.stderr_rmse, b.records[i].stderr_rmse);
  }
  EXPECT_THROW(run_trials(pt, ScheduleKind::EIS, 4, 100, 0, 9), ConfigError);
}

TEST(sampler, noiseless_rmse_scaling) {
  AmplitudePoint pt = amplitude_point(0.375, 0.0);
  MleConfig cfg;
  TrialBatchResult r = run_trials(pt, ScheduleKind::EIS, 7, 100, 150, 3, cfg);
  std::vector<double> x, y;
  for (const TrialRecord& rec : r.records) {
    if (rec.M < 2) continue;
    x.push_back(std::log(static_cast<double>(rec.n_queries)));
    y.push_back(std::log(rec.rmse));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / x.size();
    my += y[i] / y.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  double slope = sxy / sxx;
  EXPECT_GE(slope, -1.05);
  EXPECT_LE(slope, -0.75);
}
