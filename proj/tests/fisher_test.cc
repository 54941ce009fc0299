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

#include "aemle/fisher.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aemle/errors.hpp"
#include "aemle/estimator.hpp"
#include "oracles.hpp"

using namespace aemle;

namespace {

Schedule to_schedule(const std::vector<oracle::Depth>& stages) {
  std::vector<Stage> out;
  for (const auto& s : stages) out.push_back({s.m, s.n});
  return Schedule::from_stages(out);
}

double sin2_pi8() {
  double s = std::sin(std::numbers::pi / 8);
  return s * s;
}

}  // namespace

TEST(fisher, classical_single_stage) {
  for (double kappa : {0.0, 0.1, 2.0}) {
    FisherMatrix f = fisher_matrix(amplitude_point(0.375, kappa),
                                   Schedule::from_stages({{0, 100}}));
    EXPECT_NEAR(f.i11, 100.0 / (0.375 * 0.625), 1e-9);
    EXPECT_NEAR(f.i11, 426.6666666666667, 1e-9);
    EXPECT_EQ(f.i12, 0.0);
    EXPECT_EQ(f.i22, 0.0);
  }
}

TEST(fisher, noiseless_i11_closed_form) {
  double a = 0.3;
  AmplitudePoint pt = amplitude_point(a, 0.0);
  Schedule s = make_schedule(ScheduleKind::EIS, 2, 100);
  double s2t = std::sin(2 * pt.theta());
  double expect = 0;
  for (const Stage& st : s.stages()) {
    double odd = 2.0 * st.depth + 1;
    expect += 4.0 * st.shots * odd * odd / (s2t * s2t);
  }
  EXPECT_NEAR(fisher_matrix(pt, s).i11 / expect, 1.0, 1e-12);
}

TEST(fisher, brute_force_two_stage) {
  std::vector<oracle::Depth> stages{{0, 2}, {1, 2}};
  for (double kappa : {0.0, 0.05, 0.3}) {
    oracle::Fisher ref = oracle::brute_force_fisher(stages, 0.375, kappa);
    FisherMatrix f =
        fisher_matrix(amplitude_point(0.375, kappa), to_schedule(stages));
    double scale = std::sqrt(static_cast<double>(ref.i11 * ref.i22));
    EXPECT_NEAR(f.i11 / static_cast<double>(ref.i11), 1.0, 1e-8);
    EXPECT_NEAR(f.i22 / static_cast<double>(ref.i22), 1.0, 1e-8);
    EXPECT_NEAR(f.i12, static_cast<double>(ref.i12), 1e-8 * scale);
  }
}

TEST(fisher, finite_difference_score_covariance) {
  // Central-difference scores of the library log-likelihood on sampled data;
  // h-vectors come from std::binomial_distribution, not the library sampler.
  AmplitudePoint pt = amplitude_point(0.3, 0.05);
  Schedule s = make_schedule(ScheduleKind::EIS, 3, 10);
  std::vector<std::binomial_distribution<int>> draws;
  for (const Stage& st : s.stages()) {
    draws.emplace_back(static_cast<int>(st.shots),
                       static_cast<double>(oracle::hit_prob(
                           st.depth, pt.a(), pt.kappa())));
  }
  std::mt19937_64 rng(2024);
  const double h = 1e-6;
  const int samples = 1000000;
  double s11 = 0, s12 = 0, s22 = 0;
  std::vector<ExperimentStage> stages(s.size());
  for (int i = 0; i < samples; ++i) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      stages[k] = {s[k].depth, s[k].shots, draws[k](rng)};
    }
    ExperimentData d = ExperimentData::from_stages(stages);
    double ga = (log_likelihood(d, pt.a() + h, pt.kappa()) -
                 log_likelihood(d, pt.a() - h, pt.kappa())) / (2 * h);
    double gk = (log_likelihood(d, pt.a(), pt.kappa() + h) -
                 log_likelihood(d, pt.a(), pt.kappa() - h)) / (2 * h);
    s11 += ga * ga;
    s12 += ga * gk;
    s22 += gk * gk;
  }
  s11 /= samples;
  s12 /= samples;
  s22 /= samples;
  FisherMatrix f = fisher_matrix(pt, s);
  EXPECT_NEAR(s11 / f.i11, 1.0, 0.02);
  EXPECT_NEAR(s22 / f.i22, 1.0, 0.02);
  EXPECT_NEAR(s12, f.i12, 0.02 * std::sqrt(f.i11 * f.i22));
}

TEST(fisher, errors) {
  Schedule s = make_schedule(ScheduleKind::EIS, 3, 10);
  EXPECT_THROW(fisher_matrix(amplitude_point(0.0, 0.1), s), SingularPointError);
  EXPECT_THROW(fisher_matrix(amplitude_point(1.0, 0.1), s), SingularPointError);
  // a = 1/4 at m = 1 sits on P = 1 only up to rounding, so the summand
  // stays finite instead of tripping the degenerate-term guard
  FisherMatrix near = fisher_matrix(amplitude_point(0.25, 0.0),
                                    Schedule::from_stages({{0, 1}, {1, 1}}));
  EXPECT_TRUE(std::isfinite(near.i11));
  EXPECT_THROW(anomality(amplitude_point(0.3, 0.1),
                         make_schedule(ScheduleKind::Classical, 4, 10)),
               DegenerateScheduleError);
  EXPECT_THROW(saturation_floor(amplitude_point(0.3, 0.0), s), DomainError);
  EXPECT_THROW(max_grover_depth(0.0), DomainError);
  EXPECT_THROW(max_grover_depth(-1.0), DomainError);
}

TEST(fisher, classical_bound) {
  for (double a : {0.05, 0.375, 0.7}) {
    for (int M : {0, 3, 9}) {
      Schedule s = make_schedule(ScheduleKind::Classical, M, 100);
      CrBoundResult r = cr_lower_bound(amplitude_point(a, 0.02), s);
      double nq = static_cast<double>(total_queries(s));
      EXPECT_NEAR(r.epsilon_min, std::sqrt(a * (1 - a) / nq), 1e-12);
      EXPECT_TRUE(r.fallback_used);
      EXPECT_FALSE(r.identifiable);
    }
  }
  CrBoundResult r = cr_lower_bound(amplitude_point(0.375, 0.0),
                                   Schedule::from_stages({{0, 100}}));
  EXPECT_NEAR(r.epsilon_min, 0.0484122918275927, 1e-12);
}

TEST(fisher, heisenberg_slope) {
  std::vector<double> x, y;
  for (int M = 3; M <= 14; ++M) {
    Schedule s = make_schedule(ScheduleKind::EIS, M, 100);
    x.push_back(std::log(static_cast<double>(total_queries(s))));
    y.push_back(std::log(
        cr_lower_bound(amplitude_point(0.375, 0.0), s).epsilon_min));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  double slope = sxy / sxx;
  EXPECT_GE(slope, -1.05);
  EXPECT_LE(slope, -0.85);
}

TEST(fisher, plateau_non_increasing) {
  AmplitudePoint pt = amplitude_point(0.375, 0.01);
  double prev = INFINITY;
  for (int M = 0; M <= 30; ++M) {
    double e = cr_lower_bound(pt, make_schedule(ScheduleKind::EIS, M, 100))
                   .epsilon_min;
    EXPECT_LE(e, prev * (1 + 1e-12));
    EXPECT_GT(e, 0.0);
    prev = e;
  }
}

TEST(fisher, grid_invariants) {
  std::vector<Schedule> schedules{
      make_schedule(ScheduleKind::EIS, 6, 100),
      make_schedule(ScheduleKind::LIS, 8, 50),
      make_schedule(ScheduleKind::PowerBase, 7, 100, 2.5),
      make_schedule(ScheduleKind::EIS, 12, 100),
  };
  int checked = 0;
  for (int ia = 1; ia < 50; ++ia) {
    double a = ia / 50.0;
    for (double kappa : {1e-4, 1e-3, 1e-2, 0.067, 0.3, 1.0}) {
      AmplitudePoint pt = amplitude_point(a, kappa);
      for (const Schedule& s : schedules) {
        FisherMatrix f = fisher_matrix(pt, s);
        EXPECT_GE(f.i11, 0.0);
        EXPECT_GE(f.i22, 0.0);
        EXPECT_GE(f.det(), -1e-9 * f.i11 * f.i22);
        CrBoundResult r = cr_lower_bound(f);
        EXPECT_GE(r.epsilon_min * (1 + 1e-12), 1.0 / std::sqrt(f.i11));
        EXPECT_GE(r.epsilon_min * (1 + 1e-12), saturation_floor(pt, s));
        double beta = anomality(f);
        EXPECT_GE(beta, 0.0);
        EXPECT_LE(beta, 1.0);
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 49 * 6 * 4);
}

TEST(fisher, zero_shot_stage_is_inert) {
  AmplitudePoint pt = amplitude_point(0.42, 0.02);
  Schedule s = make_schedule(ScheduleKind::EIS, 5, 100);
  double before = cr_lower_bound(pt, s).epsilon_min;
  EXPECT_EQ(cr_lower_bound(pt, s.with_stage({64, 0})).epsilon_min, before);
}

TEST(fisher, saturation_floor_converges) {
  AmplitudePoint pt = amplitude_point(0.375, 0.01);
  double prev = INFINITY;
  double last_gap = INFINITY;
  for (int M = 8; M <= 20; ++M) {
    double floor = saturation_floor(pt, make_schedule(ScheduleKind::EIS, M, 100));
    EXPECT_GT(floor, 0.0);
    EXPECT_LE(floor, prev);
    if (std::isfinite(prev)) {
      double gap = prev - floor;
      EXPECT_LE(gap, last_gap);
      last_gap = gap;
    }
    prev = floor;
  }
  EXPECT_LT(last_gap, 1e-12);
}

TEST(fisher, max_grover_depth_values) {
  EXPECT_EQ(max_grover_depth(0.005), 99);
  EXPECT_EQ(max_grover_depth(std::log(2.0)), 0);
  EXPECT_EQ(max_grover_depth(0.1), 4);
  EXPECT_EQ(max_grover_depth(0.001), 499);
  for (double kappa = 1e-6; kappa < 3; kappa *= 1.37) {
    std::int64_t m = max_grover_depth(kappa);
    double loss = 1 - std::exp(-kappa);
    EXPECT_LE((2.0 * m + 1) * loss, 1.0);
    EXPECT_GT((2.0 * (m + 1) + 1) * loss, 1.0);
  }
}

TEST(fisher, anomaly_at_sin2_pi8) {
  double a = sin2_pi8();
  AmplitudePoint pt = amplitude_point(a, 1e-3);
  Schedule eis = noise_limited_schedule(ScheduleKind::EIS, 1e-3, 100);
  Schedule pb =
      noise_limited_schedule(ScheduleKind::PowerBase, 1e-3, 100, 2.5);
  EXPECT_GT(anomality(pt, eis), 0.9);
  EXPECT_LT(anomality(pt, pb), 0.9);
  EXPECT_LT(cr_lower_bound(pt, pb).epsilon_min,
            cr_lower_bound(pt, eis).epsilon_min / 3);
}

TEST(fisher, nuisance_inflation_identities) {
  AmplitudePoint pt = amplitude_point(0.3, 0.01);
  Schedule s = make_schedule(ScheduleKind::EIS, 3, 100);
  FisherMatrix f = fisher_matrix(pt, s);
  double eps = cr_lower_bound(f).epsilon_min;
  EXPECT_NEAR(nuisance_inflation(pt, s, 1.0), eps * eps, 1e-12 * eps * eps);
  EXPECT_NEAR(nuisance_inflation(pt, s, 0.0), 1.0 / f.i11, 1e-9 / f.i11);
  double beta = anomality(f);
  EXPECT_LT(beta, 0.1);
  EXPECT_LT(nuisance_inflation(pt, s, 10.0) / (eps * eps), 1.9);
  EXPECT_THROW(nuisance_inflation(pt, s, -1.0), DomainError);
}

TEST(fisher, noise_limited_schedule_shapes) {
  Schedule t = noise_limited_schedule(ScheduleKind::EIS, 0.01, 100);
  EXPECT_EQ(t.max_depth(), 32);
  EXPECT_EQ(total_queries(t), 13300);
  Schedule c = noise_limited_schedule(ScheduleKind::EIS, 0.01, 100,
                                      std::nullopt, DepthCap::CapAtMbar);
  EXPECT_EQ(c.max_depth(), 49);
  EXPECT_EQ(c.size(), t.size() + 1);
  Schedule p =
      noise_limited_schedule(ScheduleKind::PowerBase, 1e-3, 100, 2.5);
  EXPECT_LE(p.max_depth(), max_grover_depth(1e-3));
  EXPECT_THROW(noise_limited_schedule(ScheduleKind::PowerBase, 1e-3, 100),
               ConfigError);
}

TEST(fisher, required_noise) {
  double k4 = required_noise_for_error(1e-4, 100, ScheduleKind::EIS);
  EXPECT_GE(k4, 3e-4);
  EXPECT_LE(k4, 3e-3);
  double k3 = required_noise_for_error(1e-3, 100, ScheduleKind::EIS);
  double k5 = required_noise_for_error(1e-5, 100, ScheduleKind::EIS);
  double k2 = required_noise_for_error(1e-2, 100, ScheduleKind::EIS);
  for (double ratio : {k3 / k2, k4 / k3, k5 / k4}) {
    EXPECT_GE(ratio, 0.05);
    EXPECT_LE(ratio, 0.2);
  }
  RequiredNoiseOptions opts;
  EXPECT_EQ(required_noise_for_error(0.4, 100, ScheduleKind::EIS, opts),
            opts.kappa_max);
  opts.kappa_min = 1e-3;
  EXPECT_THROW(required_noise_for_error(1e-6, 100, ScheduleKind::EIS, opts),
               NotAchievableError);
}
