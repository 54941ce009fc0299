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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aemle/fisher.hpp"
#include "aemle/model.hpp"

namespace aemle {

struct DensityResult {
  double kappa = 0.0;
  double density_percent = 0.0;
  double stderr_percent = 0.0;
  std::int64_t samples = 0;
  double threshold = kAnomalyThreshold;
  /// Samples dropped because a sat within 1e-9 of 0 or 1 or the Fisher
  /// matrix could not be formed. They do not count towards `samples`.
  std::int64_t skipped = 0;
  std::string schedule_descriptor;
};

/// EIS with N_k = shots, truncated at the last depth ≤ m̄(κ), M ≤ max_M.
Schedule anomaly_schedule(double kappa, std::int64_t shots = 100,
                          int max_M = 25);

/// Fraction of uniformly drawn a with β(a, κ) > threshold. Sample i draws a
/// from stream i, so the result is independent of `threads`.
DensityResult anomaly_density(double kappa, std::int64_t samples,
                              double threshold, const Schedule& schedule,
                              std::uint64_t seed, unsigned threads = 0);

struct QueryRow {
  double kappa = 0.0;
  ScheduleKind kind = ScheduleKind::EIS;
  int M = 0;
  std::int64_t n_queries = 0;
  double epsilon_min = 0.0;
  /// The schedule reaches a depth above m̄(κ).
  bool beyond_mbar = false;
};

/// ε_min against N_q for EIS with M = 0..M_max at every κ, plus a classical
/// row at the same N_q.
std::vector<QueryRow> error_vs_queries(double a, std::span<const double> kappas,
                                       int M_max, std::int64_t shots);

/// N_q of the longest EIS schedule whose depths stay within m̄(κ).
std::int64_t noise_query_limit(double kappa, std::int64_t shots);

struct ContourGrid {
  std::vector<double> a_values;
  std::vector<double> kappa_values;
  /// Row i belongs to a_values[i]; NaN where the bound is undefined.
  std::vector<std::vector<double>> epsilon_min;
};

/// ε_min(a, κ) with the per-κ noise-limited EIS schedule
/// (`anomaly_schedule(κ, shots, max_M)`).
ContourGrid error_vs_kappa_contour(std::span<const double> a_grid,
                                   std::span<const double> kappa_grid,
                                   std::int64_t shots = 100, int max_M = 25,
                                   unsigned threads = 0);

struct AnomalyTracePoint {
  double a = 0.0;
  double beta = 0.0;
  double epsilon_min = 0.0;
};

/// β and ε_min along an a-grid for a fixed schedule.
std::vector<AnomalyTracePoint> anomaly_trace(std::span<const double> a_grid,
                                             double kappa,
                                             const Schedule& schedule,
                                             unsigned threads = 0);

/// Number of maximal runs of consecutive grid points with β > threshold.
int count_anomalous_segments(std::span<const AnomalyTracePoint> trace,
                             double threshold = kAnomalyThreshold);

/// `count` points spread evenly over the open interval (low, high).
std::vector<double> open_grid(double low, double high, std::size_t count);

/// `count` log-spaced points from low to high inclusive.
std::vector<double> log_grid(double low, double high, std::size_t count);

}  // namespace aemle
