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

#include <cmath>
#include <limits>

#include "aemle/errors.hpp"
#include "aemle/parallel.hpp"
#include "aemle/sampler.hpp"

namespace aemle {

namespace {

constexpr double kEdgeExclusion = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

Schedule anomaly_schedule(double kappa, std::int64_t shots, int max_M) {
  return noise_limited_schedule(ScheduleKind::EIS, kappa, shots, std::nullopt,
                                DepthCap::Truncate, max_M);
}

DensityResult anomaly_density(double kappa, std::int64_t samples,
                              double threshold, const Schedule& schedule,
                              std::uint64_t seed, unsigned threads) {
  if (samples < 1000) throw ConfigError("samples must be >= 1000");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError("threshold must lie in (0, 1)");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kappa must be finite and >= 0");
  }
  // 0 = below, 1 = above, 2 = skipped
  std::vector<unsigned char> outcome(static_cast<std::size_t>(samples), 0);
  parallel_for(outcome.size(), threads, [&](std::size_t i) {
    CounterRng rng(seed, i);
    const double a = rng.uniform();
    if (a < kEdgeExclusion || a > 1.0 - kEdgeExclusion) {
      outcome[i] = 2;
      return;
    }
    try {
      const double beta = anomality(amplitude_point(a, kappa), schedule);
      if (!std::isfinite(beta)) {
        outcome[i] = 2;
      } else if (beta > threshold) {
        outcome[i] = 1;
      }
    } catch (const Error&) {
      outcome[i] = 2;
    }
  });
  std::int64_t above = 0;
  std::int64_t skipped = 0;
  for (unsigned char o : outcome) {
    above += o == 1;
    skipped += o == 2;
  }
  DensityResult result;
  result.kappa = kappa;
  result.samples = samples - skipped;
  result.skipped = skipped;
  result.threshold = threshold;
  result.schedule_descriptor = schedule.descriptor();
  if (result.samples > 0) {
    const double rho =
        static_cast<double>(above) / static_cast<double>(result.samples);
    result.density_percent = 100.0 * rho;
    result.stderr_percent =
        100.0 * std::sqrt(rho * (1.0 - rho) / static_cast<double>(result.samples));
  }
  return result;
}

std::vector<QueryRow> error_vs_queries(double a, std::span<const double> kappas,
                                       int M_max, std::int64_t shots) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("a must lie in (0, 1)");
  if (M_max < 0) throw ConfigError("M_max must be >= 0");
  std::vector<QueryRow> rows;
  for (double kappa : kappas) {
    const AmplitudePoint point = amplitude_point(a, kappa);
    const std::int64_t mbar =
        kappa > 0.0 ? max_grover_depth(kappa)
                    : std::numeric_limits<std::int64_t>::max();
    for (int M = 0; M <= M_max; ++M) {
      const Schedule schedule = make_schedule(ScheduleKind::EIS, M, shots);
      const std::int64_t nq = total_queries(schedule);
      QueryRow quantum{kappa, ScheduleKind::EIS, M, nq, kNaN,
                       schedule.max_depth() > mbar};
      try {
        quantum.epsilon_min = cr_lower_bound(point, schedule).epsilon_min;
      } catch (const Error&) {
      }
      rows.push_back(quantum);
      rows.push_back({kappa, ScheduleKind::Classical, M, nq,
                      std::sqrt(a * (1.0 - a) / static_cast<double>(nq)),
                      false});
    }
  }
  return rows;
}

std::int64_t noise_query_limit(double kappa, std::int64_t shots) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
  return total_queries(anomaly_schedule(kappa, shots, 62));
}

ContourGrid error_vs_kappa_contour(std::span<const double> a_grid,
                                   std::span<const double> kappa_grid,
                                   std::int64_t shots, int max_M,
                                   unsigned threads) {
  for (double a : a_grid) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("a grid must lie in (0, 1)");
  }
  for (double kappa : kappa_grid) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
      throw DomainError("kappa grid must be positive and finite");
    }
  }
  ContourGrid grid;
  grid.a_values.assign(a_grid.begin(), a_grid.end());
  grid.kappa_values.assign(kappa_grid.begin(), kappa_grid.end());
  grid.epsilon_min.assign(a_grid.size(),
                          std::vector<double>(kappa_grid.size(), kNaN));
  std::vector<Schedule> schedules;
  schedules.reserve(kappa_grid.size());
  for (double kappa : kappa_grid) {
    schedules.push_back(anomaly_schedule(kappa, shots, max_M));
  }
  parallel_for(a_grid.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < kappa_grid.size(); ++j) {
      try {
        grid.epsilon_min[i][j] =
            cr_lower_bound(amplitude_point(a_grid[i], kappa_grid[j]),
                           schedules[j])
                .epsilon_min;
      } catch (const Error&) {
      }
    }
  });
  return grid;
}

std::vector<AnomalyTracePoint> anomaly_trace(std::span<const double> a_grid,
                                             double kappa,
                                             const Schedule& schedule,
                                             unsigned threads) {
  std::vector<AnomalyTracePoint> trace(a_grid.size());
  parallel_for(a_grid.size(), threads, [&](std::size_t i) {
    AnomalyTracePoint& out = trace[i];
    out.a = a_grid[i];
    out.beta = kNaN;
    out.epsilon_min = kNaN;
    try {
      const FisherMatrix fisher =
          fisher_matrix(amplitude_point(out.a, kappa), schedule);
      out.beta = anomality(fisher);
      out.epsilon_min = cr_lower_bound(fisher).epsilon_min;
    } catch (const Error&) {
    }
  });
  return trace;
}

int count_anomalous_segments(std::span<const AnomalyTracePoint> trace,
                             double threshold) {
  int segments = 0;
  bool inside = false;
  for (const AnomalyTracePoint& p : trace) {
    const bool above = p.beta > threshold;
    if (above && !inside) ++segments;
    inside = above;
  }
  return segments;
}

std::vector<double> open_grid(double low, double high, std::size_t count) {
  std::vector<double> out(count);
  const double step = (high - low) / static_cast<double>(count + 1);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = low + step * static_cast<double>(i + 1);
  }
  return out;
}

std::vector<double> log_grid(double low, double high, std::size_t count) {
  if (!(low > 0.0 && high >= low)) throw DomainError("invalid log grid range");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = low;
    return out;
  }
  const double span = std::log(high / low);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = low * std::exp(span * static_cast<double>(i) /
                            static_cast<double>(count - 1));
  }
  out.back() = high;
  return out;
}

}  // namespace aemle
