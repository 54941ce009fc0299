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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "aemle/errors.hpp"

namespace aemle {

FisherMatrix fisher_matrix(const AmplitudePoint& point,
                           const Schedule& schedule) {
  const double s2t = std::sin(2.0 * point.theta());
  if (point.a() <= 0.0 || point.a() >= 1.0 || s2t == 0.0) {
    throw SingularPointError(
        "Fisher information is singular at a in {0, 1}");
  }
  FisherMatrix f;
  for (const Stage& st : schedule.stages()) {
    if (st.shots == 0) continue;
    const double n = static_cast<double>(st.shots);
    const double m = static_cast<double>(st.depth);
    const double odd = 2.0 * m + 1.0;
    const double x = 2.0 * odd * point.theta();
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double den = std::expm1(2.0 * point.kappa() * m) + s * s;
    if (!(den >= 1e-300)) {
      throw DegenerateTermError("Fisher summand denominator vanished at depth " +
                                std::to_string(st.depth));
    }
    if (std::isinf(den)) continue;
    f.i11 += n * odd * odd * 4.0 * s * s / (s2t * s2t * den);
    f.i12 += n * m * odd * std::sin(2.0 * x) / (s2t * den);
    f.i22 += n * m * m * c * c / den;
  }
  return f;
}

CrBoundResult cr_lower_bound(const FisherMatrix& fisher) {
  if (!(fisher.i11 > 0.0)) {
    throw DegenerateScheduleError("schedule carries no information about a");
  }
  CrBoundResult out;
  const double det = fisher.det();
  if (fisher.i22 <= 0.0 || det < 1e-12 * fisher.i11 * fisher.i22) {
    out.epsilon_min = 1.0 / std::sqrt(fisher.i11);
    out.fallback_used = true;
    return out;
  }
  out.epsilon_min = std::sqrt(fisher.i22 / det);
  out.identifiable = true;
  return out;
}

CrBoundResult cr_lower_bound(const AmplitudePoint& point,
                             const Schedule& schedule) {
  return cr_lower_bound(fisher_matrix(point, schedule));
}

double saturation_floor(const AmplitudePoint& point, const Schedule& schedule) {
  if (point.kappa() <= 0.0) {
    throw DomainError("saturation floor is only defined for kappa > 0");
  }
  const double s2t = std::sin(2.0 * point.theta());
  if (point.a() <= 0.0 || point.a() >= 1.0 || s2t == 0.0) {
    throw SingularPointError("saturation floor is singular at a in {0, 1}");
  }
  double sum = 0.0;
  for (const Stage& st : schedule.stages()) {
    const double n = static_cast<double>(st.shots);
    if (st.depth == 0) {
      sum += 4.0 * n / (s2t * s2t);
      continue;
    }
    const double m = static_cast<double>(st.depth);
    const double odd = 2.0 * m + 1.0;
    sum += n * 4.0 * odd * odd / (s2t * s2t) /
           std::expm1(2.0 * point.kappa() * m);
  }
  if (!(sum > 0.0)) {
    throw DegenerateScheduleError("schedule carries no information about a");
  }
  return 1.0 / std::sqrt(sum);
}

std::int64_t max_grover_depth(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("maximum Grover depth requires finite kappa > 0");
  }
  const double loss = -std::expm1(-kappa);  // 1 − e^{−κ}
  const auto fits = [&](std::int64_t m) {
    return (2.0 * static_cast<double>(m) + 1.0) * loss <= 1.0;
  };
  auto m = static_cast<std::int64_t>(
      std::floor((1.0 / loss - 1.0) / 2.0));
  m = std::max<std::int64_t>(m, 0);
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

double anomality(const FisherMatrix& fisher) {
  if (!(fisher.i22 > 0.0) || !(fisher.i11 > 0.0)) {
    throw DegenerateScheduleError(
        "anomality needs at least one stage with m_k > 0");
  }
  return std::clamp(fisher.i12 * fisher.i12 / (fisher.i11 * fisher.i22), 0.0,
                    1.0);
}

double anomality(const AmplitudePoint& point, const Schedule& schedule) {
  return anomality(fisher_matrix(point, schedule));
}

double nuisance_inflation(const AmplitudePoint& point, const Schedule& schedule,
                          double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw DomainError("inflation factor c must be finite and >= 0");
  }
  const FisherMatrix f = fisher_matrix(point, schedule);
  const double beta = anomality(f);
  const double det = f.det();
  if (!(det > 0.0)) {
    throw DegenerateScheduleError("Fisher matrix is singular");
  }
  return f.i22 / det * (1.0 + (c - 1.0) * beta);
}

Schedule noise_limited_schedule(ScheduleKind kind, double kappa,
                                std::int64_t shots, std::optional<double> r,
                                DepthCap cap, int max_M) {
  if (max_M < 0) throw ConfigError("max_M must be >= 0");
  if (kind == ScheduleKind::Explicit) {
    throw ConfigError("noise-limited schedules need a generated kind");
  }
  if (kappa < 0.0 || !std::isfinite(kappa)) {
    throw DomainError("kappa must be finite and >= 0");
  }
  if (kind == ScheduleKind::PowerBase && (!r || !(*r > 1.0))) {
    throw ConfigError("power_base schedule requires r > 1");
  }
  if (kappa == 0.0 || kind == ScheduleKind::Classical) {
    return make_schedule(kind, max_M, shots, r);
  }
  const std::int64_t mbar = max_grover_depth(kappa);
  int last_k = 0;
  bool capped = false;
  std::int64_t last_depth = 0;
  for (int k = 1; k <= max_M; ++k) {
    const std::int64_t depth = kind == ScheduleKind::LIS
                                   ? k
                                   : power_depth(kind == ScheduleKind::EIS
                                                     ? 2.0
                                                     : r.value_or(0.0),
                                                 k);
    if (depth > mbar) {
      capped = cap == DepthCap::CapAtMbar && last_depth < mbar;
      break;
    }
    last_k = k;
    last_depth = depth;
  }
  const Schedule kept = make_schedule(kind, last_k, shots, r);
  if (!capped) return kept;
  return kept.with_stage({mbar, shots});
}

double error_at_noise_limit(double a, double kappa, std::int64_t shots,
                            ScheduleKind kind, std::optional<double> r,
                            DepthCap cap) {
  const Schedule schedule = noise_limited_schedule(kind, kappa, shots, r, cap,
                                                   /*max_M=*/62);
  return cr_lower_bound(amplitude_point(a, kappa), schedule).epsilon_min;
}

double required_noise_for_error(double target_eps, std::int64_t shots,
                                ScheduleKind kind,
                                const RequiredNoiseOptions& options) {
  if (!(target_eps > 0.0 && target_eps < 0.5)) {
    throw DomainError("target error must lie in (0, 0.5)");
  }
  if (shots <= 0) throw ConfigError("shots must be > 0");
  if (!(options.kappa_min > 0.0 && options.kappa_min < options.kappa_max) ||
      options.points_per_decade < 1) {
    throw ConfigError("invalid kappa scan range");
  }
  const auto error_at = [&](double kappa) {
    return error_at_noise_limit(options.a, kappa, shots, kind, options.r,
                                DepthCap::CapAtMbar);
  };
  const double decades = std::log10(options.kappa_max / options.kappa_min);
  const int steps =
      static_cast<int>(std::ceil(decades * options.points_per_decade));
  double failing = 0.0;
  double passing = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double kappa = std::max(
        options.kappa_min,
        options.kappa_max *
            std::pow(10.0, -static_cast<double>(i) / options.points_per_decade));
    if (error_at(kappa) <= target_eps) {
      passing = kappa;
      break;
    }
    failing = kappa;
  }
  if (passing == 0.0) {
    throw NotAchievableError("target error not reachable for kappa >= " +
                             std::to_string(options.kappa_min));
  }
  if (failing == 0.0) return passing;
  while (failing / passing > 1.0 + options.relative_tolerance) {
    const double mid = std::sqrt(failing * passing);
    if (error_at(mid) <= target_eps) {
      passing = mid;
    } else {
      failing = mid;
    }
  }
  return passing;
}

}  // namespace aemle
