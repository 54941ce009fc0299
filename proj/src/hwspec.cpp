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

#include "aemle/hwspec.hpp"

#include <cmath>
#include <vector>

#include "aemle/errors.hpp"
#include "aemle/fisher.hpp"

namespace aemle {

std::string to_string(IntervalReading reading) {
  return reading == IntervalReading::PerShot ? "per_shot" : "per_mbar";
}

IntervalReading parse_interval_reading(const std::string& name) {
  if (name == "per_shot") return IntervalReading::PerShot;
  if (name == "per_mbar") return IntervalReading::PerMbar;
  throw ParseError("unknown interval reading '" + name +
                   "' (expected per_shot or per_mbar)");
}

void HardwareAssumptions::validate() const {
  if (!(epsilon_target > 0.0 && epsilon_target < 1.0)) {
    throw ConfigError("epsilon_target must lie in (0, 1)");
  }
  if (n_int < 1) throw ConfigError("n_int must be >= 1");
  if (shots < 1) throw ConfigError("shots must be >= 1");
  if (!(t_single > 0.0 && t_cnot > 0.0 && t_measure > 0.0)) {
    throw ConfigError("gate and measurement times must be positive");
  }
  if (!(interval_factor >= 0.0)) {
    throw ConfigError("interval_factor must be >= 0");
  }
  if (!(error_ratio > 0.0)) throw ConfigError("error_ratio must be positive");
  if (kappa_bar_override && !(*kappa_bar_override > 0.0)) {
    throw ConfigError("kappa_bar override must be positive");
  }
  if (!(scan_a > 0.0 && scan_a < 1.0)) {
    throw ConfigError("scan_a must lie in (0, 1)");
  }
}

double solve_cnot_error(double kappa_bar, std::int64_t n_s, std::int64_t n_d,
                        double error_ratio) {
  if (!(kappa_bar > 0.0)) throw DomainError("kappa_bar must be positive");
  const double ns = static_cast<double>(n_s);
  const double nd = static_cast<double>(n_d);
  const auto decay = [&](double eps_d) {
    return -ns * std::log1p(-eps_d / error_ratio) - nd * std::log1p(-eps_d);
  };
  // Upper end keeps both error rates strictly below 1.
  double lo = 0.0;
  double hi = std::min(1.0, error_ratio);
  hi = std::nextafter(hi, 0.0);
  if (decay(hi) < kappa_bar) {
    throw NotAchievableError("no gate error reproduces kappa_bar");
  }
  for (int i = 0; i < 2000 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (decay(mid) < kappa_bar) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(decay(lo) - kappa_bar) <= std::abs(decay(hi) - kappa_bar)
             ? lo
             : hi;
}

namespace {

std::vector<std::int64_t> capped_depths(ScheduleKind kind, std::int64_t mbar) {
  std::vector<std::int64_t> depths;
  if (kind == ScheduleKind::EIS) {
    for (std::int64_t m = 1; m < mbar; m *= 2) depths.push_back(m);
  } else if (kind == ScheduleKind::LIS) {
    for (std::int64_t m = 1; m < mbar; ++m) depths.push_back(m);
  } else {
    throw ConfigError("execution time supports eis and lis schedules");
  }
  if (mbar >= 1) depths.push_back(mbar);
  return depths;
}

}  // namespace

double total_execution_time(const HardwareReport& report,
                            const HardwareAssumptions& assumptions,
                            ScheduleKind kind, IntervalReading reading) {
  double total = 0.0;
  const double shots = static_cast<double>(assumptions.shots);
  for (std::int64_t m : capped_depths(kind, report.m_bar)) {
    const double run = report.t_aa * static_cast<double>(m) +
                       assumptions.t_measure;
    const double interval = reading == IntervalReading::PerShot
                                ? assumptions.interval_factor * run
                                : assumptions.interval_factor * report.t_mbar;
    total += (run + interval) * shots;
  }
  return total;
}

HardwareReport compute_spec(const HardwareAssumptions& assumptions) {
  assumptions.validate();
  HardwareReport r;
  const double bits = std::log2(1.0 / assumptions.epsilon_target);
  r.n_nq = static_cast<std::int64_t>(std::ceil(bits - 1e-12));
  if (r.n_nq < 1) r.n_nq = 1;
  const std::int64_t n_int = assumptions.n_int;
  r.n_tnq = 2 * r.n_nq * n_int - 1;
  r.n_y = r.n_nq * r.n_nq * n_int * (n_int - 1) / 2;
  r.n_s = 2 * (r.n_nq * n_int + 1 + 6 * r.n_y) + 12 * r.n_nq * n_int - 15;
  r.n_d = 8 * r.n_y * 2 + 6 * r.n_nq * n_int - 5;
  if (assumptions.kappa_bar_override) {
    r.kappa_bar = *assumptions.kappa_bar_override;
    r.kappa_source = "override";
  } else {
    RequiredNoiseOptions options;
    options.a = assumptions.scan_a;
    r.kappa_bar = required_noise_for_error(
        assumptions.epsilon_target, assumptions.shots, ScheduleKind::EIS,
        options);
    r.kappa_source = "scan";
  }
  r.m_bar = max_grover_depth(r.kappa_bar);
  r.eps_d = solve_cnot_error(r.kappa_bar, r.n_s, r.n_d,
                             assumptions.error_ratio);
  r.eps_s = r.eps_d / assumptions.error_ratio;
  r.t_aa = assumptions.t_single * static_cast<double>(r.n_s) +
           assumptions.t_cnot * static_cast<double>(r.n_d);
  r.t_mbar = r.t_aa * static_cast<double>(r.m_bar) + assumptions.t_measure;
  r.t_total_per_shot = total_execution_time(r, assumptions, ScheduleKind::EIS,
                                            IntervalReading::PerShot);
  r.t_total_per_mbar = total_execution_time(r, assumptions, ScheduleKind::EIS,
                                            IntervalReading::PerMbar);
  r.interval_reading = assumptions.interval_reading;
  r.t_total = r.interval_reading == IntervalReading::PerShot
                  ? r.t_total_per_shot
                  : r.t_total_per_mbar;
  return r;
}

double kappa_from_gate_errors(
    std::span<const std::pair<double, std::int64_t>> gates) {
  double kappa = 0.0;
  for (const auto& [error, count] : gates) {
    if (!(error >= 0.0 && error < 1.0)) {
      throw DomainError("gate error must lie in [0, 1)");
    }
    if (count < 0) throw DomainError("gate count must be >= 0");
    kappa -= static_cast<double>(count) * std::log1p(-error);
  }
  return kappa;
}

GateErrorGap gate_error_gap(const HardwareReport& report, double device_eps_d,
                            double device_eps_s) {
  if (!(report.eps_d > 0.0 && report.eps_s > 0.0)) {
    throw DomainError("report has no gate errors");
  }
  return {device_eps_d / report.eps_d, device_eps_s / report.eps_s};
}

}  // namespace aemle
