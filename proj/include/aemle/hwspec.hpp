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
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "aemle/model.hpp"

namespace aemle {

enum class IntervalReading {
  /// t_i = interval_factor · (t_AA·m_k + t_m), per shot at depth m_k.
  PerShot,
  /// t_i = interval_factor · t_m̄ for every shot.
  PerMbar,
};

std::string to_string(IntervalReading reading);
IntervalReading parse_interval_reading(const std::string& name);

struct HardwareAssumptions {
  double epsilon_target = 1e-3;
  int n_int = 5;
  std::int64_t shots = 100;
  double t_single = 7.1e-8;
  double t_cnot = 2.8e-7;
  double t_measure = 3.5e-6;
  double interval_factor = 10.0;
  /// ε_d / ε_s.
  double error_ratio = 10.0;
  std::optional<double> kappa_bar_override;
  /// Target amplitude used when κ̄ comes from the required-noise scan.
  double scan_a = 0.375;
  IntervalReading interval_reading = IntervalReading::PerShot;

  /// Throws ConfigError on invalid values.
  void validate() const;
};

struct HardwareReport {
  std::int64_t n_nq = 0;
  std::int64_t n_tnq = 0;
  std::int64_t n_y = 0;
  std::int64_t n_s = 0;
  std::int64_t n_d = 0;
  double kappa_bar = 0.0;
  /// Where κ̄ came from: "override" or "scan".
  std::string kappa_source;
  std::int64_t m_bar = 0;
  double eps_s = 0.0;
  double eps_d = 0.0;
  double t_aa = 0.0;
  double t_mbar = 0.0;
  double t_total = 0.0;
  IntervalReading interval_reading = IntervalReading::PerShot;
  double t_total_per_shot = 0.0;
  double t_total_per_mbar = 0.0;
};

HardwareReport compute_spec(const HardwareAssumptions& assumptions);

/// Σ_k (t_AA·m_k + t_m + t_i)·N_k over depths 1, 2, 4, … (EIS) or 1, 2, 3, …
/// (LIS) with the last depth capped at m̄.
double total_execution_time(const HardwareReport& report,
                            const HardwareAssumptions& assumptions,
                            ScheduleKind kind, IntervalReading reading);

/// Solves −N_s ln(1−ε_d/ratio) − N_d ln(1−ε_d) = κ̄ for ε_d.
double solve_cnot_error(double kappa_bar, std::int64_t n_s, std::int64_t n_d,
                        double error_ratio);

/// −Σ count·ln(1 − error).
double kappa_from_gate_errors(
    std::span<const std::pair<double, std::int64_t>> gates);

struct GateErrorGap {
  double cnot_factor = 0.0;
  double single_factor = 0.0;
};

/// How many times smaller the required errors are than a device's.
GateErrorGap gate_error_gap(const HardwareReport& report,
                            double device_eps_d = 1.0e-2,
                            double device_eps_s = 1.0e-3);

}  // namespace aemle
