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
#include <vector>

namespace aemle {

/// Target amplitude a = sin²θ_a together with the depolarizing noise level
/// κ = −ln p of one Grover application. κ is stored; p is derived.
class AmplitudePoint {
 public:
  /// Throws DomainError unless a ∈ [0,1] and κ is finite and non-negative.
  static AmplitudePoint make(double a, double kappa);

  double a() const { return a_; }
  double theta() const { return theta_; }
  double kappa() const { return kappa_; }
  double p() const { return p_; }

 private:
  AmplitudePoint(double a, double theta, double kappa, double p)
      : a_(a), theta_(theta), kappa_(kappa), p_(p) {}

  double a_;
  double theta_;
  double kappa_;
  double p_;
};

AmplitudePoint amplitude_point(double a, double kappa);

/// Number of applications of the Grover operator Q.
class GroverDepth {
 public:
  explicit GroverDepth(std::int64_t m);
  std::int64_t value() const { return m_; }

 private:
  std::int64_t m_;
};

/// sin²((2m+1)θ_a), the noiseless hit probability.
double ideal_good_prob(GroverDepth m, const AmplitudePoint& point);

/// ½ − ½ e^{−κm} cos(2(2m+1)θ_a), the hit probability after m noisy
/// applications of Q under the depolarizing channel.
double noisy_good_prob(GroverDepth m, const AmplitudePoint& point);

/// Same model on raw parameters; used in inner loops. θ must be arcsin(√a).
double noisy_good_prob(std::int64_t m, double theta, double kappa);

enum class ScheduleKind { Classical, LIS, EIS, PowerBase, Explicit };

std::string to_string(ScheduleKind kind);
/// Accepts classical, lis, eis, power_base (alias powerbase), explicit.
ScheduleKind parse_schedule_kind(const std::string& name);

struct Stage {
  std::int64_t depth = 0;
  std::int64_t shots = 0;

  friend bool operator==(const Stage&, const Stage&) = default;
};

/// Ordered measurement stages (m_k, N_k), k = 0..M, with non-decreasing depths.
class Schedule {
 public:
  /// Validates depths non-decreasing, depth ≥ 0 and shots ≥ 0.
  static Schedule from_stages(std::vector<Stage> stages);

  ScheduleKind kind() const { return kind_; }
  std::optional<double> base() const { return base_; }
  std::span<const Stage> stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }
  const Stage& operator[](std::size_t k) const { return stages_[k]; }
  std::int64_t max_depth() const;

  /// First `count` stages, keeping the kind.
  Schedule prefix(std::size_t count) const;
  /// Appends a stage; the result is an Explicit schedule.
  Schedule with_stage(Stage stage) const;

  /// Short human readable form, e.g. "eis(M=6,shots=100)".
  std::string descriptor() const;

 private:
  friend Schedule make_schedule(ScheduleKind, int, std::int64_t,
                                std::optional<double>);
  Schedule(ScheduleKind kind, std::optional<double> base,
           std::vector<Stage> stages)
      : kind_(kind), base_(base), stages_(std::move(stages)) {}

  ScheduleKind kind_ = ScheduleKind::Explicit;
  std::optional<double> base_;
  std::vector<Stage> stages_;
};

/// Builds M+1 stages of `shots` each. EIS and PowerBase start with m_0 = 0 and
/// continue with ⌊r^{k−1}⌋; LIS uses m_k = k. Throws ConfigError on bad input.
Schedule make_schedule(ScheduleKind kind, int M, std::int64_t shots,
                       std::optional<double> r = std::nullopt);

/// Depth of stage k ≥ 1 for a power schedule: ⌊r^{k−1}⌋.
std::int64_t power_depth(double r, int k);

/// Σ N_k (2m_k + 1).
std::int64_t total_queries(const Schedule& schedule);

/// a·sin²φ, the amplitude after rotating an extra ancilla by R_y(φ).
double modified_amplitude(double a, double phi);

}  // namespace aemle
