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
#include <utility>
#include <vector>

#include "aemle/fisher.hpp"
#include "aemle/model.hpp"

namespace aemle {

struct ExperimentStage {
  std::int64_t depth = 0;
  std::int64_t shots = 0;
  std::int64_t hits = 0;

  friend bool operator==(const ExperimentStage&,
                         const ExperimentStage&) = default;
};

/// Observed hit counts h_k out of N_k shots at Grover depth m_k.
class ExperimentData {
 public:
  /// Throws ConfigError unless 0 ≤ h_k ≤ N_k and depths are non-decreasing.
  static ExperimentData from_stages(std::vector<ExperimentStage> stages);

  std::span<const ExperimentStage> stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }
  const ExperimentStage& operator[](std::size_t k) const { return stages_[k]; }

  Schedule schedule() const;
  ExperimentData prefix(std::size_t count) const;

  friend bool operator==(const ExperimentData&,
                         const ExperimentData&) = default;

 private:
  explicit ExperimentData(std::vector<ExperimentStage> stages)
      : stages_(std::move(stages)) {}

  std::vector<ExperimentStage> stages_;
};

struct MleConfig {
  /// Grid points per axis and stage.
  int divisions_per_stage = 64;
  double chebyshev_factor_scale = 3.0;
  /// Accuracy the run aims for; only enters C_ε.
  double epsilon_target = 1e-3;
  std::pair<double, double> kappa_init_range{1e-6, 3.0};
  std::pair<double, double> a_init_range{0.0, 1.0};
  int max_stages = 64;

  /// Throws ConfigError on out-of-range settings.
  void validate() const;

  /// C_ε = max(3, ⌈√ln(1/ε_target)⌉·scale).
  double chebyshev_factor() const;
};

struct GridBox {
  double a_low = 0.0;
  double a_high = 1.0;
  double kappa_low = 0.0;
  double kappa_high = 0.0;

  bool contains(double a, double kappa) const {
    return a >= a_low && a <= a_high && kappa >= kappa_low &&
           kappa <= kappa_high;
  }
};

struct StageTrace {
  std::size_t stage = 0;
  GridBox box;
  /// False while no stage with m > 0 has been seen; κ was not searched.
  bool kappa_searched = false;
  double a_hat = 0.0;
  double kappa_hat = 0.0;
  /// Log-likelihood of stages 0..stage at the stage argmax.
  double log_likelihood = 0.0;
  /// Same likelihood at the previous stage's estimate, when there was one.
  std::optional<double> incumbent_log_likelihood;
};

struct EstimateResult {
  double a_hat = 0.0;
  double kappa_hat = 0.0;
  double log_likelihood_at_max = 0.0;
  FisherMatrix fisher_at_estimate;
  std::int64_t likelihood_evaluations = 0;
  std::vector<StageTrace> stage_trace;
  /// False when no stage has m > 0; κ̂ is then the midpoint of the range.
  bool kappa_identifiable = false;
  /// β at the estimate when computable.
  std::optional<double> anomality;
  /// β > kAnomalyThreshold. Re-estimating with a power-base (r = 2.5)
  /// schedule is the suggested remedy.
  bool anomalous = false;
};

/// Σ_k h_k ln P_k + (N_k − h_k) ln(1 − P_k), with P_k clamped to
/// [1e-12, 1 − 1e-12]. Throws DomainError for a ∉ [0,1] or κ < 0.
double log_likelihood(const ExperimentData& data, double a, double kappa);

/// Adaptive constant-grid maximum likelihood estimate of (a, κ).
///
/// Stage k maximizes the likelihood of stages 0..k on a
/// divisions × divisions grid (a linear, κ log-spaced). The box is the full
/// initial range at k = 0 and C_ε standard errors around the stage k−1
/// estimate afterwards, with errors taken from the Fisher information of
/// stages 0..k−1. While no m > 0 stage has been seen κ is unidentifiable and
/// the same budget goes to a one-dimensional scan over a. The grid node
/// nearest the previous estimate is moved onto it, so a stage never loses
/// likelihood relative to its incumbent. Ties go to smaller a, then smaller
/// κ.
///
/// Throws DegenerateDataError when every stage has m = 0 and h ∈ {0, N}.
EstimateResult mle_grid_adaptive(const ExperimentData& data,
                                 const MleConfig& config = {});

/// â maximizing the likelihood at a fixed κ, with the same stage-wise
/// refinement in one dimension.
double mle_profile_1d(const ExperimentData& data, double kappa_fixed,
                      const MleConfig& config = {});

}  // namespace aemle
