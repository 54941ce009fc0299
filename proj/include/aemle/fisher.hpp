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

#include "aemle/model.hpp"

namespace aemle {

/// β above which a target amplitude is treated as anomalous.
inline constexpr double kAnomalyThreshold = 0.9;

/// Symmetric 2×2 Fisher information of (a, κ) for a whole schedule.
struct FisherMatrix {
  double i11 = 0.0;
  double i12 = 0.0;
  double i22 = 0.0;

  double det() const { return i11 * i22 - i12 * i12; }
};

struct CrBoundResult {
  double epsilon_min = 0.0;
  /// The 2×2 inverse was well conditioned and used.
  bool identifiable = false;
  /// ε_min fell back to the single-parameter bound 1/√I_11.
  bool fallback_used = false;
};

/// Closed-form Fisher information of the depolarized binomial likelihood.
///
/// Each stage contributes N_k/(P(1−P)) times the outer product of the
/// gradient of P(m_k; a, κ). The per-stage denominator
/// e^{2κm} − cos²(2(2m+1)θ) is evaluated as expm1(2κm) + sin²(·), and
/// stages deep enough for it to overflow contribute nothing.
///
/// Throws SingularPointError for a ∈ {0,1} and DegenerateTermError when a
/// denominator drops below 1e-300 (κ = 0 exactly on a sine zero).
FisherMatrix fisher_matrix(const AmplitudePoint& point,
                           const Schedule& schedule);

/// √((I⁻¹)_{1,1}), falling back to 1/√I_11 when det < 1e-12·I_11·I_22 or
/// I_22 = 0 (κ unidentifiable, e.g. classical schedules).
CrBoundResult cr_lower_bound(const FisherMatrix& fisher);
CrBoundResult cr_lower_bound(const AmplitudePoint& point,
                             const Schedule& schedule);

/// Noise-induced floor on ε_min:
/// (Σ_k N_k·4(2m_k+1)²/sin²2θ_a · e^{−2κm_k}/(1−e^{−2κm_k}))^{−1/2}.
/// The ratio is undefined at m_k = 0; those stages contribute their exact
/// I_11 term 4N_k/sin²2θ_a instead. Throws DomainError when κ = 0.
double saturation_floor(const AmplitudePoint& point, const Schedule& schedule);

/// Largest integer m̄ with (2m̄+1)(1−e^{−κ}) ≤ 1. Throws DomainError if κ ≤ 0.
std::int64_t max_grover_depth(double kappa);

/// β = I_12²/(I_11·I_22) ∈ [0,1]. Throws DegenerateScheduleError if I_22 = 0.
double anomality(const FisherMatrix& fisher);
double anomality(const AmplitudePoint& point, const Schedule& schedule);

/// Mean squared error of â when κ̂ carries c times its own CR variance:
/// (I⁻¹)_{1,1}·(1 + (c−1)β).
double nuisance_inflation(const AmplitudePoint& point, const Schedule& schedule,
                          double c);

/// How a noise-limited schedule treats the first power depth beyond m̄.
enum class DepthCap {
  /// Stop at the last depth ≤ m̄.
  Truncate,
  /// Keep powers below m̄ and end with a final stage at exactly m̄.
  CapAtMbar,
};

/// EIS / power-base / LIS schedule whose depths stay within m̄(κ), limited to
/// at most max_M + 1 stages. κ = 0 means unbounded depth (max_M stages).
Schedule noise_limited_schedule(ScheduleKind kind, double kappa,
                                std::int64_t shots,
                                std::optional<double> r = std::nullopt,
                                DepthCap cap = DepthCap::Truncate,
                                int max_M = 25);

struct RequiredNoiseOptions {
  double a = 0.375;
  std::optional<double> r;
  double kappa_min = 1e-8;
  double kappa_max = 1.0;
  int points_per_decade = 20;
  /// Relative width at which the bisection stops (two significant digits).
  double relative_tolerance = 5e-3;
};

/// Largest κ for which the bound at the noise-limited total query count
/// N̄_q stays within target_eps. The schedule for each κ is the
/// DepthCap::CapAtMbar schedule of `kind`. Throws NotAchievableError when
/// even kappa_min fails.
double required_noise_for_error(double target_eps, std::int64_t shots,
                                ScheduleKind kind,
                                const RequiredNoiseOptions& options = {});

/// ε_min at the noise-limited query count for one κ (the curve scanned by
/// required_noise_for_error).
double error_at_noise_limit(double a, double kappa, std::int64_t shots,
                            ScheduleKind kind, std::optional<double> r,
                            DepthCap cap);

}  // namespace aemle
