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

#include "aemle/estimator.hpp"
#include "aemle/model.hpp"

namespace aemle {

/// Counter-based generator: output i of stream s under seed k is
/// splitmix64_finalize(key(k, s) + i·γ). Streams are independent of the
/// order in which they are consumed.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Exact Binomial(n, p) draw as a sum of n Bernoulli trials.
std::int64_t sample_binomial(CounterRng& rng, std::int64_t n, double p);

/// h_k ~ Binomial(N_k, P(m_k; a, κ)) for every stage, drawn from stream
/// `stream` of `seed`.
ExperimentData sample_counts(const AmplitudePoint& point,
                             const Schedule& schedule, std::uint64_t seed,
                             std::uint64_t stream = 0);

struct TrialRecord {
  int M = 0;
  std::int64_t n_queries = 0;
  double rmse = 0.0;
  /// Jackknife standard error of the RMSE.
  double stderr_rmse = 0.0;
  double mean_kappa_hat = 0.0;
  int failed_trials = 0;
  /// ε_min at the true point for the same schedule (NaN if undefined).
  double cr_bound = 0.0;
  /// √(a(1−a)/N_q).
  double classical_bound = 0.0;
};

struct TrialBatchResult {
  std::vector<TrialRecord> records;
  int trials = 0;
  std::uint64_t seed = 0;
};

struct TrialOptions {
  std::optional<double> r;
  /// 0 selects all available cores; results do not depend on it.
  unsigned threads = 0;
};

/// For M = 1..M_max: sample `trials` data sets of make_schedule(kind, M,
/// shots), estimate each with mle_grid_adaptive and summarize the error of â.
/// Trial t at depth index M uses stream (M << 32 | t). Failed estimations are
/// counted and excluded.
TrialBatchResult run_trials(const AmplitudePoint& point, ScheduleKind kind,
                            int M_max, std::int64_t shots, int trials,
                            std::uint64_t seed, const MleConfig& config = {},
                            const TrialOptions& options = {});

/// Sampled hit rate h/shots at each depth, stream i for depth i.
std::vector<std::pair<std::int64_t, double>> hit_rate_curve(
    const AmplitudePoint& point, std::span<const std::int64_t> depths,
    std::int64_t shots, std::uint64_t seed);

}  // namespace aemle
