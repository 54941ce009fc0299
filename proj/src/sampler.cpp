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

#include "aemle/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aemle/errors.hpp"
#include "aemle/fisher.hpp"
#include "aemle/parallel.hpp"

namespace aemle {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(finalize(seed + kGamma) ^ finalize(stream * kGamma + 0x632be59bd9b4e019ULL)) {}

std::uint64_t CounterRng::next() {
  ++counter_;
  return finalize(key_ + counter_ * kGamma);
}

double CounterRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::int64_t sample_binomial(CounterRng& rng, std::int64_t n, double p) {
  if (n < 0) throw DomainError("binomial n must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial p must be in [0,1]");
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (rng.uniform() < p) ++hits;
  }
  return hits;
}

ExperimentData sample_counts(const AmplitudePoint& point,
                             const Schedule& schedule, std::uint64_t seed,
                             std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::vector<ExperimentStage> stages;
  stages.reserve(schedule.size());
  for (const Stage& st : schedule.stages()) {
    const double prob =
        std::clamp(noisy_good_prob(GroverDepth(st.depth), point), 0.0, 1.0);
    stages.push_back({st.depth, st.shots, sample_binomial(rng, st.shots, prob)});
  }
  return ExperimentData::from_stages(std::move(stages));
}

TrialBatchResult run_trials(const AmplitudePoint& point, ScheduleKind kind,
                            int M_max, std::int64_t shots, int trials,
                            std::uint64_t seed, const MleConfig& config,
                            const TrialOptions& options) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (M_max < 1) throw ConfigError("M_max must be >= 1");
  config.validate();

  TrialBatchResult out;
  out.trials = trials;
  out.seed = seed;
  for (int M = 1; M <= M_max; ++M) {
    const Schedule schedule = make_schedule(kind, M, shots, options.r);
    struct Outcome {
      bool ok = false;
      double a_hat = 0.0;
      double kappa_hat = 0.0;
    };
    std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));
    parallel_for(outcomes.size(), options.threads, [&](std::size_t t) {
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(M) << 32) | static_cast<std::uint64_t>(t);
      try {
        const ExperimentData data = sample_counts(point, schedule, seed, stream);
        const EstimateResult est = mle_grid_adaptive(data, config);
        outcomes[t] = {true, est.a_hat, est.kappa_hat};
      } catch (const Error&) {
        outcomes[t] = {};
      }
    });

    TrialRecord rec;
    rec.M = M;
    rec.n_queries = total_queries(schedule);
    std::vector<double> sq;
    double kappa_sum = 0.0;
    for (const Outcome& o : outcomes) {
      if (!o.ok) {
        ++rec.failed_trials;
        continue;
      }
      const double d = o.a_hat - point.a();
      sq.push_back(d * d);
      kappa_sum += o.kappa_hat;
    }
    const auto n = static_cast<double>(sq.size());
    if (sq.empty()) {
      rec.rmse = std::numeric_limits<double>::quiet_NaN();
      rec.stderr_rmse = std::numeric_limits<double>::quiet_NaN();
      rec.mean_kappa_hat = std::numeric_limits<double>::quiet_NaN();
    } else {
      double total = 0.0;
      for (double v : sq) total += v;
      rec.rmse = std::sqrt(total / n);
      rec.mean_kappa_hat = kappa_sum / n;
      if (sq.size() > 1) {
        std::vector<double> loo(sq.size());
        double loo_mean = 0.0;
        for (std::size_t i = 0; i < sq.size(); ++i) {
          loo[i] = std::sqrt(std::max(0.0, total - sq[i]) / (n - 1.0));
          loo_mean += loo[i];
        }
        loo_mean /= n;
        double var = 0.0;
        for (double v : loo) var += (v - loo_mean) * (v - loo_mean);
        rec.stderr_rmse = std::sqrt((n - 1.0) / n * var);
      }
    }
    try {
      rec.cr_bound = cr_lower_bound(point, schedule).epsilon_min;
    } catch (const Error&) {
      rec.cr_bound = std::numeric_limits<double>::quiet_NaN();
    }
    rec.classical_bound = std::sqrt(point.a() * (1.0 - point.a()) /
                                    static_cast<double>(rec.n_queries));
    out.records.push_back(rec);
  }
  return out;
}

std::vector<std::pair<std::int64_t, double>> hit_rate_curve(
    const AmplitudePoint& point, std::span<const std::int64_t> depths,
    std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw ConfigError("shots must be >= 1");
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) {
    CounterRng rng(seed, i);
    const double prob = std::clamp(
        noisy_good_prob(GroverDepth(depths[i]), point), 0.0, 1.0);
    const std::int64_t hits = sample_binomial(rng, shots, prob);
    out.emplace_back(depths[i],
                     static_cast<double>(hits) / static_cast<double>(shots));
  }
  return out;
}

}  // namespace aemle
