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

#include "aemle/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aemle/errors.hpp"

namespace aemle {

namespace {

constexpr double kProbClamp = 1e-12;
// Fisher information is singular at a ∈ {0,1}; boxes are sized slightly inside.
constexpr double kFisherEdge = 1e-9;

struct Candidate {
  double a = 0.0;
  double kappa = 0.0;
  double ll = -std::numeric_limits<double>::infinity();
};

bool improves(const Candidate& c, const Candidate& best) {
  if (c.ll != best.ll) return c.ll > best.ll;
  if (c.a != best.a) return c.a < best.a;
  return c.kappa < best.kappa;
}

double stage_term(const ExperimentStage& st, double prob) {
  const double p = std::clamp(prob, kProbClamp, 1.0 - kProbClamp);
  const double h = static_cast<double>(st.hits);
  const double miss = static_cast<double>(st.shots - st.hits);
  return h * std::log(p) + miss * std::log1p(-p);
}

double theta_of(double a) {
  return std::asin(std::clamp(std::sqrt(std::max(a, 0.0)), 0.0, 1.0));
}

double partial_log_likelihood(std::span<const ExperimentStage> stages,
                              double a, double kappa) {
  const double theta = theta_of(a);
  double sum = 0.0;
  for (const ExperimentStage& st : stages) {
    sum += stage_term(st, noisy_good_prob(st.depth, theta, kappa));
  }
  return sum;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        n == 1 ? lo : lo * std::exp(ratio * static_cast<double>(i) / (n - 1));
  }
  out.back() = hi;
  return out;
}

std::size_t nearest_index(const std::vector<double>& grid, double value,
                          bool logarithmic) {
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double gap = logarithmic ? std::abs(std::log(grid[i] / value))
                                   : std::abs(grid[i] - value);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  return best;
}

// Scan over a at fixed κ; `points` candidates including the incumbent.
Candidate scan_a(std::span<const ExperimentStage> stages, double a_low,
                 double a_high, double kappa, int points,
                 const std::optional<Candidate>& incumbent) {
  std::vector<double> grid = linear_grid(a_low, a_high, points);
  if (incumbent) grid[nearest_index(grid, incumbent->a, false)] = incumbent->a;
  std::vector<double> decay(stages.size());
  for (std::size_t s = 0; s < stages.size(); ++s) {
    decay[s] = std::exp(-kappa * static_cast<double>(stages[s].depth));
  }
  Candidate best;
  for (double a : grid) {
    const double theta = theta_of(a);
    double ll = 0.0;
    for (std::size_t s = 0; s < stages.size(); ++s) {
      const double odd = 2.0 * static_cast<double>(stages[s].depth) + 1.0;
      ll += stage_term(stages[s],
                       0.5 - 0.5 * decay[s] * std::cos(2.0 * odd * theta));
    }
    const Candidate c{a, kappa, ll};
    if (improves(c, best)) best = c;
  }
  return best;
}

Candidate scan_a_kappa(std::span<const ExperimentStage> stages,
                       const GridBox& box, int divisions,
                       const std::optional<Candidate>& incumbent) {
  const std::vector<double> a_grid =
      linear_grid(box.a_low, box.a_high, divisions);
  const std::vector<double> k_grid =
      log_grid(box.kappa_low, box.kappa_high, divisions);
  const std::size_t n_stage = stages.size();

  std::vector<double> decay(k_grid.size() * n_stage);
  for (std::size_t j = 0; j < k_grid.size(); ++j) {
    for (std::size_t s = 0; s < n_stage; ++s) {
      decay[j * n_stage + s] =
          std::exp(-k_grid[j] * static_cast<double>(stages[s].depth));
    }
  }
  std::size_t snap_i = a_grid.size();
  std::size_t snap_j = k_grid.size();
  if (incumbent) {
    snap_i = nearest_index(a_grid, incumbent->a, false);
    snap_j = nearest_index(k_grid, incumbent->kappa, true);
  }

  Candidate best;
  std::vector<double> cosines(n_stage);
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    const double theta = theta_of(a_grid[i]);
    for (std::size_t s = 0; s < n_stage; ++s) {
      const double odd = 2.0 * static_cast<double>(stages[s].depth) + 1.0;
      cosines[s] = std::cos(2.0 * odd * theta);
    }
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
      Candidate c;
      if (i == snap_i && j == snap_j) {
        c = {incumbent->a, incumbent->kappa,
             partial_log_likelihood(stages, incumbent->a, incumbent->kappa)};
      } else {
        double ll = 0.0;
        const double* d = &decay[j * n_stage];
        for (std::size_t s = 0; s < n_stage; ++s) {
          ll += stage_term(stages[s], 0.5 - 0.5 * d[s] * cosines[s]);
        }
        c = {a_grid[i], k_grid[j], ll};
      }
      if (improves(c, best)) best = c;
    }
  }
  return best;
}

void check_data(const ExperimentData& data, const MleConfig& config) {
  config.validate();
  if (data.size() == 0) throw ConfigError("experiment data has no stages");
  if (data.size() > static_cast<std::size_t>(config.max_stages)) {
    throw ConfigError("experiment data exceeds max_stages");
  }
  const bool degenerate =
      std::all_of(data.stages().begin(), data.stages().end(),
                  [](const ExperimentStage& st) {
                    return st.depth == 0 &&
                           (st.hits == 0 || st.hits == st.shots);
                  });
  if (degenerate) {
    throw DegenerateDataError(
        "all stages have m = 0 and saturated hit counts");
  }
}

std::optional<FisherMatrix> try_fisher(const Schedule& schedule, double a,
                                       double kappa) {
  try {
    return fisher_matrix(
        amplitude_point(std::clamp(a, kFisherEdge, 1.0 - kFisherEdge), kappa),
        schedule);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

ExperimentData ExperimentData::from_stages(std::vector<ExperimentStage> stages) {
  std::int64_t last = 0;
  for (const ExperimentStage& st : stages) {
    if (st.depth < 0 || st.shots < 0) {
      throw ConfigError("stage depth and shots must be >= 0");
    }
    if (st.hits < 0 || st.hits > st.shots) {
      throw ConfigError("hits must lie in [0, shots]");
    }
    if (st.depth < last) throw ConfigError("depths must be non-decreasing");
    last = st.depth;
  }
  return ExperimentData(std::move(stages));
}

Schedule ExperimentData::schedule() const {
  std::vector<Stage> out;
  out.reserve(stages_.size());
  for (const ExperimentStage& st : stages_) out.push_back({st.depth, st.shots});
  return Schedule::from_stages(std::move(out));
}

ExperimentData ExperimentData::prefix(std::size_t count) const {
  count = std::min(count, stages_.size());
  return ExperimentData(std::vector<ExperimentStage>(
      stages_.begin(), stages_.begin() + static_cast<std::ptrdiff_t>(count)));
}

void MleConfig::validate() const {
  if (divisions_per_stage < 8) {
    throw ConfigError("divisions_per_stage must be >= 8");
  }
  if (!(chebyshev_factor_scale > 0.0)) {
    throw ConfigError("chebyshev_factor_scale must be > 0");
  }
  if (!(epsilon_target > 0.0 && epsilon_target < 1.0)) {
    throw ConfigError("epsilon_target must lie in (0, 1)");
  }
  const auto [k_lo, k_hi] = kappa_init_range;
  if (!(k_lo > 0.0 && k_hi > k_lo && std::isfinite(k_hi))) {
    throw ConfigError("kappa_init_range must satisfy 0 < low < high");
  }
  const auto [a_lo, a_hi] = a_init_range;
  if (!(a_lo >= 0.0 && a_hi <= 1.0 && a_hi > a_lo)) {
    throw ConfigError("a_init_range must be a non-empty subset of [0, 1]");
  }
  if (max_stages < 1) throw ConfigError("max_stages must be >= 1");
}

double MleConfig::chebyshev_factor() const {
  const double root = std::ceil(std::sqrt(std::log(1.0 / epsilon_target)));
  return std::max(3.0, root * chebyshev_factor_scale);
}

double log_likelihood(const ExperimentData& data, double a, double kappa) {
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("a must lie in [0, 1]");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kappa must be finite and >= 0");
  }
  return partial_log_likelihood(data.stages(), a, kappa);
}

EstimateResult mle_grid_adaptive(const ExperimentData& data,
                                 const MleConfig& config) {
  check_data(data, config);
  const double chebyshev = config.chebyshev_factor();
  const int divisions = config.divisions_per_stage;
  const auto [a_lo0, a_hi0] = config.a_init_range;
  const auto [k_lo0, k_hi0] = config.kappa_init_range;
  const double kappa_mid = 0.5 * (k_lo0 + k_hi0);

  EstimateResult result;
  GridBox box{a_lo0, a_hi0, k_lo0, k_hi0};
  std::optional<Candidate> incumbent;
  bool kappa_seen = false;

  for (std::size_t k = 0; k < data.size(); ++k) {
    const auto stages = data.stages().first(k + 1);
    kappa_seen = kappa_seen || stages.back().depth > 0;

    StageTrace trace;
    trace.stage = k;
    trace.box = box;
    trace.kappa_searched = kappa_seen;
    if (incumbent) {
      trace.incumbent_log_likelihood =
          partial_log_likelihood(stages, incumbent->a, incumbent->kappa);
    }

    Candidate best;
    if (kappa_seen) {
      best = scan_a_kappa(stages, box, divisions, incumbent);
    } else {
      best = scan_a(stages, box.a_low, box.a_high, kappa_mid,
                    divisions * divisions, incumbent);
    }
    result.likelihood_evaluations +=
        static_cast<std::int64_t>(divisions) * divisions;
    trace.a_hat = best.a;
    trace.kappa_hat = best.kappa;
    trace.log_likelihood = best.ll;
    result.stage_trace.push_back(trace);
    incumbent = best;

    if (k + 1 == data.size()) break;
    const auto fisher =
        try_fisher(data.prefix(k + 1).schedule(), best.a, best.kappa);
    if (!fisher || !(fisher->i11 > 0.0)) continue;
    const CrBoundResult bound = cr_lower_bound(*fisher);
    const double sigma_a = bound.epsilon_min;
    box.a_low = std::max(a_lo0, best.a - chebyshev * sigma_a);
    box.a_high = std::min(a_hi0, best.a + chebyshev * sigma_a);
    if (kappa_seen && bound.identifiable) {
      const double sigma_k = std::sqrt(fisher->i11 / fisher->det());
      box.kappa_low = std::max(k_lo0, best.kappa - chebyshev * sigma_k);
      box.kappa_high = std::min(k_hi0, best.kappa + chebyshev * sigma_k);
    }
  }

  result.a_hat = incumbent->a;
  result.kappa_hat = incumbent->kappa;
  result.log_likelihood_at_max = incumbent->ll;
  result.kappa_identifiable = kappa_seen;
  if (const auto fisher =
          try_fisher(data.schedule(), result.a_hat, result.kappa_hat)) {
    result.fisher_at_estimate = *fisher;
    if (kappa_seen && fisher->i11 > 0.0 && fisher->i22 > 0.0) {
      result.anomality = anomality(*fisher);
      result.anomalous = *result.anomality > kAnomalyThreshold;
    }
  }
  return result;
}

double mle_profile_1d(const ExperimentData& data, double kappa_fixed,
                      const MleConfig& config) {
  if (!(kappa_fixed >= 0.0) || !std::isfinite(kappa_fixed)) {
    throw DomainError("kappa_fixed must be finite and >= 0");
  }
  check_data(data, config);
  const double chebyshev = config.chebyshev_factor();
  const int points = config.divisions_per_stage * config.divisions_per_stage;
  const auto [a_lo0, a_hi0] = config.a_init_range;

  double a_low = a_lo0;
  double a_high = a_hi0;
  std::optional<Candidate> incumbent;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const Candidate best = scan_a(data.stages().first(k + 1), a_low, a_high,
                                  kappa_fixed, points, incumbent);
    incumbent = best;
    if (k + 1 == data.size()) break;
    const auto fisher =
        try_fisher(data.prefix(k + 1).schedule(), best.a, kappa_fixed);
    if (!fisher || !(fisher->i11 > 0.0)) continue;
    const double sigma = 1.0 / std::sqrt(fisher->i11);
    a_low = std::max(a_lo0, best.a - chebyshev * sigma);
    a_high = std::min(a_hi0, best.a + chebyshev * sigma);
  }
  return incumbent->a;
}

}  // namespace aemle
