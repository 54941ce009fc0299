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

#include "aemle/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aemle/errors.hpp"

namespace aemle {

namespace {

constexpr std::int64_t kMaxDepth = std::int64_t{1} << 62;

}  // namespace

AmplitudePoint AmplitudePoint::make(double a, double kappa) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError("amplitude a must lie in [0, 1], got " +
                      std::to_string(a));
  }
  if (!std::isfinite(kappa) || kappa < 0.0) {
    throw DomainError("noise level kappa must be finite and >= 0, got " +
                      std::to_string(kappa));
  }
  // Clamp guards against sqrt(1) rounding above 1 feeding asin.
  const double root = std::clamp(std::sqrt(a), 0.0, 1.0);
  return AmplitudePoint(a, std::asin(root), kappa, std::exp(-kappa));
}

AmplitudePoint amplitude_point(double a, double kappa) {
  return AmplitudePoint::make(a, kappa);
}

GroverDepth::GroverDepth(std::int64_t m) : m_(m) {
  if (m < 0) throw DomainError("Grover depth must be >= 0");
}

double ideal_good_prob(GroverDepth m, const AmplitudePoint& point) {
  const double s =
      std::sin(static_cast<double>(2 * m.value() + 1) * point.theta());
  return s * s;
}

double noisy_good_prob(std::int64_t m, double theta, double kappa) {
  const double md = static_cast<double>(m);
  return 0.5 - 0.5 * std::exp(-kappa * md) *
                   std::cos(2.0 * (2.0 * md + 1.0) * theta);
}

double noisy_good_prob(GroverDepth m, const AmplitudePoint& point) {
  return noisy_good_prob(m.value(), point.theta(), point.kappa());
}

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Classical:
      return "classical";
    case ScheduleKind::LIS:
      return "lis";
    case ScheduleKind::EIS:
      return "eis";
    case ScheduleKind::PowerBase:
      return "power_base";
    case ScheduleKind::Explicit:
      return "explicit";
  }
  return "explicit";
}

ScheduleKind parse_schedule_kind(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "classical") return ScheduleKind::Classical;
  if (s == "lis") return ScheduleKind::LIS;
  if (s == "eis") return ScheduleKind::EIS;
  if (s == "power_base" || s == "powerbase" || s == "power") {
    return ScheduleKind::PowerBase;
  }
  if (s == "explicit") return ScheduleKind::Explicit;
  throw ParseError("unknown schedule kind '" + name + "'");
}

Schedule Schedule::from_stages(std::vector<Stage> stages) {
  std::int64_t last = 0;
  for (const Stage& st : stages) {
    if (st.depth < 0) throw ConfigError("stage depth must be >= 0");
    if (st.shots < 0) throw ConfigError("stage shots must be >= 0");
    if (st.depth < last) {
      throw ConfigError("stage depths must be non-decreasing");
    }
    last = st.depth;
  }
  return Schedule(ScheduleKind::Explicit, std::nullopt, std::move(stages));
}

std::int64_t Schedule::max_depth() const {
  return stages_.empty() ? 0 : stages_.back().depth;
}

Schedule Schedule::prefix(std::size_t count) const {
  count = std::min(count, stages_.size());
  return Schedule(kind_, base_,
                  std::vector<Stage>(stages_.begin(),
                                     stages_.begin() +
                                         static_cast<std::ptrdiff_t>(count)));
}

Schedule Schedule::with_stage(Stage stage) const {
  std::vector<Stage> next = stages_;
  next.push_back(stage);
  return from_stages(std::move(next));
}

std::string Schedule::descriptor() const {
  std::ostringstream os;
  os << to_string(kind_) << "(";
  if (base_) os << "r=" << *base_ << ",";
  os << "M=" << (stages_.empty() ? -1 : static_cast<long>(stages_.size()) - 1);
  const bool uniform =
      !stages_.empty() &&
      std::all_of(stages_.begin(), stages_.end(), [&](const Stage& s) {
        return s.shots == stages_.front().shots;
      });
  if (uniform) os << ",shots=" << stages_.front().shots;
  os << ",max_depth=" << max_depth() << ")";
  return os.str();
}

std::int64_t power_depth(double r, int k) {
  if (k <= 0) return 0;
  const int exponent = k - 1;
  const double rounded = std::round(r);
  if (rounded == r) {
    std::int64_t base = static_cast<std::int64_t>(rounded);
    std::int64_t out = 1;
    for (int i = 0; i < exponent; ++i) {
      if (out > kMaxDepth / base) {
        throw ConfigError("schedule depth overflows 2^62");
      }
      out *= base;
    }
    return out;
  }
  // Upward nudge keeps e.g. 2.5^2 = 6.25 or exact integers from flooring low.
  const double value = std::pow(r, exponent) + 1e-9;
  if (!(value < static_cast<double>(kMaxDepth))) {
    throw ConfigError("schedule depth overflows 2^62");
  }
  return static_cast<std::int64_t>(std::floor(value));
}

Schedule make_schedule(ScheduleKind kind, int M, std::int64_t shots,
                       std::optional<double> r) {
  if (M < 0) throw ConfigError("M must be >= 0");
  if (shots <= 0) throw ConfigError("shots must be > 0");
  std::optional<double> base;
  switch (kind) {
    case ScheduleKind::EIS:
      base = 2.0;
      break;
    case ScheduleKind::PowerBase:
      if (!r || !std::isfinite(*r) || *r <= 1.0) {
        throw ConfigError("power_base schedule requires r > 1");
      }
      base = *r;
      break;
    case ScheduleKind::Explicit:
      throw ConfigError("explicit schedules are built from stage lists");
    default:
      break;
  }
  std::vector<Stage> stages;
  stages.reserve(static_cast<std::size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) {
    std::int64_t depth = 0;
    switch (kind) {
      case ScheduleKind::Classical:
        depth = 0;
        break;
      case ScheduleKind::LIS:
        depth = k;
        break;
      case ScheduleKind::EIS:
      case ScheduleKind::PowerBase:
        depth = power_depth(*base, k);
        break;
      case ScheduleKind::Explicit:
        break;
    }
    stages.push_back({depth, shots});
  }
  return Schedule(kind, kind == ScheduleKind::PowerBase ? base : std::nullopt,
                  std::move(stages));
}

std::int64_t total_queries(const Schedule& schedule) {
  std::int64_t total = 0;
  for (const Stage& st : schedule.stages()) {
    total += st.shots * (2 * st.depth + 1);
  }
  return total;
}

double modified_amplitude(double a, double phi) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError("amplitude a must lie in [0, 1]");
  }
  if (!(phi >= 0.0 && phi <= M_PI / 2)) {
    throw DomainError("rotation angle phi must lie in [0, pi/2]");
  }
  const double s = std::sin(phi);
  return a * s * s;
}

}  // namespace aemle
