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

#include "aemle/integrate.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <string>

#include "aemle/errors.hpp"

namespace aemle {

namespace {

constexpr int kMaxQubits = 24;
constexpr unsigned kGaussPoints = 64;

std::size_t grid_size(int n) {
  if (n < 0 || n > kMaxQubits) {
    throw SpecError("integrand qubit count must lie in [0, " +
                    std::to_string(kMaxQubits) + "]");
  }
  return std::size_t{1} << n;
}

}  // namespace

const std::vector<std::pair<double, double>>& gauss_legendre_64() {
  static const std::vector<std::pair<double, double>> rule = [] {
    std::vector<std::pair<double, double>> out;
    for (double x : boost::math::legendre_p_zeros<double>(kGaussPoints)) {
      const double dp = boost::math::legendre_p_prime<double>(kGaussPoints, x);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      out.emplace_back(x, w);
      if (x != 0.0) out.emplace_back(-x, w);
    }
    return out;
  }();
  return rule;
}

IntegrandSpec IntegrandSpec::make(int n, std::vector<double> probabilities,
                                  std::vector<double> values) {
  const std::size_t size = grid_size(n);
  if (probabilities.size() != size || values.size() != size) {
    throw SpecError("integrand arrays must have 2^n = " +
                    std::to_string(size) + " entries");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw SpecError("probabilities must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw SpecError("probabilities must sum to 1, got " +
                    std::to_string(total));
  }
  for (double f : values) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw SpecError("integrand values must lie in [0, 1]");
    }
  }
  return IntegrandSpec(n, std::move(probabilities), std::move(values));
}

double IntegrandSpec::grid_point(std::size_t j) const {
  return (static_cast<double>(j) + 0.5) / static_cast<double>(size());
}

IntegrandSpec discretize(const RealFunction& q, const RealFunction& f, int n) {
  const std::size_t size = grid_size(n);
  const double width = 1.0 / static_cast<double>(size);
  const auto& rule = gauss_legendre_64();
  std::vector<double> p(size);
  std::vector<double> values(size);
  double total = 0.0;
  for (std::size_t j = 0; j < size; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) * width;
    double mass = 0.0;
    for (const auto& [x, w] : rule) mass += w * q(mid + 0.5 * width * x);
    mass *= 0.5 * width;
    if (mass < -1e-15) {
      throw SpecError("density integrates to a negative cell mass");
    }
    p[j] = std::max(mass, 0.0);
    total += p[j];
    values[j] = f(mid);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw SpecError("density does not integrate to 1 (got " +
                    std::to_string(total) + ")");
  }
  for (double& v : p) v /= total;
  return IntegrandSpec::make(n, std::move(p), std::move(values));
}

std::pair<IntegrandSpec, double> sin2_target(int n, double b) {
  if (n < 1) throw SpecError("sin2 target needs n >= 1");
  const std::size_t size = grid_size(n);
  std::vector<double> p(size, 1.0 / static_cast<double>(size));
  std::vector<double> values(size);
  for (std::size_t j = 0; j < size; ++j) {
    const double s = std::sin(b * (static_cast<double>(j) + 0.5) /
                              static_cast<double>(size));
    values[j] = s * s;
  }
  IntegrandSpec spec = IntegrandSpec::make(n, std::move(p), std::move(values));
  const double s = target_amplitude(spec);
  return {std::move(spec), s};
}

double target_amplitude(const IntegrandSpec& spec) {
  double s = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    s += spec.probabilities()[j] * spec.values()[j];
  }
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace aemle
