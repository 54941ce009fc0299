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

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace aemle {

/// Discretized integrand on 2^n midpoints x_j = (j + ½)/2^n: probability
/// masses p(x_j) and values f(x_j) ∈ [0,1].
class IntegrandSpec {
 public:
  /// Throws SpecError unless both arrays have 2^n entries, p ≥ 0 sums to 1
  /// within 1e-10 and f ∈ [0,1].
  static IntegrandSpec make(int n, std::vector<double> probabilities,
                            std::vector<double> values);

  int n() const { return n_; }
  std::size_t size() const { return probabilities_.size(); }
  std::span<const double> probabilities() const { return probabilities_; }
  std::span<const double> values() const { return values_; }
  double grid_point(std::size_t j) const;

 private:
  IntegrandSpec(int n, std::vector<double> p, std::vector<double> f)
      : n_(n), probabilities_(std::move(p)), values_(std::move(f)) {}

  int n_;
  std::vector<double> probabilities_;
  std::vector<double> values_;
};

using RealFunction = std::function<double(double)>;

/// p(x_j) = ∫ q over the cell around x_j (64-node Gauss–Legendre per cell),
/// f sampled at x_j. Throws SpecError if a mass is negative or the masses
/// miss 1 by more than 1e-9; otherwise they are renormalized exactly.
IntegrandSpec discretize(const RealFunction& q, const RealFunction& f, int n);

/// Uniform p with f(x) = sin²(b·x); returns the spec and S(f).
std::pair<IntegrandSpec, double> sin2_target(int n, double b);

/// S(f) = Σ_j p(x_j) f(x_j), the amplitude encoded by the integrand.
double target_amplitude(const IntegrandSpec& spec);

/// Gauss–Legendre nodes and weights on [−1, 1] (64 points).
const std::vector<std::pair<double, double>>& gauss_legendre_64();

}  // namespace aemle
