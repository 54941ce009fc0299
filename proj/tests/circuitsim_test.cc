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

#include "aemle/circuitsim.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "aemle/errors.hpp"
#include "aemle/model.hpp"

using namespace aemle;

namespace {

constexpr double kB = 2 * std::numbers::pi / 5;

Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

Eigen::MatrixXcd random_density(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0;
  for (int i = 0; i < 3; ++i) {
    Eigen::VectorXcd v = random_vector(rng, dim);
    double w = u(rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  return rho / total;
}

}  // namespace

TEST(circuitsim, prepared_amplitude) {
  EXPECT_NEAR(StateVector::zero(2).amplitudes().norm(), 1.0, 1e-15);
  auto [s1, a1] = sin2_target(1, kB);
  StateVector psi1 = build_A(s1).apply(StateVector::zero(2));
  EXPECT_NEAR(psi1.good_probability(), 0.375, 1e-12);
  auto [s2, a2] = sin2_target(2, kB);
  StateVector psi2 = build_A(s2).apply(StateVector::zero(3));
  EXPECT_NEAR(psi2.good_probability(), a2, 1e-12);
  EXPECT_NEAR(psi2.good_probability(), 0.381, 5e-4);

  IntegrandSpec ones = IntegrandSpec::make(2, {0.25, 0.25, 0.25, 0.25},
                                           {1.0, 1.0, 1.0, 1.0});
  EXPECT_NEAR(build_A(ones).apply(StateVector::zero(3)).good_probability(),
              1.0, 1e-12);
}

TEST(circuitsim, ancilla_marginal_equals_target_amplitude) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      std::size_t size = std::size_t{1} << n;
      std::vector<double> p(size), f(size);
      double total = 0;
      for (std::size_t j = 0; j < size; ++j) {
        p[j] = u(rng);
        total += p[j];
        f[j] = u(rng);
      }
      for (double& x : p) x /= total;
      // Renormalise exactly so the spec check passes.
      double sum = 0;
      for (std::size_t j = 0; j + 1 < size; ++j) sum += p[j];
      p.back() = 1.0 - sum;
      IntegrandSpec spec = IntegrandSpec::make(n, p, f);
      UnitaryOp A = build_A(spec);
      StateVector psi = A.apply(StateVector::zero(n + 1));
      EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-10);
      EXPECT_NEAR(psi.good_probability(), target_amplitude(spec), 1e-12);
      EXPECT_LT(A.unitarity_error(), 1e-10);
    }
  }
}

TEST(circuitsim, grover_matches_closed_form) {
  for (int n : {1, 2}) {
    auto [spec, a] = sin2_target(n, kB);
    UnitaryOp A = build_A(spec);
    AmplitudePoint pt = amplitude_point(a, 0.0);
    for (int m = 0; m <= 10; ++m) {
      EXPECT_NEAR(ideal_circuit_good_prob(A, m),
                  ideal_good_prob(GroverDepth(m), pt), 1e-10);
    }
  }
}

TEST(circuitsim, q_is_unitary_and_preserves_norm) {
  std::mt19937_64 rng(4);
  auto [spec, a] = sin2_target(3, kB);
  UnitaryOp A = build_A(spec);
  UnitaryOp Q = build_Q(A);
  EXPECT_LT(Q.unitarity_error(), 1e-10);
  for (int i = 0; i < 32; ++i) {
    StateVector v(random_vector(rng, Q.dimension()));
    EXPECT_NEAR(Q.apply(v).norm_squared(), 1.0, 1e-10);
    EXPECT_NEAR(A.apply(v).norm_squared(), 1.0, 1e-10);
    StateVector back = Q.adjoint().apply(Q.apply(v));
    EXPECT_LT((back.amplitudes() - v.amplitudes()).norm(), 1e-10);
  }
}

TEST(circuitsim, invariant_subspace_eigenphases) {
  auto [spec, a] = sin2_target(2, kB);
  UnitaryOp A = build_A(spec);
  UnitaryOp Q = build_Q(A);
  Eigen::VectorXcd psi = A.matrix().col(0);
  Eigen::VectorXcd good = psi;
  Eigen::VectorXcd bad = psi;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    (i % 2 ? bad : good)(i) = 0.0;
  }
  good.normalize();
  bad.normalize();
  Eigen::MatrixXcd basis(psi.size(), 2);
  basis.col(0) = good;
  basis.col(1) = bad;
  Eigen::MatrixXcd restricted = basis.adjoint() * Q.matrix() * basis;
  // Q maps the span into itself.
  EXPECT_LT((basis * restricted - Q.matrix() * basis).norm(), 1e-10);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(restricted);
  double theta = std::asin(std::sqrt(a));
  std::vector<double> phases;
  for (Eigen::Index i = 0; i < 2; ++i) {
    phases.push_back(std::arg(solver.eigenvalues()(i)));
  }
  std::sort(phases.begin(), phases.end());
  EXPECT_NEAR(phases[0], -2 * theta, 1e-10);
  EXPECT_NEAR(phases[1], 2 * theta, 1e-10);
}

TEST(circuitsim, depolarized_matches_noise_model) {
  for (int n : {1, 2}) {
    auto [spec, a] = sin2_target(n, kB);
    UnitaryOp A = build_A(spec);
    for (double kappa : {0.0, 0.067, 0.331}) {
      AmplitudePoint pt = amplitude_point(a, kappa);
      for (int m = 0; m <= 10; ++m) {
        double circuit = depolarized_good_prob(A, m, std::exp(-kappa));
        EXPECT_NEAR(circuit, noisy_good_prob(GroverDepth(m), pt), 1e-12);
      }
    }
  }
  auto [spec, a] = sin2_target(1, kB);
  UnitaryOp A = build_A(spec);
  EXPECT_NEAR(depolarized_good_prob(A, 0, 0.3), a, 1e-12);
  EXPECT_NEAR(depolarized_good_prob(A, 7, 1.0), ideal_circuit_good_prob(A, 7),
              1e-15);
  EXPECT_THROW(depolarized_good_prob(A, 3, 0.0), DomainError);
}

TEST(circuitsim, density_evolution_agrees_with_analytic_mixing) {
  auto [spec, a] = sin2_target(2, kB);
  UnitaryOp A = build_A(spec);
  double p = std::exp(-0.067);
  for (int m : {1, 2, 4, 8}) {
    Eigen::MatrixXcd rho = evolve_density(A, m, p);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(good_probability(rho), depolarized_good_prob(A, m, p), 1e-12);
  }
}

TEST(circuitsim, depolarizing_commutes_with_q) {
  std::mt19937_64 rng(12);
  auto [spec, a] = sin2_target(2, kB);
  UnitaryOp Q = build_Q(build_A(spec));
  for (int i = 0; i < 10; ++i) {
    Eigen::MatrixXcd rho = random_density(rng, Q.dimension());
    double p = 0.3 + 0.06 * i;
    Eigen::MatrixXcd dq = depolarize(conjugate(Q, rho), p);
    Eigen::MatrixXcd qd = conjugate(Q, depolarize(rho, p));
    EXPECT_LT((dq - qd).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(circuitsim, size_limit) {
  std::vector<double> p(std::size_t{1} << 12, 1.0 / 4096);
  std::vector<double> f(std::size_t{1} << 12, 0.5);
  IntegrandSpec big = IntegrandSpec::make(12, p, f);
  EXPECT_THROW(build_A(big), SpecError);
}
