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

#include <cmath>
#include <string>

#include "aemle/errors.hpp"

namespace aemle {

namespace {

int qubits_for(Eigen::Index dimension) {
  int q = 0;
  while ((Eigen::Index{1} << q) < dimension) ++q;
  if ((Eigen::Index{1} << q) != dimension || q < 1) {
    throw DomainError("dimension must be a power of two >= 2");
  }
  if (q > kMaxCircuitQubits) {
    throw DomainError("dense simulation is limited to " +
                      std::to_string(kMaxCircuitQubits) + " qubits");
  }
  return q;
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)),
      qubits_(qubits_for(amplitudes_.size())) {}

StateVector StateVector::zero(int qubits) {
  if (qubits < 1 || qubits > kMaxCircuitQubits) {
    throw DomainError("qubit count out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubits);
  v(0) = 1.0;
  return StateVector(std::move(v));
}

double StateVector::good_probability() const {
  double p = 0.0;
  for (Eigen::Index i = 1; i < amplitudes_.size(); i += 2) {
    p += std::norm(amplitudes_(i));
  }
  return p;
}

UnitaryOp::UnitaryOp(Eigen::MatrixXcd matrix)
    : matrix_(std::move(matrix)), qubits_(qubits_for(matrix_.rows())) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DomainError("operator matrix must be square");
  }
}

StateVector UnitaryOp::apply(const StateVector& state) const {
  if (state.amplitudes().size() != matrix_.cols()) {
    throw DomainError("state and operator dimensions differ");
  }
  return StateVector(matrix_ * state.amplitudes());
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(matrix_.adjoint()); }

double UnitaryOp::unitarity_error() const {
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
      .cwiseAbs()
      .maxCoeff();
}

UnitaryOp build_A(const IntegrandSpec& spec) {
  if (spec.n() + 1 > kMaxCircuitQubits) {
    throw SpecError("integrand needs more than " +
                    std::to_string(kMaxCircuitQubits) + " qubits");
  }
  const auto size = static_cast<Eigen::Index>(spec.size());
  const Eigen::Index dim = 2 * size;

  Eigen::VectorXd target(size);
  for (Eigen::Index j = 0; j < size; ++j) {
    target(j) = std::sqrt(spec.probabilities()[static_cast<std::size_t>(j)]);
  }
  Eigen::MatrixXd prep = Eigen::MatrixXd::Identity(size, size);
  Eigen::VectorXd w = -target;
  w(0) += 1.0;
  const double w_norm2 = w.squaredNorm();
  if (w_norm2 > 1e-30) prep -= 2.0 * w * w.transpose() / w_norm2;

  Eigen::MatrixXcd prep_full = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd rot = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index k = 0; k < size; ++k) {
      prep_full(2 * j, 2 * k) = prep(j, k);
      prep_full(2 * j + 1, 2 * k + 1) = prep(j, k);
    }
    const double f = spec.values()[static_cast<std::size_t>(j)];
    const double c = std::sqrt(1.0 - f);
    const double s = std::sqrt(f);
    rot(2 * j, 2 * j) = c;
    rot(2 * j + 1, 2 * j) = s;
    rot(2 * j, 2 * j + 1) = -s;
    rot(2 * j + 1, 2 * j + 1) = c;
  }
  return UnitaryOp(rot * prep_full);
}

UnitaryOp build_Q(const UnitaryOp& A) {
  const Eigen::Index dim = A.dimension();
  Eigen::VectorXcd s0 = Eigen::VectorXcd::Ones(dim);
  s0(0) = -1.0;
  Eigen::VectorXcd s_chi = Eigen::VectorXcd::Ones(dim);
  for (Eigen::Index i = 1; i < dim; i += 2) s_chi(i) = -1.0;
  const Eigen::MatrixXcd reflect =
      A.matrix() * s0.asDiagonal() * A.matrix().adjoint();
  return UnitaryOp(-(reflect * s_chi.asDiagonal()));
}

double ideal_circuit_good_prob(const UnitaryOp& A, std::int64_t m) {
  if (m < 0) throw DomainError("Grover depth must be >= 0");
  const UnitaryOp Q = build_Q(A);
  StateVector state = A.apply(StateVector::zero(A.qubits()));
  for (std::int64_t i = 0; i < m; ++i) state = Q.apply(state);
  return state.good_probability();
}

double depolarized_good_prob(const UnitaryOp& A, std::int64_t m,
                             double p_survive) {
  if (!(p_survive > 0.0 && p_survive <= 1.0)) {
    throw DomainError("survival probability must lie in (0, 1]");
  }
  const double weight = std::pow(p_survive, static_cast<double>(m));
  return weight * ideal_circuit_good_prob(A, m) + (1.0 - weight) * 0.5;
}

Eigen::MatrixXcd depolarize(const Eigen::MatrixXcd& rho, double p_survive) {
  const auto dim = rho.rows();
  return p_survive * rho + (1.0 - p_survive) / static_cast<double>(dim) *
                               Eigen::MatrixXcd::Identity(dim, dim);
}

Eigen::MatrixXcd conjugate(const UnitaryOp& U, const Eigen::MatrixXcd& rho) {
  return U.matrix() * rho * U.matrix().adjoint();
}

Eigen::MatrixXcd evolve_density(const UnitaryOp& A, std::int64_t m,
                                double p_survive) {
  const UnitaryOp Q = build_Q(A);
  const Eigen::VectorXcd psi = A.matrix().col(0);
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  for (std::int64_t i = 0; i < m; ++i) {
    rho = depolarize(conjugate(Q, rho), p_survive);
  }
  return rho;
}

double good_probability(const Eigen::MatrixXcd& rho) {
  double p = 0.0;
  for (Eigen::Index i = 1; i < rho.rows(); i += 2) p += rho(i, i).real();
  return p;
}

}  // namespace aemle
