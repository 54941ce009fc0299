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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "aemle/integrate.hpp"

namespace aemle {

/// Dense operators are limited to this many qubits (data + ancilla).
inline constexpr int kMaxCircuitQubits = 12;

/// Pure state on n data qubits plus one ancilla. The ancilla is the least
/// significant bit of the basis index, so odd indices are "good".
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);
  /// |0⟩ on `qubits` qubits.
  static StateVector zero(int qubits);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  int qubits() const { return qubits_; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }
  /// Probability of measuring the ancilla in |1⟩.
  double good_probability() const;

 private:
  Eigen::VectorXcd amplitudes_;
  int qubits_;
};

class UnitaryOp {
 public:
  explicit UnitaryOp(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  int qubits() const { return qubits_; }
  Eigen::Index dimension() const { return matrix_.rows(); }

  StateVector apply(const StateVector& state) const;
  UnitaryOp adjoint() const;
  /// Largest deviation of U†U from the identity.
  double unitarity_error() const;

 private:
  Eigen::MatrixXcd matrix_;
  int qubits_;
};

/// A = R·(P ⊗ I₁) with P|0⟩ = Σ√p(x_j)|j⟩ (a real Householder reflection) and
/// R|j⟩|0⟩ = |j⟩(√f(x_j)|1⟩ + √(1−f(x_j))|0⟩). Throws SpecError when the
/// spec does not fit kMaxCircuitQubits.
UnitaryOp build_A(const IntegrandSpec& spec);

/// Q = −A S₀ A⁻¹ S_χ with S_χ = I − 2 I_n⊗|1⟩⟨1| and S₀ = I − 2|0⟩⟨0|.
UnitaryOp build_Q(const UnitaryOp& A);

/// Good-state probability of Q^m A|0⟩ without noise.
double ideal_circuit_good_prob(const UnitaryOp& A, std::int64_t m);

/// Tr(ρ E₁) after m noisy Grover steps, ρ = p^m Q^m ρ₀ Q^{†m} + (1−p^m) I/d.
/// The pure branch is evolved as a state vector and mixed analytically
/// (Tr(I·E₁)/d = ½).
double depolarized_good_prob(const UnitaryOp& A, std::int64_t m,
                             double p_survive);

/// D(ρ) = pρ + (1−p) I/d.
Eigen::MatrixXcd depolarize(const Eigen::MatrixXcd& rho, double p_survive);

/// U ρ U†.
Eigen::MatrixXcd conjugate(const UnitaryOp& U, const Eigen::MatrixXcd& rho);

/// Density matrix after applying the channel ρ ↦ D(QρQ†) m times to A|0⟩.
Eigen::MatrixXcd evolve_density(const UnitaryOp& A, std::int64_t m,
                                double p_survive);

/// Tr(ρ E₁) with E₁ = I_n ⊗ |1⟩⟨1|.
double good_probability(const Eigen::MatrixXcd& rho);

}  // namespace aemle
