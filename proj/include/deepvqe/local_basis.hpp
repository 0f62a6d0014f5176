// Copyright 2026 The deepvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "deepvqe/pauli.hpp"
#include "deepvqe/simulator.hpp"

namespace deepvqe {

inline constexpr double kBasisDropTolerance = 1e-8;

/// Excitation basis {W_k |psi_0>} of one subsystem and the transform to its
/// orthonormalized form. With S_kl = <psi_k|psi_l> and orthonormal vectors
/// |~psi_a> = sum_k P_ak |psi_k>, the transform satisfies conj(P) S P^T = I.
struct LocalBasis {
  int k_raw = 0;
  int k = 0;
  MatrixXc overlap;    // k_raw x k_raw
  MatrixXc transform;  // k x k_raw; columns of dropped vectors are zero
  Statevector ground_state;
  std::vector<int> kept;
  /// W_k |psi_0>, one per excitation.
  std::vector<RawVector> raw_vectors;

  /// The orthonormal basis vectors as explicit amplitudes.
  std::vector<VectorXc> orthonormal_vectors() const;
};

/// Gram-Schmidt, identity first then excitations in declared order. Vectors
/// whose residual norm falls below drop_tol are discarded. Residuals are
/// measured on the explicit vectors: through S alone they carry sqrt(eps)
/// noise, which is the size of drop_tol.
LocalBasis build_local_basis(const Statevector& ground_state, const std::vector<Observable>& excitations,
                             double drop_tol = kBasisDropTolerance);

/// Gram-Schmidt on a Gram matrix alone. Returns the transform rows and the
/// kept indices.
MatrixXc gram_schmidt_transform(const MatrixXc& overlap, double drop_tol, std::vector<int>& kept);

/// Same transform computed by modified Gram-Schmidt on the vectors themselves.
MatrixXc gram_schmidt_transform(const std::vector<RawVector>& vectors, double drop_tol, std::vector<int>& kept);

/// <~psi_a| op |~psi_b> for any operator on the subsystem (not necessarily
/// Hermitian): conj(P) * Hbar * P^T with Hbar_kl = <psi_k| op |psi_l>.
MatrixXc project_operator(const LocalBasis& basis, const Observable& op);

/// Projected subsystem Hamiltonian; h must be Hermitian.
MatrixXc effective_site_matrix(const LocalBasis& basis, const Observable& h);

/// Projected excitation operators, reusable as next-level excitations.
std::vector<MatrixXc> effective_excitations(const LocalBasis& basis, const std::vector<Observable>& ops);

}  // namespace deepvqe
