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

#include <span>
#include <vector>

#include "deepvqe/pauli.hpp"

namespace deepvqe {

/// One subsystem: its Hamiltonian, the qubits touched by inter-subsystem
/// couplings, and the excitation operators that generate its local basis.
struct SubsystemSpec {
  int n_qubits = 0;
  Observable hamiltonian;
  std::vector<int> boundary_qubits;
  /// excitations[0] is the identity.
  std::vector<Observable> excitations;

  /// Throws InputError when an invariant is broken.
  void validate() const;
};

/// v * left ⊗ right, with left on site i and right on site j.
struct InteractionTerm {
  double coeff = 1.0;
  Observable left;
  Observable right;
};

struct InteractionSpec {
  int site_i = 0;
  int site_j = 1;
  std::vector<InteractionTerm> terms;
};

inline constexpr Pauli kXYZ[3] = {Pauli::X, Pauli::Y, Pauli::Z};

/// [identity] ++ [P_q for q in boundary for P in paulis].
std::vector<Observable> default_excitations(int n_qubits, std::span<const int> boundary,
                                            std::span<const Pauli> paulis = kXYZ);

/// XX + YY + ZZ across (left_qubit on site i, right_qubit on site j).
std::vector<InteractionTerm> heisenberg_coupling(int n_left, int left_qubit, int n_right, int right_qubit);

}  // namespace deepvqe
