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

#include <cstdint>
#include <string>
#include <vector>

namespace deepvqe {

/// One level of square-lattice blocking: l x l sites of the previous level
/// per VQE.
struct LevelEstimate {
  int level = 0;          // 1-based
  int block_side = 0;     // l^(k)
  int side_product = 0;   // l_k = prod_{j <= k} l^(j), physical side length
  int site_dimension = 0; // K_{k-1} of the sites merged here (2 for qubits)
  int qubits_per_site = 0;
  int vqe_qubits = 0;
  int sites = 0;
  int pairs = 0;
  /// Upper bound on Pauli terms of the encoded operator.
  std::uint64_t pauli_terms = 0;
  /// sites K^2 + pairs K^4: transition elements needed to assemble it.
  std::uint64_t matrix_elements = 0;
  /// K handed to the next level: 1 + e (4 l_k - 4).
  int next_dimension = 0;
};

struct ResourceReport {
  std::vector<LevelEstimate> levels;
  std::uint64_t physical_qubits = 0;
  int max_vqe_qubits = 0;

  std::string to_text() const;
};

ResourceReport estimate_resources(const std::vector<int>& plan, int excitations_per_boundary_qubit = 3);

}  // namespace deepvqe
