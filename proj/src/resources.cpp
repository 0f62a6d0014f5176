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

#include "deepvqe/resources.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "deepvqe/common.hpp"

namespace deepvqe {

namespace {

int ceil_log2(int k) {
  int q = 0;
  while ((1 << q) < k) ++q;
  return q;
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ResourceReport estimate_resources(const std::vector<int>& plan, int excitations_per_boundary_qubit) {
  require(!plan.empty(), "level plan must not be empty");
  require(excitations_per_boundary_qubit >= 0, "excitation count must be non-negative");
  ResourceReport r;
  int k_prev = 2;
  int q_prev = 1;
  int side = 1;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const int l = plan[i];
    require(l >= 1, "block side must be positive");
    side *= l;
    LevelEstimate e;
    e.level = static_cast<int>(i) + 1;
    e.block_side = l;
    e.side_product = side;
    e.site_dimension = k_prev;
    e.qubits_per_site = q_prev;
    e.sites = l * l;
    e.pairs = 2 * l * (l - 1);
    e.vqe_qubits = e.sites * q_prev;
    e.pauli_terms = static_cast<std::uint64_t>(e.sites) * pow_u64(4, q_prev) +
                    static_cast<std::uint64_t>(e.pairs) * pow_u64(16, q_prev);
    const auto k64 = static_cast<std::uint64_t>(k_prev);
    e.matrix_elements = static_cast<std::uint64_t>(e.sites) * k64 * k64 +
                        static_cast<std::uint64_t>(e.pairs) * k64 * k64 * k64 * k64;
    const int boundary = side >= 2 ? 4 * side - 4 : 1;
    e.next_dimension = 1 + excitations_per_boundary_qubit * boundary;
    r.levels.push_back(e);
    r.max_vqe_qubits = std::max(r.max_vqe_qubits, e.vqe_qubits);
    k_prev = e.next_dimension;
    q_prev = std::max(1, ceil_log2(k_prev));
  }
  r.physical_qubits = static_cast<std::uint64_t>(side) * static_cast<std::uint64_t>(side);
  return r;
}

std::string ResourceReport::to_text() const {
  std::ostringstream out;
  out << std::setw(6) << "level" << std::setw(6) << "l" << std::setw(8) << "side" << std::setw(8) << "K_in"
      << std::setw(6) << "q" << std::setw(8) << "qubits" << std::setw(16) << "pauli_terms" << std::setw(8)
      << "K_out" << '\n';
  for (const auto& e : levels) {
    out << std::setw(6) << e.level << std::setw(6) << e.block_side << std::setw(8) << e.side_product
        << std::setw(8) << e.site_dimension << std::setw(6) << e.qubits_per_site << std::setw(8) << e.vqe_qubits
        << std::setw(16) << e.pauli_terms << std::setw(8) << e.next_dimension << '\n';
  }
  out << "physical qubits: " << physical_qubits << "\nlargest VQE: " << max_vqe_qubits << " qubits\n";
  return out.str();
}

}  // namespace deepvqe
