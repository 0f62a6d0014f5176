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

#include <string>
#include <vector>

#include "deepvqe/local_basis.hpp"
#include "deepvqe/subsystem.hpp"
#include "deepvqe/vqe.hpp"

namespace deepvqe {

struct FactorTerm {
  double coeff = 1.0;
  MatrixXc left;   // projected onto site i's local basis
  MatrixXc right;  // projected onto site j's local basis
};

/// Effective interaction between two sites, stored site-factorized:
/// V_{k k' l l'} = sum_nu v_nu L_nu(k, l) R_nu(k', l').
struct PairTensor {
  int site_i = 0;
  int site_j = 1;
  int k_i = 0;
  int k_j = 0;
  std::vector<FactorTerm> factors;

  cplx element(int k, int kp, int l, int lp) const;
  /// (k_i k_j) x (k_i k_j) matrix; row index k + k_i * k'.
  MatrixXc dense() const;
};

/// Projects every term of `v` onto the two local bases and keeps the result
/// factorized.
PairTensor effective_interaction(const LocalBasis& basis_i, const LocalBasis& basis_j, const InteractionSpec& v);

struct AssembleOptions {
  /// Product-state energy target after the negativity shift, per site.
  double margin = 1.0;
  bool build_encoded = true;
};

/// Reduced problem on N sites of K states each, plus its encoding on
/// m = N * q qubits with q = ceil(log2 K) (at least 1). Site s occupies
/// qubits [s q, (s + 1) q); basis index 0 of every site is its local ground
/// state, so |0^m> is the product of local ground states.
struct EffectiveProblem {
  int n_sites = 0;
  int k = 0;
  int qubits_per_site = 0;
  /// Retained dimension of each site before padding to the common k.
  std::vector<int> site_dims;
  std::vector<MatrixXc> site_matrices;  // k x k, unshifted
  std::vector<PairTensor> pairs;
  /// Added to every site matrix in the encoding (zero unless the product
  /// energy was non-negative).
  double site_shift = 0.0;
  /// Total constant carried by the encoded operator: n_sites * site_shift.
  double shift = 0.0;
  Observable encoded;

  int n_encoded_qubits() const noexcept { return n_sites * qubits_per_site; }
  std::vector<int> site_qubits(int site) const;
  /// 2^q x 2^q zero-padded site matrix, without the shift.
  MatrixXc embedded_site(int site) const;
  /// 2^{2q} x 2^{2q} zero-padded pair matrix; the low q bits index site_i.
  MatrixXc embedded_pair(std::size_t pair) const;
  /// The encoded operator (shift included) as dense blocks.
  BlockOperator block_operator() const;
};

int qubits_for_dimension(int k);

/// Pads to a common K, applies the negativity shift if needed and encodes.
EffectiveProblem assemble_effective(std::vector<MatrixXc> site_matrices, std::vector<PairTensor> pairs,
                                    const AssembleOptions& options = {});

/// Energy of the product of local ground states, before any shift.
double local_product_energy(const EffectiveProblem& problem);

enum class SecondStageAnsatz { kEffectiveGenerated, kHardwareEfficient };

std::string to_string(SecondStageAnsatz kind);
SecondStageAnsatz second_stage_ansatz_from_string(const std::string& s);

/// Cycles of exp(-i theta H_s) on each site register (ascending) followed by
/// exp(-i theta V_p) on each pair register (in pair order).
Ansatz effective_generated_ansatz(const EffectiveProblem& problem, int depth);
/// Hardware-efficient circuit on the m encoded qubits with a linear edge chain.
Ansatz register_hardware_efficient_ansatz(const EffectiveProblem& problem, int depth);

VqeProblem second_stage_problem(const EffectiveProblem& problem, SecondStageAnsatz kind, int depth,
                                int qubit_cap = kStatevectorQubitCap);

/// Runs the second VQE; reported energies (best_energy, energy_trace) are
/// unshifted.
OptimizationResult second_stage_vqe(const EffectiveProblem& problem, SecondStageAnsatz kind,
                                    const OptimizerConfig& config, int qubit_cap = kStatevectorQubitCap);

}  // namespace deepvqe
