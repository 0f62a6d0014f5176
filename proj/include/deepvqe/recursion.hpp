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

#include "deepvqe/effective.hpp"
#include "deepvqe/local_basis.hpp"
#include "deepvqe/subsystem.hpp"
#include "deepvqe/vqe.hpp"

namespace deepvqe {

/// One site of some level: its Hamiltonian and excitations on its own
/// register, a solved ground state, and the constant its Hamiltonian carries
/// on top of the physical energy.
struct HierarchySite {
  SubsystemSpec spec;
  Statevector ground;
  double shift = 0.0;
};

struct HierarchyLevel {
  std::vector<HierarchySite> sites;
  std::vector<InteractionSpec> couplings;
};

/// Bases for every site, in order.
std::vector<LocalBasis> build_bases(const HierarchyLevel& level, double drop_tol = kBasisDropTolerance);

/// Effective problem over the sites listed in `members` (local site s is
/// level site members[s]); only couplings inside the group are kept.
EffectiveProblem build_group_problem(const HierarchyLevel& level, const std::vector<LocalBasis>& bases,
                                     const std::vector<int>& members, const AssembleOptions& options = {});

/// K x K matrix of one site lifted to the problem's full m-qubit register.
Observable embed_site_operator(const EffectiveProblem& problem, int site, const MatrixXc& m);

struct RecursionConfig {
  /// Consecutive sites merged per level; the last entry must leave one site.
  std::vector<int> group_sizes;
  SecondStageAnsatz ansatz = SecondStageAnsatz::kEffectiveGenerated;
  OptimizerConfig optimizer{.depth = 4};
  AssembleOptions assemble;
  int qubit_cap = kStatevectorQubitCap;
  double drop_tol = kBasisDropTolerance;
};

struct LevelReport {
  int n_groups = 0;
  std::vector<int> site_dims;
  int register_qubits = 0;  // largest second-stage register of this level
  std::vector<double> local_energies;
  std::vector<double> energies;
};

struct RecursionResult {
  double energy = 0.0;
  double local_energy = 0.0;  // product baseline of the top problem
  std::vector<LevelReport> levels;
};

/// Repeats basis construction, assembly and the second VQE, merging groups
/// of sites into new sites until one remains. Each new site's excitations
/// are the projected coupling factors that still reach outside its group.
RecursionResult recurse(HierarchyLevel level, const RecursionConfig& config);

}  // namespace deepvqe
