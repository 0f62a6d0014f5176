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
#include <string_view>
#include <vector>

#include "deepvqe/subsystem.hpp"
#include "deepvqe/vqe.hpp"

namespace deepvqe {

/// sum over edges of XX + YY + ZZ.
Observable heisenberg_observable(int n_qubits, const std::vector<Edge>& edges);

/// Parses "i j" lines; '#' starts a comment.
std::vector<Edge> parse_edge_list(std::string_view text);

std::vector<Edge> block4_edges();
std::vector<Edge> kagome12_edges();

/// 4-qubit Heisenberg block: square plus one diagonal, boundary {0, 2}.
SubsystemSpec heisenberg_block4();
/// 12-site kagome Heisenberg cluster, boundary {0, 6}.
SubsystemSpec kagome12();

/// Copies of one block coupled between consecutive blocks (and, if periodic,
/// between the last and the first).
struct BlockChainProblem {
  SubsystemSpec block;
  int n_blocks = 0;
  std::vector<InteractionSpec> couplings;
  bool periodic = false;

  int n_qubits() const noexcept { return block.n_qubits * n_blocks; }
};

/// Template terms act with `left` on block i and `right` on block i + 1.
BlockChainProblem chain(const SubsystemSpec& block, int n_blocks, const std::vector<InteractionTerm>& coupling,
                        bool periodic = false);
/// Heisenberg coupling between boundary[0] of block i and boundary[1] of
/// block i + 1.
BlockChainProblem chain(const SubsystemSpec& block, int n_blocks);
std::vector<InteractionTerm> default_coupling(const SubsystemSpec& block);

/// The whole chain as one Observable; block b occupies qubits
/// [b n, (b + 1) n).
Observable materialize_full(const BlockChainProblem& problem, int qubit_cap = 24);

/// A block plus its coupling template, builtin or user-defined.
struct ModelDefinition {
  std::string name;
  SubsystemSpec block;
  std::vector<InteractionTerm> coupling;
  /// Qubit pairs that receive exchange gates in the first-stage ansatz.
  std::vector<Edge> ansatz_edges;
};

/// Distinct qubit pairs of the weight-2 terms, in first-appearance order.
std::vector<Edge> interaction_edges(const Observable& h);

/// JSON: {"n_qubits", "terms": [[coeff, letters]...], "boundary": [...],
/// "coupling": [[coeff, left_letters, right_letters]...]}; optional "name"
/// and "edges" ([[a, b]...], the first-stage ansatz edges).
ModelDefinition model_from_json_text(std::string_view text);
/// "block4", "kagome12", or a path to a JSON model file.
ModelDefinition load_model(const std::string& name_or_path);

}  // namespace deepvqe
