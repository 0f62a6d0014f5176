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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deepvqe/models.hpp"
#include "deepvqe/recursion.hpp"
#include "deepvqe/resources.hpp"
#include "deepvqe/serialization.hpp"

namespace deepvqe {

struct OracleToggles {
  bool block_exact = true;  // exact block spectrum, enables the fidelity report
  bool dense = false;
  bool lanczos = false;
  bool ite = false;
  bool effective_exact = false;
  int full_qubit_cap = 24;
  std::size_t effective_max_dim = std::size_t{1} << 24;
};

struct RunConfig {
  std::string model = "block4";  // builtin name or JSON model path
  int n_blocks = 2;
  bool periodic = false;
  /// "xyz" (default), "z", or "none" (identity only, K = 1).
  std::string excitations = "xyz";
  OptimizerConfig first_vqe{};
  OptimizerConfig second_vqe{.depth = 4, .restarts = 3};
  SecondStageAnsatz second_ansatz = SecondStageAnsatz::kEffectiveGenerated;
  /// Group sizes for recursion; empty runs a single second stage.
  std::vector<int> levels;
  OracleToggles oracles;
  double margin = 1.0;
  double drop_tol = kBasisDropTolerance;
  int qubit_cap = kStatevectorQubitCap;
  int threads = 1;
  std::string output;
};

Json run_config_to_json(const RunConfig& c);
/// Missing fields keep their defaults; unknown fields are rejected.
RunConfig run_config_from_json(const Json& j);

struct BlockStage {
  OptimizationResult vqe;
  Statevector state;
  std::optional<double> exact_energy;
  std::optional<int> degeneracy;
  std::optional<double> fidelity;
};

/// First VQE on one block (hardware-efficient ansatz on the model's edges).
BlockStage solve_block(const ModelDefinition& model, const RunConfig& config);

/// Block spec with the configured excitation set.
SubsystemSpec configured_block(const ModelDefinition& model, const RunConfig& config);

/// Every block of the chain shares one solved ground state.
HierarchyLevel chain_level(const BlockChainProblem& chain, const Statevector& ground);

/// Single-level effective problem over the whole chain.
EffectiveProblem build_chain_effective(const BlockChainProblem& chain, const Statevector& ground,
                                       const AssembleOptions& options, double drop_tol = kBasisDropTolerance);

struct PipelineResult {
  std::string model;
  int n_blocks = 0;
  double first_vqe_energy = 0.0;
  std::optional<double> block_exact_energy;
  std::optional<double> fidelity;
  double local_energy = 0.0;
  std::optional<double> effective_exact;
  double deep_vqe_energy = 0.0;
  std::optional<double> dense_energy;
  std::optional<double> lanczos_energy;
  std::optional<double> ite_energy;
  int k = 0;
  int encoded_qubits = 0;
  std::vector<LevelReport> levels;
  std::uint64_t first_vqe_seed = 0;
  std::uint64_t second_vqe_seed = 0;
  std::map<std::string, double> wall_times;

  Json to_json() const;
};

struct PipelineOptions {
  /// Stage artifacts (block.json, effective.json, solve.json) go here.
  std::string artifact_dir;
  /// Reuse artifacts already present in artifact_dir.
  bool resume = false;
  /// "block", "effective", "solve" or "" (all stages, oracles included).
  std::string stop_after;
};

/// First VQE -> local bases -> effective problem -> second VQE (or
/// recursion) -> optional oracles. Stage failures are rethrown tagged with
/// the stage name.
PipelineResult run_pipeline(const RunConfig& config, const PipelineOptions& options = {});

struct Table1Config {
  std::vector<int> sizes{1, 2, 3, 4, 5, 6, 8};
  OptimizerConfig first_vqe{};
  OptimizerConfig second_vqe{.depth = 4, .restarts = 3, .gradient = GradientMethod::kAdjoint};
  int deep_vqe_qubit_cap = 18;
  std::size_t effective_max_dim = 200000;
  int ite_qubit_cap = 20;
};

struct Table1Row {
  int n = 0;
  std::optional<double> deep_vqe;
  std::optional<double> local;
  std::optional<double> effective;
  std::optional<double> ite;
  std::vector<std::string> notes;
};

std::vector<Table1Row> reproduce_table1(const Table1Config& config = {});
std::string table1_csv(const std::vector<Table1Row>& rows);
/// Aligned table with the published reference values alongside.
std::string table1_text(const std::vector<Table1Row>& rows);

Json resource_report_to_json(const ResourceReport& r);

/// Wraps a stage failure: "[stage] message", same exception category.
[[noreturn]] void rethrow_tagged(const std::string& stage);

}  // namespace deepvqe
