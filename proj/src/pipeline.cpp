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

#include "deepvqe/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace deepvqe {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::vector<Pauli> excitation_paulis(const std::string& choice) {
  if (choice == "xyz") return {Pauli::X, Pauli::Y, Pauli::Z};
  if (choice == "z") return {Pauli::Z};
  if (choice == "none") return {};
  throw InputError("unknown excitation choice: " + choice);
}

Json level_to_json(const LevelReport& l) {
  return {{"n_groups", l.n_groups},
          {"site_dims", l.site_dims},
          {"register_qubits", l.register_qubits},
          {"local_energies", l.local_energies},
          {"energies", l.energies}};
}

LevelReport level_from_json(const Json& j) {
  LevelReport l;
  l.n_groups = j.at("n_groups").get<int>();
  l.site_dims = j.at("site_dims").get<std::vector<int>>();
  l.register_qubits = j.at("register_qubits").get<int>();
  l.local_energies = j.at("local_energies").get<std::vector<double>>();
  l.energies = j.at("energies").get<std::vector<double>>();
  return l;
}

// Artifact keys: a stage's artifact is reused only if every setting it
// depends on is unchanged.
Json block_key(const RunConfig& c) {
  return {{"model", c.model}, {"first_vqe", optimizer_config_to_json(c.first_vqe)}};
}

Json effective_key(const RunConfig& c) {
  Json k = block_key(c);
  k["n_blocks"] = c.n_blocks;
  k["periodic"] = c.periodic;
  k["excitations"] = c.excitations;
  k["margin"] = c.margin;
  k["drop_tol"] = c.drop_tol;
  return k;
}

Json solve_key(const RunConfig& c) {
  Json k = effective_key(c);
  k["second_vqe"] = optimizer_config_to_json(c.second_vqe);
  k["second_ansatz"] = to_string(c.second_ansatz);
  k["levels"] = c.levels;
  return k;
}

std::optional<Json> load_artifact(const PipelineOptions& o, const std::string& name, const Json& key) {
  if (!o.resume || o.artifact_dir.empty()) return std::nullopt;
  const auto path = std::filesystem::path(o.artifact_dir) / name;
  if (!std::filesystem::exists(path)) return std::nullopt;
  Json j = read_json_file(path.string());
  if (!j.contains("key") || j.at("key") != key) return std::nullopt;
  return j;
}

void save_artifact(const PipelineOptions& o, const std::string& name, Json j) {
  if (o.artifact_dir.empty()) return;
  std::filesystem::create_directories(o.artifact_dir);
  j["schema"] = kSchemaVersion;
  write_json_file((std::filesystem::path(o.artifact_dir) / name).string(), j);
}

OptimizerConfig with_threads(OptimizerConfig c, int threads) {
  c.threads = std::max(c.threads, threads);
  return c;
}

}  // namespace

void rethrow_tagged(const std::string& stage) {
  const std::string tag = "[" + stage + "] ";
  try {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(tag + e.what(), e.residual());
  } catch (const ResourceError& e) {
    throw ResourceError(tag + e.what());
  } catch (const InputError& e) {
    throw InputError(tag + e.what());
  } catch (const OptimizerError& e) {
    throw OptimizerError(tag + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(tag + e.what());
  }
}

Json run_config_to_json(const RunConfig& c) {
  return {{"model", c.model},
          {"n_blocks", c.n_blocks},
          {"periodic", c.periodic},
          {"excitations", c.excitations},
          {"first_vqe", optimizer_config_to_json(c.first_vqe)},
          {"second_vqe", optimizer_config_to_json(c.second_vqe)},
          {"second_ansatz", to_string(c.second_ansatz)},
          {"levels", c.levels},
          {"oracles",
           {{"block_exact", c.oracles.block_exact},
            {"dense", c.oracles.dense},
            {"lanczos", c.oracles.lanczos},
            {"ite", c.oracles.ite},
            {"effective_exact", c.oracles.effective_exact},
            {"full_qubit_cap", c.oracles.full_qubit_cap},
            {"effective_max_dim", c.oracles.effective_max_dim}}},
          {"margin", c.margin},
          {"drop_tol", c.drop_tol},
          {"qubit_cap", c.qubit_cap},
          {"threads", c.threads},
          {"output", c.output}};
}

RunConfig run_config_from_json(const Json& j) {
  static const std::vector<std::string> known{"model",  "n_blocks", "periodic",  "excitations", "first_vqe",
                                              "second_vqe", "second_ansatz", "levels", "oracles", "margin",
                                              "drop_tol", "qubit_cap", "threads", "output"};
  require(j.is_object(), "run config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    require(std::find(known.begin(), known.end(), key) != known.end(), "unknown run config field: " + key);
  }
  try {
    RunConfig c;
    c.model = j.value("model", c.model);
    c.n_blocks = j.value("n_blocks", c.n_blocks);
    c.periodic = j.value("periodic", c.periodic);
    c.excitations = j.value("excitations", c.excitations);
    if (j.contains("first_vqe")) c.first_vqe = optimizer_config_from_json(j.at("first_vqe"), c.first_vqe);
    if (j.contains("second_vqe")) c.second_vqe = optimizer_config_from_json(j.at("second_vqe"), c.second_vqe);
    if (j.contains("second_ansatz")) {
      c.second_ansatz = second_stage_ansatz_from_string(j.at("second_ansatz").get<std::string>());
    }
    c.levels = j.value("levels", c.levels);
    if (j.contains("oracles")) {
      const auto& o = j.at("oracles");
      c.oracles.block_exact = o.value("block_exact", c.oracles.block_exact);
      c.oracles.dense = o.value("dense", c.oracles.dense);
      c.oracles.lanczos = o.value("lanczos", c.oracles.lanczos);
      c.oracles.ite = o.value("ite", c.oracles.ite);
      c.oracles.effective_exact = o.value("effective_exact", c.oracles.effective_exact);
      c.oracles.full_qubit_cap = o.value("full_qubit_cap", c.oracles.full_qubit_cap);
      c.oracles.effective_max_dim = o.value("effective_max_dim", c.oracles.effective_max_dim);
    }
    c.margin = j.value("margin", c.margin);
    c.drop_tol = j.value("drop_tol", c.drop_tol);
    c.qubit_cap = j.value("qubit_cap", c.qubit_cap);
    c.threads = j.value("threads", c.threads);
    c.output = j.value("output", c.output);
    require(c.n_blocks >= 1, "n_blocks must be at least 1");
    excitation_paulis(c.excitations);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed run config: ") + e.what());
  }
}

SubsystemSpec configured_block(const ModelDefinition& model, const RunConfig& config) {
  SubsystemSpec block = model.block;
  const auto paulis = excitation_paulis(config.excitations);
  block.excitations = default_excitations(block.n_qubits, block.boundary_qubits, paulis);
  return block;
}

BlockStage solve_block(const ModelDefinition& model, const RunConfig& config) {
  const SubsystemSpec& block = model.block;
  const OptimizerConfig oc = with_threads(config.first_vqe, config.threads);
  const VqeProblem problem(Ansatz::hardware_efficient(block.n_qubits, oc.depth, model.ansatz_edges),
                           EnergyOperator(block.hamiltonian), Statevector(block.n_qubits, config.qubit_cap));
  BlockStage out;
  out.vqe = run_vqe(problem, oc);
  out.state = problem.state(out.vqe.best_params);
  if (config.oracles.block_exact && block.n_qubits <= kDenseQubitCap) {
    const SpectrumResult exact = exact_ground_dense(block.hamiltonian);
    out.exact_energy = exact.ground_energy;
    out.degeneracy = exact.degeneracy;
    out.fidelity = fidelity(out.state, exact.ground_subspace);
  }
  return out;
}

HierarchyLevel chain_level(const BlockChainProblem& chain, const Statevector& ground) {
  HierarchyLevel level;
  for (int b = 0; b < chain.n_blocks; ++b) level.sites.push_back({chain.block, ground, 0.0});
  level.couplings = chain.couplings;
  return level;
}

EffectiveProblem build_chain_effective(const BlockChainProblem& chain, const Statevector& ground,
                                       const AssembleOptions& options, double drop_tol) {
  const HierarchyLevel level = chain_level(chain, ground);
  // Identical blocks share one ground state, hence one basis.
  const LocalBasis basis = build_local_basis(ground, chain.block.excitations, drop_tol);
  const std::vector<LocalBasis> bases(level.sites.size(), basis);
  std::vector<int> members(level.sites.size());
  std::iota(members.begin(), members.end(), 0);
  return build_group_problem(level, bases, members, options);
}

Json PipelineResult::to_json() const {
  Json lv = Json::array();
  for (const auto& l : levels) lv.push_back(level_to_json(l));
  return {{"schema", kSchemaVersion},
          {"kind", "pipeline_result"},
          {"model", model},
          {"n_blocks", n_blocks},
          {"first_vqe_energy", first_vqe_energy},
          {"block_exact_energy", optional_json(block_exact_energy)},
          {"fidelity", optional_json(fidelity)},
          {"local_energy", local_energy},
          {"effective_exact", optional_json(effective_exact)},
          {"deep_vqe_energy", deep_vqe_energy},
          {"dense_energy", optional_json(dense_energy)},
          {"lanczos_energy", optional_json(lanczos_energy)},
          {"ite_energy", optional_json(ite_energy)},
          {"k", k},
          {"encoded_qubits", encoded_qubits},
          {"levels", std::move(lv)},
          {"seeds", {{"first_vqe", first_vqe_seed}, {"second_vqe", second_vqe_seed}}},
          {"wall_times", wall_times}};
}

PipelineResult run_pipeline(const RunConfig& config, const PipelineOptions& options) {
  PipelineResult out;
  ModelDefinition model;
  BlockChainProblem chain;
  try {
    model = load_model(config.model);
    model.block = configured_block(model, config);
    chain = deepvqe::chain(model.block, config.n_blocks, model.coupling, config.periodic);
  } catch (...) {
    rethrow_tagged("config");
  }
  out.model = model.name;
  out.n_blocks = config.n_blocks;

  // First VQE, shared by all blocks.
  Statevector ground;
  try {
    auto t0 = Clock::now();
    if (auto a = load_artifact(options, "block.json", block_key(config))) {
      out.first_vqe_energy = a->at("result").at("best_energy").get<double>();
      out.first_vqe_seed = a->at("result").at("seed").get<std::uint64_t>();
      out.block_exact_energy = optional_from<double>(*a, "exact_energy");
      out.fidelity = optional_from<double>(*a, "fidelity");
      ground = statevector_from_json(a->at("state"));
    } else {
      BlockStage b = solve_block(model, config);
      out.first_vqe_energy = b.vqe.best_energy;
      out.first_vqe_seed = b.vqe.seed;
      out.block_exact_energy = b.exact_energy;
      out.fidelity = b.fidelity;
      ground = b.state;
      save_artifact(options, "block.json",
                    {{"kind", "block_stage"},
                     {"key", block_key(config)},
                     {"result", optimization_result_to_json(b.vqe)},
                     {"exact_energy", optional_json(b.exact_energy)},
                     {"degeneracy", optional_json(b.degeneracy)},
                     {"fidelity", optional_json(b.fidelity)},
                     {"state", statevector_to_json(b.state)}});
    }
    out.wall_times["block"] = seconds_since(t0);
  } catch (...) {
    rethrow_tagged("block");
  }
  if (options.stop_after == "block") return out;

  // Local bases and the single-level effective problem.
  EffectiveProblem problem;
  try {
    auto t0 = Clock::now();
    if (auto a = load_artifact(options, "effective.json", effective_key(config))) {
      problem = effective_problem_from_json(a->at("problem"));
    } else {
      problem = build_chain_effective(chain, ground, {.margin = config.margin}, config.drop_tol);
      save_artifact(options, "effective.json",
                    {{"kind", "effective_stage"}, {"key", effective_key(config)},
                     {"problem", effective_problem_to_json(problem)}});
    }
    out.local_energy = local_product_energy(problem);
    out.k = problem.k;
    out.encoded_qubits = problem.n_encoded_qubits();
    out.wall_times["effective"] = seconds_since(t0);
  } catch (...) {
    rethrow_tagged("effective");
  }
  if (options.stop_after == "effective") return out;

  // Second VQE, or the recursion plan.
  try {
    auto t0 = Clock::now();
    if (auto a = load_artifact(options, "solve.json", solve_key(config))) {
      out.deep_vqe_energy = a->at("deep_vqe_energy").get<double>();
      out.second_vqe_seed = a->at("seed").get<std::uint64_t>();
      for (const auto& l : a->at("levels")) out.levels.push_back(level_from_json(l));
    } else {
      const OptimizerConfig oc = with_threads(config.second_vqe, config.threads);
      if (config.levels.empty()) {
        const OptimizationResult r = second_stage_vqe(problem, config.second_ansatz, oc, config.qubit_cap);
        out.deep_vqe_energy = r.best_energy;
        out.second_vqe_seed = r.seed;
      } else {
        RecursionConfig rc;
        rc.group_sizes = config.levels;
        rc.ansatz = config.second_ansatz;
        rc.optimizer = oc;
        rc.assemble.margin = config.margin;
        rc.qubit_cap = config.qubit_cap;
        rc.drop_tol = config.drop_tol;
        const RecursionResult r = recurse(chain_level(chain, ground), rc);
        out.deep_vqe_energy = r.energy;
        out.levels = r.levels;
      }
      Json lv = Json::array();
      for (const auto& l : out.levels) lv.push_back(level_to_json(l));
      save_artifact(options, "solve.json",
                    {{"kind", "solve_stage"},
                     {"key", solve_key(config)},
                     {"deep_vqe_energy", out.deep_vqe_energy},
                     {"seed", out.second_vqe_seed},
                     {"levels", lv}});
    }
    out.wall_times["solve"] = seconds_since(t0);
  } catch (...) {
    rethrow_tagged("solve");
  }
  if (options.stop_after == "solve") return out;

  try {
    auto t0 = Clock::now();
    const auto& o = config.oracles;
    if (o.effective_exact) {
      EffectiveOracleConfig ec;
      ec.max_dim = o.effective_max_dim;
      out.effective_exact = exact_ground_effective(problem, ec);
    }
    if (o.dense || o.lanczos || o.ite) {
      const Observable full = materialize_full(chain, o.full_qubit_cap);
      if (o.dense) out.dense_energy = exact_ground_dense(full).ground_energy;
      if (o.lanczos) {
        LanczosConfig lc;
        lc.detect_degeneracy = false;
        lc.qubit_cap = o.full_qubit_cap;
        out.lanczos_energy = lanczos_ground(full, lc).ground_energy;
      }
      if (o.ite) {
        IteConfig ic;
        if (out.lanczos_energy) ic.reference_energy = out.lanczos_energy;
        const IteResult r = imaginary_time_evolution(full, random_statevector(full.n_qubits(), 11), ic);
        out.ite_energy = r.energy;
      }
    }
    out.wall_times["oracle"] = seconds_since(t0);
  } catch (...) {
    rethrow_tagged("oracle");
  }
  return out;
}

namespace {

struct Reference {
  int n;
  std::optional<double> deep, local, effective, ite;
};

const std::vector<Reference>& table1_reference() {
  static const std::vector<Reference> ref{
      {2, -14.46, -14.00, -14.46, -14.46},      {3, -21.89, -21.00, -21.89, -21.92},
      {4, -29.31, -28.00, -29.32, -29.39},      {5, -36.70, -35.00, -36.75, -36.85},
      {6, -44.13, -42.00, std::nullopt, -44.31}, {8, -59.02, -56.00, std::nullopt, std::nullopt}};
  return ref;
}

std::string cell(const std::optional<double>& v, int precision = 4) {
  if (!v) return "NA";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

}  // namespace

std::vector<Table1Row> reproduce_table1(const Table1Config& config) {
  RunConfig rc;
  rc.first_vqe = config.first_vqe;
  rc.oracles.block_exact = false;
  const ModelDefinition model = load_model("block4");
  const BlockStage block = solve_block(model, rc);

  std::vector<Table1Row> rows;
  for (int n : config.sizes) {
    Table1Row row;
    row.n = n;
    try {
      const BlockChainProblem chain = deepvqe::chain(model.block, n, model.coupling);
      const EffectiveProblem p = build_chain_effective(chain, block.state, {});
      row.local = local_product_energy(p);
      if (effective_dimension(p) <= config.effective_max_dim) {
        EffectiveOracleConfig ec;
        ec.max_dim = config.effective_max_dim;
        row.effective = exact_ground_effective(p, ec);
      } else {
        row.notes.push_back("effective: dimension over cap");
      }
      if (p.n_encoded_qubits() <= config.deep_vqe_qubit_cap) {
        row.deep_vqe = second_stage_vqe(p, SecondStageAnsatz::kEffectiveGenerated, config.second_vqe).best_energy;
      } else {
        row.notes.push_back("deep vqe: register over cap");
      }
      if (chain.n_qubits() <= config.ite_qubit_cap) {
        LanczosConfig lc;
        lc.detect_degeneracy = false;
        row.ite = lanczos_ground(materialize_full(chain, config.ite_qubit_cap), lc).ground_energy;
      } else {
        row.notes.push_back("ite: full system over cap");
      }
    } catch (const std::exception& e) {
      row.notes.push_back(e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  out << "system,DeepVQE,Local,Effective,ITE,notes\n";
  for (const auto& r : rows) {
    std::string notes;
    for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
    out << "4x" << r.n << ',' << cell(r.deep_vqe) << ',' << cell(r.local) << ',' << cell(r.effective) << ','
        << cell(r.ite) << ",\"" << notes << "\"\n";
  }
  return out.str();
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  auto col = [&](const std::optional<double>& v, const std::optional<double>& ref) {
    out << std::setw(11) << cell(v) << std::setw(9) << cell(ref, 2);
  };
  out << std::left << std::setw(7) << "system" << std::right << std::setw(11) << "DeepVQE" << std::setw(9) << "(ref)"
      << std::setw(11) << "Local" << std::setw(9) << "(ref)" << std::setw(11) << "Effective" << std::setw(9)
      << "(ref)" << std::setw(11) << "ITE" << std::setw(9) << "(ref)" << '\n';
  for (const auto& r : rows) {
    Reference ref{r.n, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    for (const auto& x : table1_reference()) {
      if (x.n == r.n) ref = x;
    }
    out << std::left << std::setw(7) << ("4x" + std::to_string(r.n)) << std::right;
    col(r.deep_vqe, ref.deep);
    col(r.local, ref.local);
    col(r.effective, ref.effective);
    col(r.ite, ref.ite);
    out << '\n';
  }
  return out.str();
}

Json resource_report_to_json(const ResourceReport& r) {
  Json levels = Json::array();
  for (const auto& e : r.levels) {
    levels.push_back({{"level", e.level},
                      {"block_side", e.block_side},
                      {"side_product", e.side_product},
                      {"site_dimension", e.site_dimension},
                      {"qubits_per_site", e.qubits_per_site},
                      {"vqe_qubits", e.vqe_qubits},
                      {"sites", e.sites},
                      {"pairs", e.pairs},
                      {"pauli_terms", e.pauli_terms},
                      {"matrix_elements", e.matrix_elements},
                      {"next_dimension", e.next_dimension}});
  }
  return {{"schema", kSchemaVersion},
          {"kind", "resource_report"},
          {"levels", std::move(levels)},
          {"physical_qubits", r.physical_qubits},
          {"max_vqe_qubits", r.max_vqe_qubits}};
}

}  // namespace deepvqe
