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

// Command-line front end: each subcommand runs one pipeline stage (or all of
// them) from a JSON run config, with a few flags overriding config fields.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "deepvqe/pipeline.hpp"

using namespace deepvqe;

namespace {

struct Common {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string stage;
  std::string resume;
  std::string model;
  std::optional<int> blocks;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "JSON run config");
  app->add_option("--out", c.out, "output path");
  app->add_option("--seed", c.seed, "overrides seed_base of both VQE stages");
  app->add_option("--threads", c.threads, "worker threads for restarts");
  app->add_option("--stage", c.stage, "stop after this stage (block, effective, solve)");
  app->add_option("--resume", c.resume, "artifact directory; existing stage artifacts are reused");
  app->add_option("--model", c.model, "builtin model (block4, kagome12) or model JSON path");
  app->add_option("--blocks", c.blocks, "number of blocks in the chain");
}

RunConfig load_config(const Common& c) {
  RunConfig rc;
  if (!c.config_path.empty()) rc = run_config_from_json(read_json_file(c.config_path));
  if (!c.model.empty()) rc.model = c.model;
  if (c.blocks) rc.n_blocks = *c.blocks;
  if (c.seed) {
    rc.first_vqe.seed_base = *c.seed;
    rc.second_vqe.seed_base = *c.seed;
  }
  if (c.threads) rc.threads = *c.threads;
  if (!c.out.empty()) rc.output = c.out;
  return rc;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "-";
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << *v;
  return s.str();
}

void print_result(const PipelineResult& r) {
  std::cout << "model            " << r.model << " x " << r.n_blocks << '\n'
            << "first VQE        " << fmt(r.first_vqe_energy) << "  (exact " << fmt(r.block_exact_energy)
            << ", fidelity " << fmt(r.fidelity) << ")\n"
            << "local energy     " << fmt(r.local_energy) << "  (K = " << r.k << ", " << r.encoded_qubits
            << " encoded qubits)\n"
            << "deep VQE         " << fmt(r.deep_vqe_energy) << '\n'
            << "effective exact  " << fmt(r.effective_exact) << '\n'
            << "dense            " << fmt(r.dense_energy) << '\n'
            << "lanczos          " << fmt(r.lanczos_energy) << '\n'
            << "ite              " << fmt(r.ite_energy) << '\n';
}

int run_stage(const Common& c, const std::string& stop_after) {
  const RunConfig rc = load_config(c);
  PipelineOptions po;
  po.artifact_dir = c.resume;
  po.resume = !c.resume.empty();
  po.stop_after = stop_after;
  const PipelineResult r = run_pipeline(rc, po);
  Json doc = r.to_json();
  doc["config"] = run_config_to_json(rc);
  emit(rc.output, doc.dump(2) + "\n");
  print_result(r);
  return 0;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return 2;
  if (dynamic_cast<const ResourceError*>(&e)) return 3;
  if (dynamic_cast<const ConvergenceError*>(&e)) return 4;
  if (dynamic_cast<const OptimizerError*>(&e)) return 5;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divide-and-conquer VQE on a classical statevector simulator"};
  app.require_subcommand(1);
  Common c;

  auto* solve_block_cmd = app.add_subcommand("solve-block", "first VQE on one block");
  auto* build_cmd = app.add_subcommand("build-effective", "local bases and the effective problem");
  auto* solve_eff_cmd = app.add_subcommand("solve-effective", "second VQE on the effective problem");
  auto* pipeline_cmd = app.add_subcommand("pipeline", "all stages, then the configured oracles");
  auto* oracle_cmd = app.add_subcommand("oracle", "exact reference energies of the full chain");
  auto* table_cmd = app.add_subcommand("reproduce-table1", "4xN Heisenberg benchmark table");
  auto* res_cmd = app.add_subcommand("estimate-resources", "qubit counts for a blocking plan");
  for (auto* s : {solve_block_cmd, build_cmd, solve_eff_cmd, pipeline_cmd, oracle_cmd, table_cmd, res_cmd}) {
    add_common(s, c);
  }

  std::vector<int> plan;
  res_cmd->add_option("plan", plan, "block side per level, e.g. 2 2 2 2 or 2,2,2,2")->required()->delimiter(',');
  int deep_cap = 18;
  std::vector<int> sizes;
  table_cmd->add_option("--deep-cap", deep_cap, "largest second-stage register to simulate");
  table_cmd->add_option("--sizes", sizes, "chain lengths (default 1 2 3 4 5 6 8)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_block_cmd->parsed()) return run_stage(c, "block");
    if (build_cmd->parsed()) return run_stage(c, "effective");
    if (solve_eff_cmd->parsed()) return run_stage(c, "solve");
    if (pipeline_cmd->parsed()) return run_stage(c, c.stage);
    if (oracle_cmd->parsed()) {
      RunConfig rc = load_config(c);
      const ModelDefinition model = load_model(rc.model);
      const BlockChainProblem ch = chain(model.block, rc.n_blocks, model.coupling, rc.periodic);
      const Observable full = materialize_full(ch, rc.oracles.full_qubit_cap);
      Json doc{{"kind", "oracle_result"}, {"model", model.name}, {"n_blocks", rc.n_blocks}};
      if (full.n_qubits() <= kDenseQubitCap) {
        const auto d = exact_ground_dense(full);
        doc["dense"] = spectrum_to_json(d);
        std::cout << "dense    " << fmt(d.ground_energy) << "  degeneracy " << d.degeneracy << '\n';
      }
      LanczosConfig lc;
      lc.qubit_cap = rc.oracles.full_qubit_cap;
      lc.seed = rc.first_vqe.seed_base;
      const auto l = lanczos_ground(full, lc);
      doc["lanczos"] = spectrum_to_json(l);
      std::cout << "lanczos  " << fmt(l.ground_energy) << "  degeneracy " << l.degeneracy << '\n';
      emit(rc.output, doc.dump(2) + "\n");
      return 0;
    }
    if (table_cmd->parsed()) {
      Table1Config tc;
      tc.deep_vqe_qubit_cap = deep_cap;
      if (!sizes.empty()) tc.sizes = sizes;
      if (c.seed) {
        tc.first_vqe.seed_base = *c.seed;
        tc.second_vqe.seed_base = *c.seed;
      }
      if (c.threads) tc.first_vqe.threads = tc.second_vqe.threads = *c.threads;
      const auto rows = reproduce_table1(tc);
      emit(c.out, table1_csv(rows));
      std::cout << table1_text(rows);
      return 0;
    }
    if (res_cmd->parsed()) {
      const ResourceReport r = estimate_resources(plan);
      emit(c.out, resource_report_to_json(r).dump(2) + "\n");
      std::cout << r.to_text();
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 1;
}
