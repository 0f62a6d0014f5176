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

#include "deepvqe/models.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kagome12_data.hpp"

namespace deepvqe {

Observable heisenberg_observable(int n_qubits, const std::vector<Edge>& edges) {
  Observable h(n_qubits);
  for (auto [a, b] : edges) {
    require(a >= 0 && a < n_qubits && b >= 0 && b < n_qubits && a != b, "invalid edge");
    for (Pauli p : kXYZ) {
      PauliString s(n_qubits);
      s.set(a, p);
      s.set(b, p);
      h.add(1.0, s);
    }
  }
  h.canonicalize();
  return h;
}

std::vector<Edge> parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    int a = 0;
    int b = 0;
    if (!(fields >> a)) continue;
    require(static_cast<bool>(fields >> b), "edge line needs two indices: " + line);
    edges.emplace_back(a, b);
  }
  return edges;
}

std::vector<Edge> block4_edges() { return {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}; }

std::vector<Edge> kagome12_edges() { return parse_edge_list(detail::kKagome12Edges); }

namespace {

SubsystemSpec heisenberg_spec(int n, const std::vector<Edge>& edges, std::vector<int> boundary) {
  SubsystemSpec s;
  s.n_qubits = n;
  s.hamiltonian = heisenberg_observable(n, edges);
  s.boundary_qubits = std::move(boundary);
  s.excitations = default_excitations(n, s.boundary_qubits);
  return s;
}

}  // namespace

SubsystemSpec heisenberg_block4() { return heisenberg_spec(4, block4_edges(), {0, 2}); }

SubsystemSpec kagome12() { return heisenberg_spec(12, kagome12_edges(), {0, 6}); }

std::vector<InteractionTerm> default_coupling(const SubsystemSpec& block) {
  require(block.boundary_qubits.size() >= 2, "default coupling needs two boundary qubits");
  return heisenberg_coupling(block.n_qubits, block.boundary_qubits[0], block.n_qubits, block.boundary_qubits[1]);
}

BlockChainProblem chain(const SubsystemSpec& block, int n_blocks, const std::vector<InteractionTerm>& coupling,
                        bool periodic) {
  require(n_blocks >= 1, "a chain needs at least one block");
  block.validate();
  for (const auto& t : coupling) {
    require(t.left.n_qubits() == block.n_qubits && t.right.n_qubits() == block.n_qubits,
            "coupling template does not match the block size");
  }
  BlockChainProblem p;
  p.block = block;
  p.n_blocks = n_blocks;
  p.periodic = periodic;
  const int links = periodic && n_blocks > 2 ? n_blocks : n_blocks - 1;
  for (int i = 0; i < links; ++i) p.couplings.push_back({i, (i + 1) % n_blocks, coupling});
  return p;
}

BlockChainProblem chain(const SubsystemSpec& block, int n_blocks) {
  return chain(block, n_blocks, default_coupling(block));
}

Observable materialize_full(const BlockChainProblem& problem, int qubit_cap) {
  const int n = problem.n_qubits();
  if (n > qubit_cap) {
    throw ResourceError("full system of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(qubit_cap));
  }
  const int b = problem.block.n_qubits;
  Observable full(n);
  for (int i = 0; i < problem.n_blocks; ++i) full += problem.block.hamiltonian.shifted(n, i * b);
  for (const auto& c : problem.couplings) {
    for (const auto& t : c.terms) {
      full += observable_product(t.left.shifted(n, c.site_i * b), t.right.shifted(n, c.site_j * b)) * t.coeff;
    }
  }
  return full;
}

std::vector<Edge> interaction_edges(const Observable& h) {
  std::vector<Edge> edges;
  for (const auto& t : h.terms()) {
    if (t.string.weight() != 2) continue;
    const std::uint64_t support = t.string.x_mask() | t.string.z_mask();
    const int a = std::countr_zero(support);
    const int b = 63 - std::countl_zero(support);
    if (std::find(edges.begin(), edges.end(), Edge{a, b}) == edges.end()) edges.emplace_back(a, b);
  }
  return edges;
}

ModelDefinition model_from_json_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    ModelDefinition m;
    m.name = j.value("name", std::string("custom"));
    const int n = j.at("n_qubits").get<int>();
    SubsystemSpec& s = m.block;
    s.n_qubits = n;
    s.hamiltonian = Observable(n);
    for (const auto& t : j.at("terms")) {
      const auto letters = t.at(1).get<std::string>();
      require(static_cast<int>(letters.size()) == n, "model term has the wrong length: " + letters);
      s.hamiltonian.add(t.at(0).get<double>(), letters);
    }
    s.hamiltonian.canonicalize();
    s.boundary_qubits = j.at("boundary").get<std::vector<int>>();
    s.excitations = default_excitations(n, s.boundary_qubits);
    s.validate();
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) m.ansatz_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    } else {
      m.ansatz_edges = interaction_edges(s.hamiltonian);
    }
    if (j.contains("coupling")) {
      for (const auto& t : j.at("coupling")) {
        const auto l = t.at(1).get<std::string>();
        const auto r = t.at(2).get<std::string>();
        require(static_cast<int>(l.size()) == n && static_cast<int>(r.size()) == n,
                "coupling factor has the wrong length");
        m.coupling.push_back({t.at(0).get<double>(), Observable(n).add(1.0, l), Observable(n).add(1.0, r)});
      }
    } else {
      m.coupling = default_coupling(s);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

ModelDefinition load_model(const std::string& name_or_path) {
  if (name_or_path == "block4") {
    return {"block4", heisenberg_block4(), default_coupling(heisenberg_block4()), block4_edges()};
  }
  if (name_or_path == "kagome12") return {"kagome12", kagome12(), default_coupling(kagome12()), kagome12_edges()};
  std::ifstream in(name_or_path);
  if (!in) throw InputError("unknown model or unreadable file: " + name_or_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json_text(buf.str());
}

}  // namespace deepvqe
