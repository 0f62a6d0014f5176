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

#include "deepvqe/recursion.hpp"

#include <algorithm>
#include <map>

namespace deepvqe {

std::vector<LocalBasis> build_bases(const HierarchyLevel& level, double drop_tol) {
  std::vector<LocalBasis> bases;
  bases.reserve(level.sites.size());
  for (const auto& s : level.sites) {
    s.spec.validate();
    require(s.ground.n_qubits() == s.spec.n_qubits, "site ground state has the wrong register size");
    bases.push_back(build_local_basis(s.ground, s.spec.excitations, drop_tol));
  }
  return bases;
}

EffectiveProblem build_group_problem(const HierarchyLevel& level, const std::vector<LocalBasis>& bases,
                                     const std::vector<int>& members, const AssembleOptions& options) {
  require(bases.size() == level.sites.size(), "one basis per site is required");
  std::map<int, int> local;
  std::vector<MatrixXc> sites;
  for (int site : members) {
    require(site >= 0 && site < static_cast<int>(level.sites.size()), "group member out of range");
    require(local.emplace(site, static_cast<int>(local.size())).second, "duplicate group member");
    const auto u = static_cast<std::size_t>(site);
    MatrixXc h = effective_site_matrix(bases[u], level.sites[u].spec.hamiltonian);
    h.diagonal().array() -= level.sites[u].shift;
    sites.push_back(std::move(h));
  }
  std::vector<PairTensor> pairs;
  for (const auto& c : level.couplings) {
    const auto i = local.find(c.site_i);
    const auto j = local.find(c.site_j);
    if (i == local.end() || j == local.end()) continue;
    PairTensor p = effective_interaction(bases[static_cast<std::size_t>(c.site_i)],
                                         bases[static_cast<std::size_t>(c.site_j)], c);
    p.site_i = i->second;
    p.site_j = j->second;
    pairs.push_back(std::move(p));
  }
  return assemble_effective(std::move(sites), std::move(pairs), options);
}

Observable embed_site_operator(const EffectiveProblem& problem, int site, const MatrixXc& m) {
  require(m.rows() == m.cols() && m.rows() <= (1 << problem.qubits_per_site), "site operator too large");
  MatrixXc padded = MatrixXc::Zero(1 << problem.qubits_per_site, 1 << problem.qubits_per_site);
  padded.topLeftCorner(m.rows(), m.cols()) = m;
  return matrix_to_observable(padded).remapped(problem.n_encoded_qubits(), problem.site_qubits(site));
}

namespace {

void add_excitation(std::vector<Observable>& list, const Observable& w) {
  const std::string key = w.canonicalized().to_text();
  for (const auto& e : list) {
    if (e.canonicalized().to_text() == key) return;
  }
  list.push_back(w);
}

}  // namespace

RecursionResult recurse(HierarchyLevel level, const RecursionConfig& config) {
  require(!config.group_sizes.empty(), "recursion needs at least one level");
  require(!level.sites.empty(), "recursion needs at least one site");
  RecursionResult out;
  AssembleOptions assemble = config.assemble;
  assemble.build_encoded = true;

  for (std::size_t lvl = 0; lvl < config.group_sizes.size(); ++lvl) {
    const int g = config.group_sizes[lvl];
    const int n = static_cast<int>(level.sites.size());
    require(g >= 1, "group size must be positive");
    const int n_groups = (n + g - 1) / g;
    const bool last = lvl + 1 == config.group_sizes.size();
    require(!last || n_groups == 1, "the last level must merge all remaining sites");

    const auto bases = build_bases(level, config.drop_tol);
    std::vector<EffectiveProblem> problems;
    HierarchyLevel next;
    LevelReport report;
    report.n_groups = n_groups;
    for (const auto& b : bases) report.site_dims.push_back(b.k);

    for (int grp = 0; grp < n_groups; ++grp) {
      std::vector<int> members;
      for (int s = grp * g; s < std::min(n, (grp + 1) * g); ++s) members.push_back(s);
      problems.push_back(build_group_problem(level, bases, members, assemble));
      const EffectiveProblem& p = problems.back();
      const VqeProblem vqe = second_stage_problem(p, config.ansatz, config.optimizer.depth, config.qubit_cap);
      const OptimizationResult r = run_vqe(vqe, config.optimizer);
      report.register_qubits = std::max(report.register_qubits, p.n_encoded_qubits());
      report.local_energies.push_back(local_product_energy(p));
      report.energies.push_back(r.best_energy - p.shift);

      HierarchySite site;
      site.spec.n_qubits = p.n_encoded_qubits();
      site.spec.hamiltonian = p.encoded;
      site.spec.excitations.push_back(Observable::identity(site.spec.n_qubits));
      site.ground = vqe.state(r.best_params);
      site.shift = p.shift;
      next.sites.push_back(std::move(site));
    }

    for (const auto& c : level.couplings) {
      const int gi = c.site_i / g;
      const int gj = c.site_j / g;
      if (gi == gj) continue;
      const auto& bi = bases[static_cast<std::size_t>(c.site_i)];
      const auto& bj = bases[static_cast<std::size_t>(c.site_j)];
      InteractionSpec lifted{gi, gj, {}};
      for (const auto& t : c.terms) {
        Observable l = embed_site_operator(problems[static_cast<std::size_t>(gi)], c.site_i % g,
                                           project_operator(bi, t.left));
        Observable r = embed_site_operator(problems[static_cast<std::size_t>(gj)], c.site_j % g,
                                           project_operator(bj, t.right));
        add_excitation(next.sites[static_cast<std::size_t>(gi)].spec.excitations, l);
        add_excitation(next.sites[static_cast<std::size_t>(gj)].spec.excitations, r);
        lifted.terms.push_back({t.coeff, std::move(l), std::move(r)});
      }
      next.couplings.push_back(std::move(lifted));
    }

    out.levels.push_back(report);
    if (last) {
      out.energy = report.energies.front();
      out.local_energy = report.local_energies.front();
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace deepvqe
