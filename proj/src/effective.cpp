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

#include "deepvqe/effective.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace deepvqe {

namespace {

MatrixXc pad(const MatrixXc& m, int dim) {
  MatrixXc out = MatrixXc::Zero(dim, dim);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

void check_factor(const Observable& o, const LocalBasis& basis, const char* side) {
  require(o.n_qubits() == basis.ground_state.n_qubits(),
          std::string("interaction ") + side + " factor does not act on its site");
}

}  // namespace

cplx PairTensor::element(int k, int kp, int l, int lp) const {
  cplx acc = 0.0;
  for (const auto& f : factors) acc += f.coeff * f.left(k, l) * f.right(kp, lp);
  return acc;
}

MatrixXc PairTensor::dense() const {
  const int d = k_i * k_j;
  MatrixXc out = MatrixXc::Zero(d, d);
  // kron(R, L) puts the site-i index in the fast position.
  for (const auto& f : factors) out += f.coeff * Eigen::kroneckerProduct(f.right, f.left).eval();
  return out;
}

PairTensor effective_interaction(const LocalBasis& basis_i, const LocalBasis& basis_j, const InteractionSpec& v) {
  PairTensor out;
  out.site_i = v.site_i;
  out.site_j = v.site_j;
  out.k_i = basis_i.k;
  out.k_j = basis_j.k;
  out.factors.reserve(v.terms.size());
  for (const auto& t : v.terms) {
    check_factor(t.left, basis_i, "left");
    check_factor(t.right, basis_j, "right");
    out.factors.push_back({t.coeff, project_operator(basis_i, t.left), project_operator(basis_j, t.right)});
  }
  return out;
}

int qubits_for_dimension(int k) {
  require(k >= 1, "site dimension must be positive");
  int q = 1;
  while ((1 << q) < k) ++q;
  return q;
}

std::vector<int> EffectiveProblem::site_qubits(int site) const {
  std::vector<int> out(static_cast<std::size_t>(qubits_per_site));
  std::iota(out.begin(), out.end(), site * qubits_per_site);
  return out;
}

MatrixXc EffectiveProblem::embedded_site(int site) const {
  return pad(site_matrices.at(static_cast<std::size_t>(site)), 1 << qubits_per_site);
}

MatrixXc EffectiveProblem::embedded_pair(std::size_t pair) const {
  const auto& p = pairs.at(pair);
  const int d = 1 << qubits_per_site;
  MatrixXc out = MatrixXc::Zero(d * d, d * d);
  for (const auto& f : p.factors) {
    out += f.coeff * Eigen::kroneckerProduct(pad(f.right, d), pad(f.left, d)).eval();
  }
  return out;
}

BlockOperator EffectiveProblem::block_operator() const {
  BlockOperator op(n_encoded_qubits());
  const int d = 1 << qubits_per_site;
  for (int s = 0; s < n_sites; ++s) {
    MatrixXc m = site_matrices[static_cast<std::size_t>(s)];
    m.diagonal().array() += site_shift;
    op.add(site_qubits(s), pad(m, d));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto targets = site_qubits(pairs[p].site_i);
    auto right = site_qubits(pairs[p].site_j);
    targets.insert(targets.end(), right.begin(), right.end());
    op.add(std::move(targets), embedded_pair(p));
  }
  return op;
}

EffectiveProblem assemble_effective(std::vector<MatrixXc> site_matrices, std::vector<PairTensor> pairs,
                                    const AssembleOptions& options) {
  require(!site_matrices.empty(), "effective problem needs at least one site");
  EffectiveProblem out;
  out.n_sites = static_cast<int>(site_matrices.size());
  int k = 0;
  for (const auto& m : site_matrices) {
    require(m.rows() == m.cols() && m.rows() > 0, "site matrix must be square and non-empty");
    require(is_hermitian(m), "site matrix is not Hermitian");
    k = std::max(k, static_cast<int>(m.rows()));
  }
  out.k = k;
  out.qubits_per_site = qubits_for_dimension(k);

  for (auto& p : pairs) {
    require(p.site_i >= 0 && p.site_i < out.n_sites && p.site_j >= 0 && p.site_j < out.n_sites &&
                p.site_i != p.site_j,
            "pair references an invalid site");
    require(p.k_i == site_matrices[static_cast<std::size_t>(p.site_i)].rows() &&
                p.k_j == site_matrices[static_cast<std::size_t>(p.site_j)].rows(),
            "pair tensor dimension does not match its sites");
    for (auto& f : p.factors) {
      f.left = pad(f.left, k);
      f.right = pad(f.right, k);
    }
    p.k_i = k;
    p.k_j = k;
    require(is_hermitian(p.dense()), "pair tensor is not Hermitian");
  }
  for (auto& m : site_matrices) {
    out.site_dims.push_back(static_cast<int>(m.rows()));
    m = pad(m, k);
  }

  out.site_matrices = std::move(site_matrices);
  out.pairs = std::move(pairs);

  const double h00 = local_product_energy(out);
  if (h00 >= 0.0) {
    out.site_shift = -(h00 / out.n_sites + options.margin);
    out.shift = out.n_sites * out.site_shift;
  }

  if (options.build_encoded) {
    const int m = out.n_encoded_qubits();
    require(m <= kMaxPauliQubits, "encoded register exceeds the Pauli string limit");
    out.encoded = Observable(m);
    const BlockOperator blocks = out.block_operator();
    for (const auto& term : blocks.terms()) {
      out.encoded += matrix_to_observable(term.matrix).remapped(m, term.targets);
    }
  }
  return out;
}

double local_product_energy(const EffectiveProblem& problem) {
  double e = 0.0;
  for (const auto& m : problem.site_matrices) e += m(0, 0).real();
  for (const auto& p : problem.pairs) e += p.element(0, 0, 0, 0).real();
  return e;
}

std::string to_string(SecondStageAnsatz kind) {
  return kind == SecondStageAnsatz::kEffectiveGenerated ? "effective" : "hardware_efficient";
}

SecondStageAnsatz second_stage_ansatz_from_string(const std::string& s) {
  if (s == "effective" || s == "effective_generated") return SecondStageAnsatz::kEffectiveGenerated;
  if (s == "hardware_efficient" || s == "hea") return SecondStageAnsatz::kHardwareEfficient;
  throw InputError("unknown second-stage ansatz: " + s);
}

Ansatz effective_generated_ansatz(const EffectiveProblem& problem, int depth) {
  require(depth >= 0, "depth must be non-negative");
  Ansatz a(problem.n_encoded_qubits());
  std::vector<int> generators;
  for (int s = 0; s < problem.n_sites; ++s) {
    generators.push_back(a.add_generator(problem.site_qubits(s), problem.embedded_site(s)));
  }
  for (std::size_t p = 0; p < problem.pairs.size(); ++p) {
    auto targets = problem.site_qubits(problem.pairs[p].site_i);
    auto right = problem.site_qubits(problem.pairs[p].site_j);
    targets.insert(targets.end(), right.begin(), right.end());
    generators.push_back(a.add_generator(std::move(targets), problem.embedded_pair(p)));
  }
  for (int c = 0; c < depth; ++c) {
    for (int g : generators) a.add_generator_slot(g);
  }
  a.set_depth(depth);
  return a;
}

Ansatz register_hardware_efficient_ansatz(const EffectiveProblem& problem, int depth) {
  const int m = problem.n_encoded_qubits();
  std::vector<Edge> edges;
  for (int q = 0; q + 1 < m; ++q) edges.emplace_back(q, q + 1);
  return Ansatz::hardware_efficient(m, depth, edges);
}

VqeProblem second_stage_problem(const EffectiveProblem& problem, SecondStageAnsatz kind, int depth,
                                int qubit_cap) {
  const int m = problem.n_encoded_qubits();
  if (m > qubit_cap) {
    throw ResourceError("second-stage register of " + std::to_string(m) + " qubits exceeds the cap of " +
                        std::to_string(qubit_cap));
  }
  Ansatz ansatz = kind == SecondStageAnsatz::kEffectiveGenerated ? effective_generated_ansatz(problem, depth)
                                                                 : register_hardware_efficient_ansatz(problem, depth);
  return VqeProblem(std::move(ansatz), EnergyOperator(problem.block_operator()), Statevector(m, qubit_cap));
}

OptimizationResult second_stage_vqe(const EffectiveProblem& problem, SecondStageAnsatz kind,
                                    const OptimizerConfig& config, int qubit_cap) {
  const VqeProblem vqe = second_stage_problem(problem, kind, config.depth, qubit_cap);
  OptimizationResult r = run_vqe(vqe, config);
  r.best_energy -= problem.shift;
  for (double& e : r.energy_trace) e -= problem.shift;
  return r;
}

}  // namespace deepvqe
