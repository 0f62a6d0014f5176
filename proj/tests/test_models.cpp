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

#include <gtest/gtest.h>

#include <map>

#include "deepvqe/models.hpp"
#include "deepvqe/oracle.hpp"
#include "oracle_helpers.hpp"

namespace deepvqe {
namespace {

bool real_unit_coefficients(const Observable& o) {
  for (const auto& t : o.terms()) {
    if (std::abs(t.coeff - cplx(1.0)) > 1e-15) return false;
  }
  return true;
}

TEST(Block4, TermsEnergyAndBoundary) {
  const SubsystemSpec b = heisenberg_block4();
  EXPECT_EQ(b.n_qubits, 4);
  EXPECT_EQ(b.hamiltonian.canonicalized().size(), 15u);
  EXPECT_TRUE(b.hamiltonian.is_hermitian());
  EXPECT_TRUE(real_unit_coefficients(b.hamiltonian));
  EXPECT_EQ(b.boundary_qubits, (std::vector<int>{0, 2}));
  EXPECT_NEAR(exact_ground_dense(b.hamiltonian).ground_energy, -7.0, 1e-10);
  // Against the explicit Kronecker construction.
  const MatrixXc dense = testing::dense_heisenberg(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  EXPECT_LT((observable_to_matrix(b.hamiltonian) - dense).norm(), 1e-12);
}

TEST(Kagome12, EdgeSetAndEnergy) {
  const auto edges = kagome12_edges();
  EXPECT_EQ(edges.size(), 24u);
  std::map<int, int> degree;
  for (auto [a, b] : edges) {
    EXPECT_NE(a, b);
    ++degree[a];
    ++degree[b];
  }
  ASSERT_EQ(degree.size(), 12u);
  for (auto [q, d] : degree) EXPECT_GE(d, 2) << "qubit " << q;

  const SubsystemSpec k = kagome12();
  EXPECT_EQ(k.boundary_qubits, (std::vector<int>{0, 6}));
  EXPECT_TRUE(k.hamiltonian.is_hermitian());
  EXPECT_TRUE(real_unit_coefficients(k.hamiltonian));
  EXPECT_NEAR(lanczos_ground(k.hamiltonian).ground_energy, -21.78, 0.01);
}

TEST(EdgeList, CommentsAndBlankLines) {
  const auto e = parse_edge_list("# header\n0 1\n\n 2 3  # trailing\n");
  EXPECT_EQ(e, (std::vector<Edge>{{0, 1}, {2, 3}}));
  EXPECT_THROW(parse_edge_list("4\n"), InputError);
}

TEST(Chain, SingleBlockHasNoCouplings) {
  const auto p = chain(heisenberg_block4(), 1);
  EXPECT_TRUE(p.couplings.empty());
  const Observable full = materialize_full(p);
  EXPECT_EQ(full.canonicalized().to_text(), heisenberg_block4().hamiltonian.canonicalized().to_text());
  EXPECT_NEAR(exact_ground_dense(full).ground_energy, -7.0, 1e-10);
}

TEST(Chain, TwoBlocksMaterialized) {
  const auto p = chain(heisenberg_block4(), 2);
  EXPECT_EQ(p.n_qubits(), 8);
  ASSERT_EQ(p.couplings.size(), 1u);
  EXPECT_EQ(p.couplings[0].site_i, 0);
  EXPECT_EQ(p.couplings[0].site_j, 1);
  const Observable full = materialize_full(p);
  EXPECT_EQ(full.n_qubits(), 8);
  EXPECT_EQ(full.canonicalized().size(), 33u);
  // All ZZ terms are +1 on |0...0>: 5 per block plus the coupling.
  EXPECT_NEAR(expectation(Statevector(8), full), 11.0, 1e-12);
  EXPECT_NEAR(exact_ground_dense(full).ground_energy, -14.46, 0.01);

  // Coupling is X0 X6 + Y0 Y6 + Z0 Z6 in the global register (block 1 qubit 2).
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < 2; ++b) {
    for (auto [x, y] : block4_edges()) edges.emplace_back(4 * b + x, 4 * b + y);
  }
  edges.emplace_back(0, 6);
  EXPECT_LT((observable_to_matrix(full) - testing::dense_heisenberg(8, edges)).norm(), 1e-12);
}

TEST(Chain, SpectrumInvariantUnderBlockRelabeling) {
  const Observable full = materialize_full(chain(heisenberg_block4(), 2));
  // Swap the two blocks: qubit q <-> q +- 4.
  const std::vector<int> swap{4, 5, 6, 7, 0, 1, 2, 3};
  const Observable swapped = full.remapped(8, swap);
  Eigen::SelfAdjointEigenSolver<MatrixXc> a(observable_to_matrix(full), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<MatrixXc> b(observable_to_matrix(swapped), Eigen::EigenvaluesOnly);
  EXPECT_LT((a.eigenvalues() - b.eigenvalues()).norm(), 1e-10);
  EXPECT_NE(full.canonicalized().to_text(), swapped.canonicalized().to_text());
}

TEST(Chain, PeriodicAddsClosingCoupling) {
  const auto p = chain(heisenberg_block4(), 3, default_coupling(heisenberg_block4()), true);
  ASSERT_EQ(p.couplings.size(), 3u);
  EXPECT_EQ(p.couplings.back().site_i, 2);
  EXPECT_EQ(p.couplings.back().site_j, 0);
}

TEST(Chain, KagomeFourBlocksIsNeverMaterialized) {
  const auto p = chain(kagome12(), 4);
  EXPECT_EQ(p.n_qubits(), 48);
  EXPECT_THROW(materialize_full(p), ResourceError);
}

TEST(Chain, RejectsInvalidInput) {
  EXPECT_THROW(chain(heisenberg_block4(), 0), InputError);
  EXPECT_THROW(heisenberg_coupling(4, 4, 4, 2), InputError);
  std::vector<InteractionTerm> wrong{{1.0, Observable::identity(3), Observable::identity(4)}};
  EXPECT_THROW(chain(heisenberg_block4(), 2, wrong), InputError);
}

TEST(ModelFile, ParsesCustomModel) {
  const ModelDefinition m = model_from_json_text(R"({
    "name": "dimer",
    "n_qubits": 2,
    "terms": [[1.0, "XX"], [1.0, "YY"], [1.0, "ZZ"]],
    "boundary": [1],
    "coupling": [[0.5, "ZI", "IZ"]]
  })");
  EXPECT_EQ(m.name, "dimer");
  EXPECT_EQ(m.block.n_qubits, 2);
  EXPECT_NEAR(exact_ground_dense(m.block.hamiltonian).ground_energy, -3.0, 1e-12);
  EXPECT_EQ(m.block.excitations.size(), 4u);
  ASSERT_EQ(m.coupling.size(), 1u);
  EXPECT_DOUBLE_EQ(m.coupling[0].coeff, 0.5);
  EXPECT_EQ(m.ansatz_edges, (std::vector<Edge>{{0, 1}}));
}

TEST(ModelFile, DefaultsCouplingToBoundaryHeisenberg) {
  const ModelDefinition m =
      model_from_json_text(R"({"n_qubits": 2, "terms": [[1.0, "ZZ"]], "boundary": [0, 1]})");
  EXPECT_EQ(m.name, "custom");
  EXPECT_EQ(m.coupling.size(), 3u);
}

TEST(ModelFile, RejectsMalformedInput) {
  EXPECT_THROW(model_from_json_text("{"), InputError);
  EXPECT_THROW(model_from_json_text(R"({"terms": [], "boundary": [0]})"), InputError);
  EXPECT_THROW(model_from_json_text(R"({"n_qubits": 2, "terms": [[1.0, "ZZZ"]], "boundary": [0]})"),
               InputError);
  EXPECT_THROW(model_from_json_text(R"({"n_qubits": 2, "terms": [[1.0, "ZZ"]], "boundary": [5]})"),
               InputError);
  EXPECT_THROW(load_model("/nonexistent/model.json"), InputError);
}

TEST(ModelFile, BuiltinNames) {
  EXPECT_EQ(load_model("block4").block.n_qubits, 4);
  EXPECT_EQ(load_model("kagome12").ansatz_edges.size(), 24u);
}

}  // namespace
}  // namespace deepvqe
