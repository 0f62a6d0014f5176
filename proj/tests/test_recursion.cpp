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

#include "deepvqe/models.hpp"
#include "deepvqe/oracle.hpp"
#include "deepvqe/pipeline.hpp"
#include "deepvqe/recursion.hpp"

namespace deepvqe {
namespace {

const Statevector& block_ground() {
  static const Statevector g = [] {
    const auto r = exact_ground_dense(heisenberg_block4().hamiltonian);
    const VectorXc& v = r.ground_subspace[0];
    return Statevector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()), 1e-9);
  }();
  return g;
}

OptimizerConfig small_optimizer() {
  OptimizerConfig c;
  c.depth = 4;
  c.restarts = 2;
  c.gradient = GradientMethod::kAdjoint;
  return c;
}

TEST(Recursion, OneLevelMatchesSecondStage) {
  const auto problem = chain(heisenberg_block4(), 2);
  RecursionConfig rc;
  rc.group_sizes = {2};
  rc.optimizer = small_optimizer();
  const RecursionResult r = recurse(chain_level(problem, block_ground()), rc);

  const EffectiveProblem p = build_chain_effective(problem, block_ground(), {});
  const OptimizationResult direct = second_stage_vqe(p, SecondStageAnsatz::kEffectiveGenerated, rc.optimizer);
  EXPECT_NEAR(r.energy, direct.best_energy, 1e-8);
  EXPECT_NEAR(r.local_energy, -14.0, 1e-8);
  ASSERT_EQ(r.levels.size(), 1u);
  EXPECT_EQ(r.levels[0].site_dims, (std::vector<int>{7, 7}));
  EXPECT_EQ(r.levels[0].register_qubits, 6);
}

TEST(Recursion, IdentityOnlyBasesGiveProductEnergy) {
  auto problem = chain(heisenberg_block4(), 3);
  HierarchyLevel level = chain_level(problem, block_ground());
  for (auto& s : level.sites) s.spec.excitations = {Observable::identity(4)};
  RecursionConfig rc;
  rc.group_sizes = {3};
  rc.optimizer = small_optimizer();
  const RecursionResult r = recurse(level, rc);
  EXPECT_EQ(r.levels[0].site_dims, (std::vector<int>{1, 1, 1}));
  EXPECT_NEAR(r.energy, -21.0, 1e-8);
  EXPECT_NEAR(r.local_energy, -21.0, 1e-8);
}

TEST(Recursion, TwoLevelsOnFourBlocksAreBracketed) {
  const auto problem = chain(heisenberg_block4(), 4);
  RecursionConfig rc;
  rc.group_sizes = {2, 2};
  rc.optimizer = small_optimizer();
  const RecursionResult r = recurse(chain_level(problem, block_ground()), rc);
  ASSERT_EQ(r.levels.size(), 2u);
  EXPECT_EQ(r.levels[0].n_groups, 2);
  EXPECT_EQ(r.levels[1].n_groups, 1);
  // Lifted boundary factors are X, Y, Z on one site of each group.
  EXPECT_EQ(r.levels[1].site_dims, (std::vector<int>{4, 4}));

  const double exact = lanczos_ground(materialize_full(problem)).ground_energy;
  EXPECT_NEAR(exact, -29.39, 0.01);
  EXPECT_LE(r.energy, r.local_energy + 1e-9);
  EXPECT_GE(r.energy, exact - 1e-9);
  // The top-level product baseline is the sum of the two 4x2 group energies.
  EXPECT_NEAR(r.local_energy, r.levels[0].energies[0] + r.levels[0].energies[1], 1e-6);
}

TEST(Recursion, LastLevelMustMergeEverything) {
  const auto problem = chain(heisenberg_block4(), 4);
  RecursionConfig rc;
  rc.group_sizes = {2};
  rc.optimizer = small_optimizer();
  EXPECT_THROW(recurse(chain_level(problem, block_ground()), rc), InputError);
  rc.group_sizes = {};
  EXPECT_THROW(recurse(chain_level(problem, block_ground()), rc), InputError);
}

TEST(Recursion, EmbeddedSiteOperatorActsOnItsRegister) {
  const EffectiveProblem p = build_chain_effective(chain(heisenberg_block4(), 2), block_ground(), {});
  MatrixXc m = MatrixXc::Zero(7, 7);
  m(0, 0) = 1.0;
  const Observable o = embed_site_operator(p, 1, m);
  EXPECT_EQ(o.n_qubits(), 6);
  // |0> on site 1 (qubits 3..5) regardless of site 0.
  Statevector s = Statevector::basis_state(6, 0b000101);
  EXPECT_NEAR(expectation(s, o), 1.0, 1e-12);
  s = Statevector::basis_state(6, 0b001000);
  EXPECT_NEAR(expectation(s, o), 0.0, 1e-12);
}

}  // namespace
}  // namespace deepvqe
