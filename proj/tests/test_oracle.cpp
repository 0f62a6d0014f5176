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

#include <random>

#include "deepvqe/models.hpp"
#include "deepvqe/oracle.hpp"
#include "oracle_helpers.hpp"

namespace deepvqe {
namespace {

Observable random_observable(int n, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff;
  Observable o(n);
  for (int t = 0; t < terms; ++t) {
    std::string s;
    for (int q = 0; q < n; ++q) s += "IXZY"[letter(rng)];
    o.add(coeff(rng), s);
  }
  o.canonicalize();
  return o;
}

Observable chain_observable(int n_blocks) {
  return materialize_full(chain(heisenberg_block4(), n_blocks));
}

double residual(const Observable& o, const VectorXc& v, double e) {
  const MatrixXc h = observable_to_matrix(o);
  return (h * v - e * v).norm();
}

TEST(ExactDense, Examples) {
  EXPECT_NEAR(exact_ground_dense(heisenberg_block4().hamiltonian).ground_energy, -7.0, 1e-10);
  const auto z = exact_ground_dense(Observable(1).add(1.0, "Z"));
  EXPECT_NEAR(z.ground_energy, -1.0, 1e-14);
  EXPECT_EQ(z.degeneracy, 1);
  EXPECT_EQ(z.method, "dense");
}

TEST(ExactDense, DegeneracyAndEigenvectors) {
  // Z0 + Z1 on three qubits: ground -2 with the third qubit free.
  Observable o(3);
  o.add(1.0, "ZII").add(1.0, "IZI");
  const auto r = exact_ground_dense(o);
  EXPECT_NEAR(r.ground_energy, -2.0, 1e-12);
  EXPECT_EQ(r.degeneracy, 2);
  for (const auto& v : r.ground_subspace) EXPECT_LT(residual(o, v, r.ground_energy), 1e-8);
  EXPECT_NEAR(std::abs(r.ground_subspace[0].dot(r.ground_subspace[1])), 0.0, 1e-10);
}

TEST(ExactDense, OverCapThrows) {
  EXPECT_THROW(exact_ground_dense(Observable::identity(15)), ResourceError);
  EXPECT_THROW(exact_ground_dense(Observable::identity(4), 3), ResourceError);
}

TEST(Lanczos, AgreesWithDenseOnRandomInstances) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 3 + trial;
    const Observable o = random_observable(n, 4 * n, rng);
    const auto d = exact_ground_dense(o);
    const auto l = lanczos_ground(o);
    EXPECT_NEAR(l.ground_energy, d.ground_energy, 1e-8) << "n = " << n;
    EXPECT_EQ(l.degeneracy, d.degeneracy) << "n = " << n;
    for (const auto& v : l.ground_subspace) EXPECT_LT(residual(o, v, l.ground_energy), 1e-6);
  }
}

// The 12-qubit dense diagonalization is the slowest step here; do it once.
double chain3_dense_energy() {
  static const double e = exact_ground_dense(chain_observable(3)).ground_energy;
  return e;
}

TEST(Lanczos, AgreesWithDenseOnChains) {
  for (int n = 1; n <= 2; ++n) {
    const Observable o = chain_observable(n);
    EXPECT_NEAR(lanczos_ground(o).ground_energy, exact_ground_dense(o).ground_energy, 1e-8);
  }
  EXPECT_NEAR(lanczos_ground(chain_observable(3)).ground_energy, chain3_dense_energy(), 1e-8);
}

TEST(Lanczos, FindsDegenerateSubspace) {
  Observable o(3);
  o.add(1.0, "ZII").add(1.0, "IZI");
  const auto r = lanczos_ground(o);
  EXPECT_EQ(r.degeneracy, 2);
  EXPECT_NEAR(r.ground_energy, -2.0, 1e-10);
}

TEST(Lanczos, ThreeVectorModeMatchesStoredMode) {
  const Observable o = chain_observable(3);
  LanczosConfig small;
  small.memory_budget_bytes = 16 * (std::size_t{1} << 12) * 8;  // too few vectors to store
  small.detect_degeneracy = false;
  EXPECT_NEAR(lanczos_ground(o, small).ground_energy, chain3_dense_energy(), 1e-8);
}

TEST(Lanczos, NonConvergenceReportsResidual) {
  const Observable o = chain_observable(3);
  LanczosConfig c;
  c.max_krylov = 3;
  c.max_restarts = 0;
  c.detect_degeneracy = false;
  try {
    lanczos_ground(o, c);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), c.residual_tol);
  }
}

TEST(Lanczos, OverCapThrows) {
  LanczosConfig c;
  c.qubit_cap = 4;
  EXPECT_THROW(lanczos_ground(chain_observable(2), c), ResourceError);
}

TEST(Ite, GroundStateIsFixedPoint) {
  const Observable o = chain_observable(2);
  const auto d = exact_ground_dense(o);
  const Statevector g = Statevector::from_amplitudes(testing::to_std(d.ground_subspace[0]), 1e-9);
  const IteResult r = imaginary_time_evolution(o, g);
  for (double e : r.energies) EXPECT_NEAR(e, d.ground_energy, 1e-9);
  EXPECT_TRUE(r.converged);
}

TEST(Ite, MonotoneAndConverges) {
  for (int n : {2, 3}) {
    const Observable o = chain_observable(n);
    IteConfig c;
    c.reference_energy = lanczos_ground(o).ground_energy;
    const IteResult r = imaginary_time_evolution(o, random_statevector(o.n_qubits(), 5), c);
    for (std::size_t i = 1; i < r.energies.size(); ++i) EXPECT_LE(r.energies[i], r.energies[i - 1]);
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(r.flagged);
    EXPECT_NEAR(r.energy, n == 2 ? -14.46 : -21.92, 0.01);
  }
}

TEST(Ite, OrthogonalStartIsFlagged) {
  // |0000> has total S_z = 2 and cannot reach the singlet ground state.
  const Observable o = heisenberg_block4().hamiltonian;
  IteConfig c;
  c.reference_energy = -7.0;
  const IteResult r = imaginary_time_evolution(o, Statevector(4), c);
  EXPECT_TRUE(r.flagged);
}

TEST(EffectiveOracle, ApplyMatchesDenseKron) {
  std::mt19937_64 rng(9);
  EffectiveProblem p;
  const std::vector<int> dims{3, 2, 4};
  std::vector<MatrixXc> sites;
  for (int d : dims) sites.push_back(testing::random_hermitian(d, rng));
  PairTensor t;
  t.site_i = 2;
  t.site_j = 0;
  t.k_i = 4;
  t.k_j = 3;
  t.factors.push_back({0.7, testing::random_hermitian(4, rng), testing::random_hermitian(3, rng)});
  p = assemble_effective(sites, {t});
  // Dense oracle: site 0 is the fast index.
  auto lift = [&](int site, const MatrixXc& m) {
    MatrixXc out = MatrixXc::Identity(1, 1);
    for (int s = 0; s < 3; ++s) out = testing::kron(s == site ? m : MatrixXc::Identity(dims[s], dims[s]), out);
    return out;
  };
  MatrixXc h = lift(0, sites[0]) + lift(1, sites[1]) + lift(2, sites[2]);
  h += 0.7 * lift(2, t.factors[0].left) * lift(0, t.factors[0].right);
  EXPECT_LT((effective_hamiltonian_dense(p) - h).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  EXPECT_NEAR(exact_ground_effective(p), es.eigenvalues()[0], 1e-10);
  EffectiveOracleConfig lanczos_only;
  lanczos_only.dense_cap = 1;
  EXPECT_NEAR(exact_ground_effective(p, lanczos_only), es.eigenvalues()[0], 1e-8);
}

TEST(EffectiveOracle, OverCapThrows) {
  const EffectiveProblem p = assemble_effective({MatrixXc::Identity(4, 4), MatrixXc::Identity(4, 4)}, {});
  EffectiveOracleConfig c;
  c.max_dim = 10;
  EXPECT_THROW(exact_ground_effective(p, c), ResourceError);
}

}  // namespace
}  // namespace deepvqe
