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

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "deepvqe/vqe.hpp"
#include "oracle_helpers.hpp"

namespace deepvqe {
namespace {

const std::vector<Edge> kBlockEdges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};

Observable block4() {
  Observable h(4);
  for (const auto& [a, b] : kBlockEdges) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      PauliString s(4);
      s.set(a, p);
      s.set(b, p);
      h.add(1.0, s);
    }
  }
  return h;
}

TEST(Ansatz, HardwareEfficientParameterCount) {
  const auto a = Ansatz::hardware_efficient(4, 2, kBlockEdges);
  EXPECT_EQ(a.n_params(), 34);
  EXPECT_EQ(Ansatz::hardware_efficient(3, 1, {}).n_params(), 9);
  EXPECT_THROW(Ansatz::hardware_efficient(4, 0, kBlockEdges), InputError);
  EXPECT_THROW(Ansatz::hardware_efficient(4, 1, {{0, 4}}), InputError);
  EXPECT_THROW(Ansatz::hardware_efficient(4, 1, {{1, 1}}), InputError);
}

TEST(Ansatz, GateOrderPerCycle) {
  const auto a = Ansatz::hardware_efficient(3, 2, {{2, 0}, {0, 1}});
  ASSERT_EQ(a.slots().size(), 10u);
  for (int cycle = 0; cycle < 2; ++cycle) {
    const auto* s = &a.slots()[static_cast<std::size_t>(cycle * 5)];
    EXPECT_EQ(s[0].targets[0], 0);
    EXPECT_EQ(s[1].targets[0], 1);
    EXPECT_EQ(s[2].targets[0], 2);
    EXPECT_EQ(s[3].kind, Ansatz::SlotKind::kHeisenbergPair);
    EXPECT_EQ(s[3].targets, (std::vector<int>{2, 0}));
    EXPECT_EQ(s[4].targets, (std::vector<int>{0, 1}));
  }
}

TEST(Ansatz, ZeroParametersPrepareInitialState) {
  const auto a = Ansatz::hardware_efficient(5, 3, {{0, 1}, {1, 2}, {3, 4}});
  const auto s = a.prepare(Params::Zero(a.n_params()), Statevector(5));
  EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-14);
}

TEST(Cost, Examples) {
  const auto a = Ansatz::hardware_efficient(4, 2, kBlockEdges);
  // Five ZZ terms each give +1 on |0000>.
  EXPECT_NEAR(cost(a, Params::Zero(34), block4(), Statevector(4)), 5.0, 1e-12);
  std::mt19937_64 rng(1);
  const Params p = random_parameters(34, 9, 1.0);
  EXPECT_NEAR(cost(a, p, Observable::identity(4, 2.5), Statevector(4)), 2.5, 1e-12);
  EXPECT_THROW(cost(a, Params::Zero(3), block4(), Statevector(4)), InputError);
}

TEST(Cost, ZeroParametersEqualInitialExpectation) {
  const auto a = Ansatz::hardware_efficient(4, 2, kBlockEdges);
  const auto init = Statevector::basis_state(4, 0b0101);
  EXPECT_NEAR(cost(a, Params::Zero(34), block4(), init), expectation(init, block4()), 1e-13);
}

TEST(GradientFd, Examples) {
  const CostFunction quad = [](const Params& p) { return p[0] * p[0]; };
  Params p(1);
  p << 3.0;
  EXPECT_NEAR(gradient_fd(quad, p, 1e-5)[0], 6.0, 1e-6);
  const CostFunction flat = [](const Params&) { return 4.0; };
  EXPECT_EQ(gradient_fd(flat, Params::Ones(3), 1e-5), Params::Zero(3));
  EXPECT_THROW(gradient_fd(quad, p, 0.0), InputError);
}

// Parameter-shift oracle: for exp(-i theta G) with eig(G) = c +- r,
// df/dtheta = r (f(theta + pi/4r) - f(theta - pi/4r)). Euler angles have
// r = 1/2, the exchange generator (eigenvalues 1, -3) has r = 2.
Params parameter_shift_gradient(const Ansatz& a, const CostFunction& f, const Params& p) {
  Params g(p.size());
  for (const auto& slot : a.slots()) {
    const int count = slot.kind == Ansatz::SlotKind::kSingleQubit ? 3 : 1;
    const double r = slot.kind == Ansatz::SlotKind::kSingleQubit ? 0.5 : 2.0;
    for (int j = slot.param_offset; j < slot.param_offset + count; ++j) {
      Params plus = p, minus = p;
      plus[j] += std::numbers::pi / (4 * r);
      minus[j] -= std::numbers::pi / (4 * r);
      g[j] = r * (f(plus) - f(minus));
    }
  }
  return g;
}

TEST(GradientFd, AgreesWithParameterShiftOnRandomFourQubitInstances) {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 4; ++rep) {
    const auto h = matrix_to_observable(testing::random_hermitian(16, rng));
    const auto a = Ansatz::hardware_efficient(4, 2, kBlockEdges);
    const CostFunction f = [&](const Params& p) { return cost(a, p, h, Statevector(4)); };
    const Params p = random_parameters(a.n_params(), 100 + static_cast<std::uint64_t>(rep), 2.0);
    const Params fd = gradient_fd(f, p, 1e-5);
    const Params ps = parameter_shift_gradient(a, f, p);
    EXPECT_LT((fd - ps).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(AdjointGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(8);
  const auto a = Ansatz::hardware_efficient(4, 2, kBlockEdges);
  VqeProblem hea(a, EnergyOperator(block4()), Statevector(4));
  const Params p = random_parameters(a.n_params(), 3, 1.5);
  const Params fd = hea.gradient(p, GradientMethod::kFiniteDifference, 1e-5);
  EXPECT_LT((hea.adjoint_gradient(p) - fd).cwiseAbs().maxCoeff(), 1e-7);

  Ansatz gen(3);
  const int g0 = gen.add_generator({0, 1}, testing::random_hermitian(4, rng));
  const int g1 = gen.add_generator({2, 0}, testing::random_hermitian(4, rng));
  for (int d = 0; d < 3; ++d) {
    gen.add_generator_slot(g0);
    gen.add_generator_slot(g1);
    gen.add_single_qubit(1);
  }
  BlockOperator h(3);
  h.add({1, 2}, testing::random_hermitian(4, rng));
  h.add({0}, testing::random_hermitian(2, rng));
  VqeProblem dense(gen, EnergyOperator(h), Statevector(3));
  const Params q = random_parameters(gen.n_params(), 4, 1.0);
  EXPECT_LT((dense.adjoint_gradient(q) - dense.gradient(q, GradientMethod::kFiniteDifference, 1e-5))
                .cwiseAbs()
                .maxCoeff(),
            1e-7);
}

TEST(MinimizeBfgs, Quadratic) {
  const CostFunction f = [](const Params& p) { return (p[0] - 2.0) * (p[0] - 2.0); };
  OptimizerConfig cfg;
  const auto r = minimize_bfgs(f, Params::Zero(1), cfg);
  EXPECT_NEAR(r.best_params[0], 2.0, 1e-4);
  EXPECT_NEAR(r.best_energy, 0.0, 1e-8);
  EXPECT_TRUE(r.converged);
}

TEST(MinimizeBfgs, NonFiniteCostAborts) {
  const CostFunction f = [](const Params& p) { return p[0] > 0.5 ? std::nan("") : -p[0]; };
  EXPECT_THROW(minimize_bfgs(f, Params::Zero(1), OptimizerConfig{}), OptimizerError);
  Params bad(1);
  bad << std::numeric_limits<double>::infinity();
  EXPECT_THROW(minimize_bfgs([](const Params&) { return 0.0; }, bad, OptimizerConfig{}), InputError);
}

TEST(MinimizeBfgs, EnergiesNeverIncrease) {
  const auto a = Ansatz::hardware_efficient(4, 1, kBlockEdges);
  VqeProblem problem(a, EnergyOperator(block4()), Statevector(4));
  OptimizerConfig cfg;
  cfg.max_iter = 200;
  const CostFunction f = [&](const Params& p) { return problem.cost(p); };
  const Params start = random_parameters(a.n_params(), 5, 0.1);
  const auto r = minimize_bfgs(f, start, cfg);
  ASSERT_FALSE(r.energy_trace.empty());
  EXPECT_DOUBLE_EQ(r.energy_trace.front(), f(start));
  for (std::size_t k = 1; k < r.energy_trace.size(); ++k) {
    EXPECT_LE(r.energy_trace[k], r.energy_trace[k - 1]);
  }
  EXPECT_LE(r.best_energy, f(start));
  EXPECT_NEAR(r.best_energy, f(r.best_params), 1e-9);
}

TEST(RunVqe, BlockGroundStateDepthTwo) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = Ansatz::hardware_efficient(4, 2, kBlockEdges);
  VqeProblem problem(a, EnergyOperator(block4()), Statevector(4));
  OptimizerConfig cfg;
  cfg.restarts = 10;
  const auto r = run_vqe(problem, cfg);
  EXPECT_NEAR(r.best_energy, -7.0, 1e-4);
  EXPECT_NEAR(r.best_energy, problem.cost(r.best_params), 1e-9);
  EXPECT_GE(r.best_energy, -7.0 - 1e-9);  // variational bound
  EXPECT_EQ(r.restarts_used, 10);
  EXPECT_GE(r.seed, cfg.seed_base);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 60.0);
}

TEST(RunVqe, DeterministicAcrossThreadCounts) {
  const auto a = Ansatz::hardware_efficient(4, 1, kBlockEdges);
  VqeProblem problem(a, EnergyOperator(block4()), Statevector(4));
  OptimizerConfig cfg;
  cfg.restarts = 3;
  cfg.max_iter = 50;
  cfg.gradient = GradientMethod::kAdjoint;
  const auto serial = run_vqe(problem, cfg);
  cfg.threads = 3;
  const auto parallel = run_vqe(problem, cfg);
  EXPECT_EQ(serial.seed, parallel.seed);
  EXPECT_EQ(serial.best_energy, parallel.best_energy);
  EXPECT_EQ(serial.best_params, parallel.best_params);
}

TEST(RunVqe, ZeroRestartsReturnsZeroParameterCost) {
  const auto a = Ansatz::hardware_efficient(4, 1, kBlockEdges);
  VqeProblem problem(a, EnergyOperator(block4()), Statevector(4));
  OptimizerConfig cfg;
  cfg.restarts = 0;
  const auto r = run_vqe(problem, cfg);
  EXPECT_DOUBLE_EQ(r.best_energy, 5.0);
  EXPECT_EQ(r.best_params, Params::Zero(a.n_params()));
}

TEST(Fidelity, Examples) {
  const auto e0 = Statevector::basis_state(2, 0);
  VectorXc v0 = VectorXc::Zero(4), v1 = VectorXc::Zero(4);
  v0[0] = 1.0;
  v1[3] = 1.0;
  EXPECT_NEAR(fidelity(e0, {v0, v1}), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(e0, {v1}), 0.0, 1e-15);
  std::vector<cplx> plus = {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)};
  EXPECT_NEAR(fidelity(Statevector::from_amplitudes(plus), {v0}), 0.5, 1e-14);
  EXPECT_THROW(fidelity(e0, {v0, v0}), InputError);
}

}  // namespace
}  // namespace deepvqe
