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

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "deepvqe/common.hpp"
#include "deepvqe/pauli.hpp"
#include "deepvqe/simulator.hpp"

namespace deepvqe {

using Edge = std::pair<int, int>;
using Params = Eigen::VectorXd;

/// Parameterized circuit over a flat real parameter vector. Every gate kind
/// is the identity at zero parameters.
class Ansatz {
 public:
  enum class SlotKind { kSingleQubit, kHeisenbergPair, kGenerator };

  struct Slot {
    SlotKind kind;
    std::vector<int> targets;
    int param_offset;
    int generator = -1;  // index into generators() for kGenerator
  };

  /// exp(-i theta A) with A Hermitian, eigendecomposed once.
  struct Generator {
    std::vector<int> targets;
    MatrixXc matrix;
    Eigen::VectorXd eigenvalues;
    MatrixXc eigenvectors;
  };

  Ansatz() = default;
  explicit Ansatz(int n_qubits);

  /// Per cycle: Euler rotations on every qubit in ascending order, then one
  /// Heisenberg exchange gate per edge in the given order.
  static Ansatz hardware_efficient(int n_qubits, int depth, const std::vector<Edge>& edges);

  void add_single_qubit(int target);
  void add_heisenberg_pair(int first, int second);
  /// Registers a generator that can be reused by several slots.
  int add_generator(std::vector<int> targets, const MatrixXc& hermitian);
  void add_generator_slot(int generator);
  void set_depth(int depth) { depth_ = depth; }

  int n_qubits() const noexcept { return n_; }
  int n_params() const noexcept { return n_params_; }
  int depth() const noexcept { return depth_; }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }

  std::vector<Gate> bind(const Params& params) const;
  Statevector prepare(const Params& params, const Statevector& initial) const;

 private:
  int n_ = 0;
  int depth_ = 0;
  int n_params_ = 0;
  std::vector<Slot> slots_;
  std::vector<Generator> generators_;
};

/// Hermitian energy operator in either Pauli-sum or dense-block form.
class EnergyOperator {
 public:
  explicit EnergyOperator(const Observable& o);
  explicit EnergyOperator(BlockOperator b);

  int n_qubits() const;
  double expectation(const Statevector& state) const;
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::variant<ObservableKernel, BlockOperator> impl_;
};

using CostFunction = std::function<double(const Params&)>;
using GradientFunction = std::function<Params(const Params&)>;

double cost(const Ansatz& ansatz, const Params& params, const Observable& observable,
            const Statevector& initial);

/// Central differences, component j = (f(p + h e_j) - f(p - h e_j)) / 2h.
Params gradient_fd(const CostFunction& f, const Params& params, double step);

enum class GradientMethod { kFiniteDifference, kAdjoint };

std::string to_string(GradientMethod m);
GradientMethod gradient_method_from_string(const std::string& s);

struct OptimizerConfig {
  int depth = 2;
  int restarts = 10;
  std::uint64_t seed_base = 1;
  double tol_grad = 1e-6;
  int max_iter = 2000;
  double fd_step = 1e-5;
  double init_range = 0.1;
  GradientMethod gradient = GradientMethod::kFiniteDifference;
  int threads = 1;
};

struct OptimizationResult {
  Params best_params;
  double best_energy = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  /// Energy after each accepted step, starting with the initial cost.
  std::vector<double> energy_trace;
};

/// BFGS with backtracking Armijo line search. Throws OptimizerError when the
/// cost becomes non-finite.
OptimizationResult minimize_bfgs(const CostFunction& f, const GradientFunction& grad,
                                 const Params& initial, const OptimizerConfig& config);
OptimizationResult minimize_bfgs(const CostFunction& f, const Params& initial,
                                 const OptimizerConfig& config);

/// Circuit, energy operator and reference state bundled into one cost.
class VqeProblem {
 public:
  VqeProblem(Ansatz ansatz, EnergyOperator hamiltonian, Statevector initial);

  const Ansatz& ansatz() const noexcept { return ansatz_; }
  const Statevector& initial_state() const noexcept { return initial_; }

  double cost(const Params& params) const;
  Statevector state(const Params& params) const;
  Params gradient(const Params& params, GradientMethod method, double fd_step) const;
  /// Exact gradient by reverse-mode sweep through the circuit.
  Params adjoint_gradient(const Params& params) const;

 private:
  Ansatz ansatz_;
  EnergyOperator hamiltonian_;
  Statevector initial_;
};

/// Uniform draw in [-range, range] per parameter, reproducible per seed.
Params random_parameters(int n_params, std::uint64_t seed, double range);

/// Runs `config.restarts` seeded BFGS starts (seed_base + r) and keeps the
/// lowest energy, lowest seed on ties. With zero restarts the zero-parameter
/// point is returned unoptimized.
OptimizationResult run_vqe(const VqeProblem& problem, const OptimizerConfig& config);

/// Squared norm of the projection of `state` onto span(subspace); the
/// subspace vectors must be orthonormal.
double fidelity(const Statevector& state, const std::vector<VectorXc>& subspace);

}  // namespace deepvqe
