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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deepvqe/effective.hpp"
#include "deepvqe/pauli.hpp"
#include "deepvqe/simulator.hpp"

namespace deepvqe {

inline constexpr double kDegeneracyGap = 1e-8;

struct SpectrumResult {
  double ground_energy = 0.0;
  int degeneracy = 0;
  std::vector<VectorXc> ground_subspace;
  std::string method;
};

/// y = A x for a Hermitian A; y is overwritten.
using MatVec = std::function<void(std::span<const cplx> x, std::span<cplx> y)>;

/// Full diagonalization of a Hermitian matrix (real solver when the matrix
/// is real).
SpectrumResult exact_ground_dense(const MatrixXc& h, double gap_tol = kDegeneracyGap);
SpectrumResult exact_ground_dense(const Observable& o, int qubit_cap = kDenseQubitCap);

struct LanczosConfig {
  int max_krylov = 300;
  /// Convergence on the Ritz residual norm ||H v - E v||.
  double residual_tol = 1e-6;
  int max_restarts = 50;
  double gap_tol = kDegeneracyGap;
  bool detect_degeneracy = true;
  int max_degeneracy = 8;
  std::uint64_t seed = 7;
  /// Krylov vectors kept in memory; beyond this the solver switches to a
  /// two-pass scheme that stores only three vectors.
  std::size_t memory_budget_bytes = std::size_t{1} << 31;
  int qubit_cap = 24;
};

/// Lowest eigenpair(s) by Lanczos with full reorthogonalization and explicit
/// restarts. Degenerate partners are found by deflated reruns. Throws
/// ConvergenceError (with the residual) when restarts are exhausted.
SpectrumResult lanczos_ground(const MatVec& h, std::size_t dim, const LanczosConfig& config = {});
SpectrumResult lanczos_ground(const Observable& o, const LanczosConfig& config = {});

struct IteConfig {
  double dtau = 0.02;
  double tol = 1e-9;
  int max_steps = 1000000;
  double min_dtau = 1e-8;
  /// Known ground energy; ending more than 10 tol above it, after allowing
  /// for the remaining geometric decay, is flagged.
  std::optional<double> reference_energy;
};

struct IteResult {
  double energy = 0.0;
  Statevector state;
  /// Energy of the initial state followed by every accepted step.
  std::vector<double> energies;
  int steps = 0;
  bool converged = false;
  /// Stopped more than 10 tol above the reference (likely orthogonal start).
  bool flagged = false;
};

/// state <- normalize((I - dtau H) state) until |dE| < tol; a step that
/// raises the energy is rejected and dtau halved.
IteResult imaginary_time_evolution(const Observable& o, const Statevector& initial, const IteConfig& config = {});

/// Random normalized state, reproducible per seed.
Statevector random_statevector(int n_qubits, std::uint64_t seed);

struct EffectiveOracleConfig {
  /// Dense diagonalization up to this dimension, Lanczos beyond.
  std::size_t dense_cap = 2048;
  std::size_t max_dim = std::size_t{1} << 24;
  LanczosConfig lanczos;
};

/// y = H^eff x on the unpadded product space; site s has stride prod_{t<s} d_t.
void apply_effective(const EffectiveProblem& problem, std::span<const cplx> x, std::span<cplx> y);
std::size_t effective_dimension(const EffectiveProblem& problem);
MatrixXc effective_hamiltonian_dense(const EffectiveProblem& problem, std::size_t cap = 4096);

/// Minimum eigenvalue of the unpadded, unshifted H^eff.
double exact_ground_effective(const EffectiveProblem& problem, const EffectiveOracleConfig& config = {});

}  // namespace deepvqe
