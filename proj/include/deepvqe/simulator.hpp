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
#include <span>
#include <variant>
#include <vector>

#include "deepvqe/common.hpp"
#include "deepvqe/pauli.hpp"

namespace deepvqe {

inline constexpr int kStatevectorQubitCap = 26;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Rz(alpha)·Ry(beta)·Rz(gamma) on one qubit.
struct SingleQubitGate {
  int target = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// exp(-i theta (XX + YY + ZZ)) on qubits (first, second).
struct HeisenbergPairGate {
  int first = 0;
  int second = 1;
  double theta = 0.0;
};

/// Arbitrary unitary; bit j of the matrix index addresses targets[j].
struct DenseBlockGate {
  std::vector<int> targets;
  MatrixXc unitary;
};

using Gate = std::variant<SingleQubitGate, HeisenbergPairGate, DenseBlockGate>;

MatrixXc single_qubit_matrix(double alpha, double beta, double gamma);
MatrixXc heisenberg_pair_matrix(double theta);

/// Unnormalized amplitudes, e.g. the result of applying an observable.
struct RawVector {
  int n_qubits = 0;
  std::vector<cplx> amplitudes;
};

/// Normalized pure state of n qubits, 2^n contiguous amplitudes.
class Statevector {
 public:
  Statevector() = default;
  /// |0...0>.
  explicit Statevector(int n_qubits, int qubit_cap = kStatevectorQubitCap);

  static Statevector basis_state(int n_qubits, std::uint64_t index);
  /// Takes ownership of amplitudes whose norm must be 1 within tol.
  static Statevector from_amplitudes(std::vector<cplx> amplitudes, double tol = 1e-10);
  /// Rescales a raw vector; throws InputError on a zero vector.
  static Statevector normalized(RawVector raw);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  void apply(const Gate& gate);
  void apply(const SingleQubitGate& g);
  void apply(const HeisenbergPairGate& g);
  void apply(const DenseBlockGate& g);

  RawVector to_raw() const { return {n_, amps_}; }

 private:
  int n_ = 0;
  std::vector<cplx> amps_;
};

Statevector apply_gate(Statevector state, const Gate& gate);

/// In-place application of an arbitrary (not necessarily unitary) matrix on
/// the given targets of a 2^n amplitude buffer.
void apply_matrix_in_place(std::span<cplx> amps, int n_qubits, std::span<const int> targets,
                           const MatrixXc& matrix);

/// Observable compiled for fast statevector kernels: terms grouped by their
/// bit-flip mask so each group costs one pass over the amplitudes.
class ObservableKernel {
 public:
  explicit ObservableKernel(const Observable& o);

  int n_qubits() const noexcept { return n_; }
  bool hermitian() const noexcept { return hermitian_; }
  bool real_matrix() const noexcept { return real_; }

  /// out = O in (out is overwritten).
  void apply(std::span<const cplx> in, std::span<cplx> out) const;
  /// <bra| O |ket>.
  cplx matrix_element(std::span<const cplx> bra, std::span<const cplx> ket) const;

 private:
  struct ZTerm {
    std::uint64_t z;
    cplx coeff;  // includes the i^{y_count} phase
  };
  struct Group {
    std::uint64_t x;
    std::vector<ZTerm> terms;
  };
  cplx diagonal_factor(const Group& g, std::uint64_t index) const;

  int n_ = 0;
  bool hermitian_ = true;
  bool real_ = true;
  std::vector<Group> groups_;
};

/// <state| o |state>; o must be Hermitian.
double expectation(const Statevector& state, const Observable& o);
double expectation(const Statevector& state, const ObservableKernel& kernel);

cplx transition_element(const Statevector& bra, const Observable& o, const Statevector& ket);
cplx transition_element(std::span<const cplx> bra, const ObservableKernel& kernel,
                        std::span<const cplx> ket);

RawVector apply_observable(const Statevector& state, const Observable& o);
RawVector apply_observable(const RawVector& v, const Observable& o);

/// exp(-i theta A) by eigendecomposition; A must be Hermitian within 1e-10.
MatrixXc expm_hermitian(const MatrixXc& a, double theta);

/// exp(-i theta A) from a precomputed eigendecomposition A = V diag(w) V†.
MatrixXc expm_from_eigen(const Eigen::VectorXd& eigenvalues, const MatrixXc& eigenvectors,
                         double theta);

bool is_hermitian(const MatrixXc& m, double tol = 1e-10);
bool is_unitary(const MatrixXc& m, double tol = kUnitaryTolerance);

/// A Hermitian operator given as a sum of dense blocks on target registers.
/// Evaluating it costs one block multiply per term, independent of how many
/// Pauli strings the block would decompose into.
struct DenseTerm {
  std::vector<int> targets;
  MatrixXc matrix;
};

class BlockOperator {
 public:
  BlockOperator() = default;
  explicit BlockOperator(int n_qubits) : n_(n_qubits) {}

  void add(std::vector<int> targets, MatrixXc matrix);
  void add_constant(double c) { constant_ += c; }

  int n_qubits() const noexcept { return n_; }
  const std::vector<DenseTerm>& terms() const noexcept { return terms_; }
  double constant() const noexcept { return constant_; }

  double expectation(const Statevector& state) const;
  void apply(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  int n_ = 0;
  double constant_ = 0.0;
  std::vector<DenseTerm> terms_;
};

}  // namespace deepvqe
