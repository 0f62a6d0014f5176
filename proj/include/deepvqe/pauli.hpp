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

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deepvqe/common.hpp"

namespace deepvqe {

/// Single-qubit Pauli letter. The value packs (x bit) | (z bit << 1), so
/// Y = X|Z and the letter's action is i^{x&z} X^x Z^z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

inline constexpr int kMaxPauliQubits = 64;
inline constexpr double kDropTolerance = 1e-12;
inline constexpr int kDenseQubitCap = 14;

/// A phase-free tensor product of Pauli letters. Qubit q is character q of
/// the letter string and bit q of a computational-basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);

  static PauliString parse(std::string_view letters);
  static PauliString single(int n_qubits, int qubit, Pauli p);
  static PauliString from_masks(int n_qubits, std::uint64_t x, std::uint64_t z);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  Pauli at(int qubit) const;
  void set(int qubit, Pauli p);

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  int weight() const noexcept;
  /// Number of Y letters; the string's matrix carries the factor i^{y_count}.
  int y_count() const noexcept;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.z_ <=> b.z_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliProduct {
  cplx phase;
  PauliString product;
};

/// a·b = phase·product, phase in {1, i, -1, -i}.
PauliProduct multiply(const PauliString& a, const PauliString& b);

struct PauliTerm {
  cplx coeff;
  PauliString string;
};

/// Weighted sum of Pauli strings on a fixed register.
class Observable {
 public:
  Observable() = default;
  explicit Observable(int n_qubits);

  static Observable identity(int n_qubits, cplx coeff = 1.0);
  /// One term per line: `re im LETTERS`. Blank lines and `#` comments skipped.
  static Observable parse(std::string_view text);

  Observable& add(cplx coeff, const PauliString& string);
  Observable& add(cplx coeff, std::string_view letters);

  int n_qubits() const noexcept { return n_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Merges equal strings, sorts them and drops coefficients below drop_tol.
  void canonicalize(double drop_tol = kDropTolerance);
  Observable canonicalized(double drop_tol = kDropTolerance) const;

  bool is_hermitian(double tol = 1e-10) const;
  Observable adjoint() const;

  /// Coefficient of the identity string after canonicalization.
  cplx identity_coefficient() const;

  /// Re-index onto a register of new_n qubits; qubit q moves to mapping[q].
  Observable remapped(int new_n, std::span<const int> mapping) const;
  /// Place this observable on qubits [offset, offset + n) of a new_n register.
  Observable shifted(int new_n, int offset) const;

  std::string to_text() const;

  Observable& operator+=(const Observable& other);
  Observable& operator*=(cplx scale);
  friend Observable operator+(Observable a, const Observable& b) { return a += b; }
  friend Observable operator*(Observable a, cplx s) { return a *= s; }
  friend Observable operator*(cplx s, Observable a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
};

Observable observable_product(const Observable& a, const Observable& b);

/// a ⊗ b with a on the low qubits and b on the high qubits.
Observable tensor(const Observable& a, const Observable& b);

/// Pauli decomposition c_P = Tr(P† M) / 2^q over all 4^q strings.
Observable matrix_to_observable(const MatrixXc& m, double drop_tol = kDropTolerance);

MatrixXc observable_to_matrix(const Observable& o, int dense_cap = kDenseQubitCap);
MatrixXc pauli_matrix(const PauliString& s);

}  // namespace deepvqe
