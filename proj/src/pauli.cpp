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

#include "deepvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace deepvqe {

namespace {

// i^k for k mod 4.
cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw InputError(std::string("invalid Pauli letter '") + c + "'");
  }
}

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 0 && n_qubits <= kMaxPauliQubits,
          "PauliString supports 0.." + std::to_string(kMaxPauliQubits) + " qubits");
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString s(static_cast<int>(letters.size()));
  for (std::size_t q = 0; q < letters.size(); ++q) s.set(static_cast<int>(q), pauli_from_char(letters[q]));
  return s;
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  PauliString s(n_qubits);
  s.set(qubit, p);
  return s;
}

PauliString PauliString::from_masks(int n_qubits, std::uint64_t x, std::uint64_t z) {
  PauliString s(n_qubits);
  require(((x | z) & ~low_mask(n_qubits)) == 0, "Pauli masks exceed register size");
  s.x_ = x;
  s.z_ = z;
  return s;
}

Pauli PauliString::at(int qubit) const {
  require(qubit >= 0 && qubit < n_, "Pauli qubit index out of range");
  const auto x = (x_ >> qubit) & 1U;
  const auto z = (z_ >> qubit) & 1U;
  return static_cast<Pauli>(x | (z << 1));
}

void PauliString::set(int qubit, Pauli p) {
  require(qubit >= 0 && qubit < n_, "Pauli qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const auto v = static_cast<unsigned>(p);
  x_ = (v & 1U) ? (x_ | bit) : (x_ & ~bit);
  z_ = (v & 2U) ? (z_ | bit) : (z_ & ~bit);
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliString::str() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) out[static_cast<std::size_t>(q)] = to_char(at(q));
  return out;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
  require(a.n_qubits() == b.n_qubits(), "Pauli product: qubit count mismatch");
  // Write P = i^{y} X^x Z^z. Moving Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}.
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int exponent = a.y_count() + b.y_count() - std::popcount(x & z) +
                       2 * std::popcount(a.z_mask() & b.x_mask());
  return {i_pow(((exponent % 4) + 4) % 4), PauliString::from_masks(a.n_qubits(), x, z)};
}

Observable::Observable(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 0 && n_qubits <= kMaxPauliQubits, "Observable qubit count out of range");
}

Observable Observable::identity(int n_qubits, cplx coeff) {
  Observable o(n_qubits);
  o.add(coeff, PauliString(n_qubits));
  return o;
}

Observable Observable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Observable out;
  bool sized = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    std::string letters;
    if (!(fields >> re)) {
      std::string rest;
      std::istringstream probe(line);
      if (probe >> rest) throw InputError("observable line " + std::to_string(line_no) + ": bad coefficient");
      continue;
    }
    if (!(fields >> im >> letters)) {
      throw InputError("observable line " + std::to_string(line_no) + ": expected `re im LETTERS`");
    }
    auto string = PauliString::parse(letters);
    if (!sized) {
      out = Observable(string.n_qubits());
      sized = true;
    }
    out.add({re, im}, string);
  }
  return out;
}

Observable& Observable::add(cplx coeff, const PauliString& string) {
  require(string.n_qubits() == n_, "Observable term has " + std::to_string(string.n_qubits()) +
                                       " qubits, expected " + std::to_string(n_));
  terms_.push_back({coeff, string});
  return *this;
}

Observable& Observable::add(cplx coeff, std::string_view letters) {
  return add(coeff, PauliString::parse(letters));
}

void Observable::canonicalize(double drop_tol) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [drop_tol](const PauliTerm& t) { return std::abs(t.coeff) < drop_tol; });
  terms_ = std::move(merged);
}

Observable Observable::canonicalized(double drop_tol) const {
  Observable c = *this;
  c.canonicalize(drop_tol);
  return c;
}

bool Observable::is_hermitian(double tol) const {
  const auto c = canonicalized();
  return std::all_of(c.terms_.begin(), c.terms_.end(),
                     [&](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

Observable Observable::adjoint() const {
  Observable a = *this;
  for (auto& t : a.terms_) t.coeff = std::conj(t.coeff);
  return a;
}

cplx Observable::identity_coefficient() const {
  cplx c{0.0, 0.0};
  for (const auto& t : terms_) {
    if (t.string.is_identity()) c += t.coeff;
  }
  return c;
}

Observable Observable::remapped(int new_n, std::span<const int> mapping) const {
  require(static_cast<int>(mapping.size()) == n_, "qubit mapping size mismatch");
  std::vector<bool> used(static_cast<std::size_t>(std::max(new_n, 0)), false);
  for (int target : mapping) {
    require(target >= 0 && target < new_n, "qubit mapping target out of range");
    require(!used[static_cast<std::size_t>(target)], "qubit mapping is not injective");
    used[static_cast<std::size_t>(target)] = true;
  }
  Observable out(new_n);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    for (int q = 0; q < n_; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << mapping[static_cast<std::size_t>(q)];
      if ((t.string.x_mask() >> q) & 1U) x |= bit;
      if ((t.string.z_mask() >> q) & 1U) z |= bit;
    }
    out.terms_.push_back({t.coeff, PauliString::from_masks(new_n, x, z)});
  }
  return out;
}

Observable Observable::shifted(int new_n, int offset) const {
  std::vector<int> mapping(static_cast<std::size_t>(n_));
  for (int q = 0; q < n_; ++q) mapping[static_cast<std::size_t>(q)] = q + offset;
  return remapped(new_n, mapping);
}

std::string Observable::to_text() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& t : terms_) {
    out << t.coeff.real() << ' ' << t.coeff.imag() << ' ' << t.string.str() << '\n';
  }
  return out.str();
}

Observable& Observable::operator+=(const Observable& other) {
  if (terms_.empty() && n_ == 0) n_ = other.n_;
  require(other.n_ == n_, "Observable sum: qubit count mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

Observable& Observable::operator*=(cplx scale) {
  for (auto& t : terms_) t.coeff *= scale;
  canonicalize();
  return *this;
}

Observable observable_product(const Observable& a, const Observable& b) {
  require(a.n_qubits() == b.n_qubits(), "Observable product: qubit count mismatch");
  Observable out(a.n_qubits());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      auto [phase, product] = multiply(ta.string, tb.string);
      out.add(ta.coeff * tb.coeff * phase, product);
    }
  }
  out.canonicalize();
  return out;
}

Observable tensor(const Observable& a, const Observable& b) {
  const int n = a.n_qubits() + b.n_qubits();
  require(n <= kMaxPauliQubits, "tensor product exceeds Pauli register limit");
  Observable out(n);
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      const std::uint64_t x = ta.string.x_mask() | (tb.string.x_mask() << a.n_qubits());
      const std::uint64_t z = ta.string.z_mask() | (tb.string.z_mask() << a.n_qubits());
      out.add(ta.coeff * tb.coeff, PauliString::from_masks(n, x, z));
    }
  }
  out.canonicalize();
  return out;
}

Observable matrix_to_observable(const MatrixXc& m, double drop_tol) {
  require(m.rows() == m.cols(), "matrix_to_observable: matrix must be square");
  const auto dim = static_cast<std::uint64_t>(m.rows());
  require(dim > 0 && std::has_single_bit(dim), "matrix_to_observable: dimension must be a power of two");
  const int q = std::countr_zero(dim);
  require(q <= kDenseQubitCap, "matrix_to_observable: matrix too large");
  Observable out(q);
  // P has entries P[i^x, i] = i^{y} (-1)^{|i & z|}.
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      cplx acc{0.0, 0.0};
      for (std::uint64_t i = 0; i < dim; ++i) {
        const cplx v = m(static_cast<Eigen::Index>(i ^ x), static_cast<Eigen::Index>(i));
        acc += (std::popcount(i & z) & 1) ? -v : v;
      }
      const cplx coeff = std::conj(i_pow(std::popcount(x & z))) * acc / static_cast<double>(dim);
      if (std::abs(coeff) >= drop_tol) out.add(coeff, PauliString::from_masks(q, x, z));
    }
  }
  out.canonicalize(drop_tol);
  return out;
}

MatrixXc pauli_matrix(const PauliString& s) {
  require(s.n_qubits() <= kDenseQubitCap, "pauli_matrix: string too long for dense form");
  const std::uint64_t dim = std::uint64_t{1} << s.n_qubits();
  MatrixXc m = MatrixXc::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const cplx yphase = i_pow(s.y_count());
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double sign = (std::popcount(i & s.z_mask()) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(i ^ s.x_mask()), static_cast<Eigen::Index>(i)) = yphase * sign;
  }
  return m;
}

MatrixXc observable_to_matrix(const Observable& o, int dense_cap) {
  if (o.n_qubits() > dense_cap) {
    throw ResourceError("observable_to_matrix: " + std::to_string(o.n_qubits()) +
                        " qubits exceeds dense cap " + std::to_string(dense_cap));
  }
  const std::uint64_t dim = std::uint64_t{1} << o.n_qubits();
  MatrixXc m = MatrixXc::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : o.terms()) {
    const cplx base = t.coeff * i_pow(t.string.y_count());
    for (std::uint64_t i = 0; i < dim; ++i) {
      const double sign = (std::popcount(i & t.string.z_mask()) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(i ^ t.string.x_mask()), static_cast<Eigen::Index>(i)) += base * sign;
    }
  }
  return m;
}

}  // namespace deepvqe
