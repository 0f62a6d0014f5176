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

#include "deepvqe/local_basis.hpp"

#include <cmath>

#include "deepvqe/subsystem.hpp"

namespace deepvqe {

namespace {

bool is_identity_observable(const Observable& o) {
  const auto c = o.canonicalized();
  return c.size() == 1 && c.terms()[0].string.is_identity() && std::abs(c.terms()[0].coeff - cplx(1.0)) < 1e-12;
}

}  // namespace

void SubsystemSpec::validate() const {
  require(n_qubits >= 1, "subsystem needs at least one qubit");
  require(hamiltonian.n_qubits() == n_qubits, "subsystem Hamiltonian acts on the wrong register size");
  require(hamiltonian.is_hermitian(), "subsystem Hamiltonian must be Hermitian");
  for (int q : boundary_qubits) require(q >= 0 && q < n_qubits, "boundary qubit out of range");
  require(!excitations.empty() && is_identity_observable(excitations.front()),
          "the first excitation must be the identity");
  for (const auto& w : excitations) {
    require(w.n_qubits() == n_qubits, "excitation acts outside the subsystem register");
  }
}

std::vector<Observable> default_excitations(int n_qubits, std::span<const int> boundary,
                                            std::span<const Pauli> paulis) {
  std::vector<Observable> out;
  out.push_back(Observable::identity(n_qubits));
  for (int q : boundary) {
    require(q >= 0 && q < n_qubits, "boundary qubit " + std::to_string(q) + " out of range");
    for (Pauli p : paulis) {
      Observable w(n_qubits);
      w.add(1.0, PauliString::single(n_qubits, q, p));
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<InteractionTerm> heisenberg_coupling(int n_left, int left_qubit, int n_right, int right_qubit) {
  require(left_qubit >= 0 && left_qubit < n_left && right_qubit >= 0 && right_qubit < n_right,
          "coupling qubit out of range");
  std::vector<InteractionTerm> terms;
  for (Pauli p : kXYZ) {
    Observable l(n_left);
    l.add(1.0, PauliString::single(n_left, left_qubit, p));
    Observable r(n_right);
    r.add(1.0, PauliString::single(n_right, right_qubit, p));
    terms.push_back({1.0, std::move(l), std::move(r)});
  }
  return terms;
}

MatrixXc gram_schmidt_transform(const MatrixXc& overlap, double drop_tol, std::vector<int>& kept) {
  require(overlap.rows() == overlap.cols(), "overlap matrix must be square");
  const Eigen::Index n = overlap.rows();
  std::vector<VectorXc> accepted;
  kept.clear();
  for (Eigen::Index k = 0; k < n; ++k) {
    VectorXc w = VectorXc::Zero(n);
    w[k] = 1.0;
    // Two sweeps of modified Gram-Schmidt in the S inner product.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto& c : accepted) w -= c.dot(overlap * w) * c;
    }
    const double norm2 = w.dot(overlap * w).real();
    if (!(norm2 > drop_tol * drop_tol)) continue;
    accepted.push_back(w / std::sqrt(norm2));
    kept.push_back(static_cast<int>(k));
  }
  MatrixXc p(static_cast<Eigen::Index>(accepted.size()), n);
  for (std::size_t a = 0; a < accepted.size(); ++a) p.row(static_cast<Eigen::Index>(a)) = accepted[a].transpose();
  return p;
}

MatrixXc gram_schmidt_transform(const std::vector<RawVector>& vectors, double drop_tol, std::vector<int>& kept) {
  require(!vectors.empty(), "Gram-Schmidt needs at least one vector");
  const auto n = static_cast<Eigen::Index>(vectors.size());
  const auto dim = static_cast<Eigen::Index>(vectors.front().amplitudes.size());
  std::vector<VectorXc> basis;   // accepted orthonormal vectors
  std::vector<VectorXc> coeffs;  // their coefficients over the raw vectors
  kept.clear();
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& raw = vectors[static_cast<std::size_t>(k)].amplitudes;
    require(static_cast<Eigen::Index>(raw.size()) == dim, "Gram-Schmidt vectors differ in length");
    VectorXc v = Eigen::Map<const VectorXc>(raw.data(), dim);
    VectorXc c = VectorXc::Zero(n);
    c[k] = 1.0;
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t a = 0; a < basis.size(); ++a) {
        const cplx proj = basis[a].dot(v);
        v -= proj * basis[a];
        c -= proj * coeffs[a];
      }
    }
    const double norm = v.norm();
    if (!(norm > drop_tol)) continue;
    basis.push_back(v / norm);
    coeffs.push_back(c / norm);
    kept.push_back(static_cast<int>(k));
  }
  MatrixXc p(static_cast<Eigen::Index>(coeffs.size()), n);
  for (std::size_t a = 0; a < coeffs.size(); ++a) p.row(static_cast<Eigen::Index>(a)) = coeffs[a].transpose();
  return p;
}

LocalBasis build_local_basis(const Statevector& ground_state, const std::vector<Observable>& excitations,
                             double drop_tol) {
  require(std::abs(ground_state.norm() - 1.0) < 1e-10, "local ground state must be normalized");
  require(!excitations.empty(), "local basis needs at least the identity excitation");
  LocalBasis basis;
  basis.ground_state = ground_state;
  basis.k_raw = static_cast<int>(excitations.size());
  const RawVector psi0 = ground_state.to_raw();
  for (const auto& w : excitations) {
    require(w.n_qubits() == ground_state.n_qubits(), "excitation acts outside the subsystem register");
    basis.raw_vectors.push_back(apply_observable(psi0, w));
  }
  basis.overlap = MatrixXc(basis.k_raw, basis.k_raw);
  const auto dim = static_cast<Eigen::Index>(ground_state.dim());
  for (int a = 0; a < basis.k_raw; ++a) {
    const Eigen::Map<const VectorXc> va(basis.raw_vectors[static_cast<std::size_t>(a)].amplitudes.data(), dim);
    for (int b = a; b < basis.k_raw; ++b) {
      const Eigen::Map<const VectorXc> vb(basis.raw_vectors[static_cast<std::size_t>(b)].amplitudes.data(), dim);
      const cplx s = va.dot(vb);
      basis.overlap(a, b) = s;
      basis.overlap(b, a) = std::conj(s);
    }
  }
  basis.transform = gram_schmidt_transform(basis.raw_vectors, drop_tol, basis.kept);
  basis.k = static_cast<int>(basis.transform.rows());
  return basis;
}

std::vector<VectorXc> LocalBasis::orthonormal_vectors() const {
  const auto dim = static_cast<Eigen::Index>(ground_state.dim());
  std::vector<VectorXc> out;
  for (int a = 0; a < k; ++a) {
    VectorXc v = VectorXc::Zero(dim);
    for (int j = 0; j < k_raw; ++j) {
      const cplx c = transform(a, j);
      if (c == cplx(0.0)) continue;
      v += c * Eigen::Map<const VectorXc>(raw_vectors[static_cast<std::size_t>(j)].amplitudes.data(), dim);
    }
    out.push_back(std::move(v));
  }
  return out;
}

MatrixXc project_operator(const LocalBasis& basis, const Observable& op) {
  require(op.n_qubits() == basis.ground_state.n_qubits(),
          "operator register size does not match the local basis");
  const ObservableKernel kernel(op);
  MatrixXc bar(basis.k_raw, basis.k_raw);
  for (int a = 0; a < basis.k_raw; ++a) {
    for (int b = 0; b < basis.k_raw; ++b) {
      bar(a, b) = kernel.matrix_element(basis.raw_vectors[static_cast<std::size_t>(a)].amplitudes,
                                        basis.raw_vectors[static_cast<std::size_t>(b)].amplitudes);
    }
  }
  return basis.transform.conjugate() * bar * basis.transform.transpose();
}

MatrixXc effective_site_matrix(const LocalBasis& basis, const Observable& h) {
  require(h.is_hermitian(), "effective site matrix needs a Hermitian operator");
  MatrixXc m = project_operator(basis, h);
  require(is_hermitian(m, 1e-10), "projected site matrix lost Hermiticity");
  return (m + m.adjoint()) / 2.0;
}

std::vector<MatrixXc> effective_excitations(const LocalBasis& basis, const std::vector<Observable>& ops) {
  std::vector<MatrixXc> out;
  out.reserve(ops.size());
  for (const auto& w : ops) out.push_back(project_operator(basis, w));
  return out;
}

}  // namespace deepvqe
