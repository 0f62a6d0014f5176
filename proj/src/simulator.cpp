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

#include "deepvqe/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace deepvqe {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_targets(std::span<const int> targets, int n_qubits) {
  std::uint64_t seen = 0;
  for (int t : targets) {
    require(t >= 0 && t < n_qubits, "gate target " + std::to_string(t) + " out of range for " +
                                        std::to_string(n_qubits) + " qubits");
    const std::uint64_t bit = std::uint64_t{1} << t;
    require((seen & bit) == 0, "gate targets must be pairwise distinct");
    seen |= bit;
  }
}

bool contiguous(std::span<const int> targets) {
  for (std::size_t j = 1; j < targets.size(); ++j) {
    if (targets[j] != targets[0] + static_cast<int>(j)) return false;
  }
  return true;
}

// Inserts a zero bit at each (ascending) position in `sorted_positions`.
std::uint64_t spread_bits(std::uint64_t value, std::span<const int> sorted_positions) {
  for (int pos : sorted_positions) {
    const std::uint64_t low = value & ((std::uint64_t{1} << pos) - 1);
    value = ((value >> pos) << (pos + 1)) | low;
  }
  return value;
}

void apply_one_qubit(std::span<cplx> amps, int t, const MatrixXc& u) {
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  const std::size_t stride = std::size_t{1} << t;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps[i];
      const cplx a1 = amps[i + stride];
      amps[i] = u00 * a0 + u01 * a1;
      amps[i + stride] = u10 * a0 + u11 * a1;
    }
  }
}

// Calls f(i) for every index whose bits lo and hi (lo < hi) are both zero.
template <typename F>
void for_each_pair_base(std::size_t size, int lo, int hi, F&& f) {
  const std::size_t sl = std::size_t{1} << lo;
  const std::size_t sh = std::size_t{1} << hi;
  for (std::size_t a = 0; a < size; a += 2 * sh) {
    for (std::size_t b = a; b < a + sh; b += 2 * sl) {
      for (std::size_t i = b; i < b + sl; ++i) f(i);
    }
  }
}

// Matrix index bit 0 addresses `first`, bit 1 addresses `second`.
void apply_two_qubit(std::span<cplx> amps, int first, int second, const MatrixXc& m) {
  cplx u[4][4];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) u[r][c] = m(r, c);
  }
  const std::size_t b1 = std::size_t{1} << first;
  const std::size_t b2 = std::size_t{1} << second;
  for_each_pair_base(amps.size(), std::min(first, second), std::max(first, second), [&](std::size_t i) {
    const std::size_t idx[4] = {i, i | b1, i | b2, i | b1 | b2};
    const cplx in[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amps[idx[r]] = u[r][0] * in[0] + u[r][1] * in[1] + u[r][2] * in[2] + u[r][3] * in[3];
    }
  });
}

double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

}  // namespace

MatrixXc single_qubit_matrix(double alpha, double beta, double gamma) {
  auto rz = [](double a) {
    MatrixXc m = MatrixXc::Zero(2, 2);
    m(0, 0) = std::exp(-kI * (a / 2));
    m(1, 1) = std::exp(kI * (a / 2));
    return m;
  };
  MatrixXc ry(2, 2);
  ry << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
  return rz(alpha) * ry * rz(gamma);
}

MatrixXc heisenberg_pair_matrix(double theta) {
  // XX + YY + ZZ = 2 SWAP - I, so the exponential is closed-form.
  MatrixXc m = MatrixXc::Zero(4, 4);
  const cplx aligned = std::exp(-kI * theta);
  const cplx stay = std::exp(kI * theta) * std::cos(2 * theta);
  const cplx swap = -kI * std::exp(kI * theta) * std::sin(2 * theta);
  m(0, 0) = aligned;
  m(3, 3) = aligned;
  m(1, 1) = stay;
  m(2, 2) = stay;
  m(1, 2) = swap;
  m(2, 1) = swap;
  return m;
}

Statevector::Statevector(int n_qubits, int qubit_cap) : n_(n_qubits) {
  require(n_qubits >= 0, "negative qubit count");
  if (n_qubits > qubit_cap) {
    throw ResourceError("statevector of " + std::to_string(n_qubits) + " qubits exceeds cap " +
                        std::to_string(qubit_cap));
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  require(index < s.dim(), "basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amplitudes, double tol) {
  const auto dim = static_cast<std::uint64_t>(amplitudes.size());
  require(dim > 0 && std::has_single_bit(dim), "statevector length must be a power of two");
  Statevector s;
  s.n_ = std::countr_zero(dim);
  s.amps_ = std::move(amplitudes);
  require(std::abs(s.norm() - 1.0) <= tol, "statevector is not normalized");
  return s;
}

Statevector Statevector::normalized(RawVector raw) {
  double sq = 0.0;
  for (const auto& a : raw.amplitudes) sq += std::norm(a);
  require(sq > 0.0, "cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& a : raw.amplitudes) a *= inv;
  return from_amplitudes(std::move(raw.amplitudes), 1e-8);
}

double Statevector::norm() const {
  double sq = 0.0;
  for (const auto& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

void Statevector::apply(const Gate& gate) {
  std::visit([this](const auto& g) { apply(g); }, gate);
}

void Statevector::apply(const SingleQubitGate& g) {
  const int t = g.target;
  check_targets(std::span<const int>(&t, 1), n_);
  apply_one_qubit(amps_, t, single_qubit_matrix(g.alpha, g.beta, g.gamma));
}

void Statevector::apply(const HeisenbergPairGate& g) {
  const int targets[2] = {g.first, g.second};
  check_targets(targets, n_);
  const std::uint64_t b1 = std::uint64_t{1} << g.first;
  const std::uint64_t b2 = std::uint64_t{1} << g.second;
  const cplx aligned = std::exp(-kI * g.theta);
  const cplx stay = std::exp(kI * g.theta) * std::cos(2 * g.theta);
  const cplx swap = -kI * std::exp(kI * g.theta) * std::sin(2 * g.theta);
  for_each_pair_base(amps_.size(), std::min(g.first, g.second), std::max(g.first, g.second), [&](std::size_t i00) {
    const std::uint64_t i01 = i00 | b1;
    const std::uint64_t i10 = i00 | b2;
    const std::uint64_t i11 = i01 | b2;
    amps_[i00] *= aligned;
    amps_[i11] *= aligned;
    const cplx a = amps_[i01];
    const cplx b = amps_[i10];
    amps_[i01] = stay * a + swap * b;
    amps_[i10] = swap * a + stay * b;
  });
}

void Statevector::apply(const DenseBlockGate& g) {
  require(g.unitary.rows() == g.unitary.cols() &&
              g.unitary.rows() == (Eigen::Index{1} << g.targets.size()),
          "dense gate matrix dimension does not match its targets");
  require(is_unitary(g.unitary), "dense gate matrix is not unitary");
  apply_matrix_in_place(amps_, n_, g.targets, g.unitary);
}

Statevector apply_gate(Statevector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

void apply_matrix_in_place(std::span<cplx> amps, int n_qubits, std::span<const int> targets,
                           const MatrixXc& matrix) {
  check_targets(targets, n_qubits);
  const auto k = static_cast<int>(targets.size());
  const Eigen::Index blk = Eigen::Index{1} << k;
  require(matrix.rows() == blk && matrix.cols() == blk, "matrix dimension does not match targets");
  require(amps.size() == (std::size_t{1} << n_qubits), "amplitude buffer size mismatch");
  if (k == 0) {
    for (auto& a : amps) a *= matrix(0, 0);
    return;
  }
  if (k == 1) {
    apply_one_qubit(amps, targets[0], matrix);
    return;
  }
  if (k == 2) {
    apply_two_qubit(amps, targets[0], targets[1], matrix);
    return;
  }
  if (contiguous(targets)) {
    const Eigen::Index low = Eigen::Index{1} << targets[0];
    const Eigen::Index high = static_cast<Eigen::Index>(amps.size()) / (low * blk);
    if (low == 1) {
      // State viewed as a blk x high column-major matrix; one GEMM per chunk.
      constexpr Eigen::Index kChunk = 4096;
      MatrixXc tmp;
      for (Eigen::Index c0 = 0; c0 < high; c0 += kChunk) {
        const Eigen::Index cols = std::min(kChunk, high - c0);
        Eigen::Map<MatrixXc> view(amps.data() + c0 * blk, blk, cols);
        tmp.noalias() = matrix * view;
        view = tmp;
      }
    } else {
      const MatrixXc mt = matrix.transpose();
      MatrixXc tmp(low, blk);
      for (Eigen::Index h = 0; h < high; ++h) {
        Eigen::Map<MatrixXc> view(amps.data() + h * low * blk, low, blk);
        tmp.noalias() = view * mt;
        view = tmp;
      }
    }
    return;
  }
  std::vector<int> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(blk), 0);
  for (Eigen::Index m = 0; m < blk; ++m) {
    for (int j = 0; j < k; ++j) {
      if ((m >> j) & 1) offsets[static_cast<std::size_t>(m)] |= std::uint64_t{1} << targets[static_cast<std::size_t>(j)];
    }
  }
  VectorXc in(blk);
  VectorXc out(blk);
  const std::uint64_t count = amps.size() >> k;
  for (std::uint64_t r = 0; r < count; ++r) {
    const std::uint64_t base = spread_bits(r, sorted);
    for (Eigen::Index m = 0; m < blk; ++m) in[m] = amps[base | offsets[static_cast<std::size_t>(m)]];
    out.noalias() = matrix * in;
    for (Eigen::Index m = 0; m < blk; ++m) amps[base | offsets[static_cast<std::size_t>(m)]] = out[m];
  }
}

ObservableKernel::ObservableKernel(const Observable& o) : n_(o.n_qubits()) {
  const Observable c = o.canonicalized();
  for (const auto& t : c.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-10) hermitian_ = false;
    static constexpr cplx kYPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx coeff = t.coeff * kYPhase[t.string.y_count() & 3];
    if (std::abs(coeff.imag()) > 1e-14) real_ = false;
    auto it = std::find_if(groups_.begin(), groups_.end(),
                           [&](const Group& g) { return g.x == t.string.x_mask(); });
    if (it == groups_.end()) {
      groups_.push_back({t.string.x_mask(), {}});
      it = std::prev(groups_.end());
    }
    it->terms.push_back({t.string.z_mask(), coeff});
  }
}

cplx ObservableKernel::diagonal_factor(const Group& g, std::uint64_t index) const {
  cplx f{0.0, 0.0};
  for (const auto& t : g.terms) f += parity_sign(index & t.z) * t.coeff;
  return f;
}

void ObservableKernel::apply(std::span<const cplx> in, std::span<cplx> out) const {
  require(in.size() == (std::size_t{1} << n_) && out.size() == in.size(),
          "observable application: vector size mismatch");
  std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
  for (const auto& g : groups_) {
    for (std::uint64_t i = 0; i < in.size(); ++i) {
      out[i ^ g.x] += diagonal_factor(g, i) * in[i];
    }
  }
}

cplx ObservableKernel::matrix_element(std::span<const cplx> bra, std::span<const cplx> ket) const {
  require(bra.size() == (std::size_t{1} << n_) && ket.size() == bra.size(),
          "matrix element: vector size mismatch");
  cplx total{0.0, 0.0};
  for (const auto& g : groups_) {
    cplx acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < ket.size(); ++i) {
      acc += std::conj(bra[i ^ g.x]) * diagonal_factor(g, i) * ket[i];
    }
    total += acc;
  }
  return total;
}

double expectation(const Statevector& state, const ObservableKernel& kernel) {
  require(kernel.hermitian(), "expectation requires a Hermitian observable");
  require(kernel.n_qubits() == state.n_qubits(), "expectation: qubit count mismatch");
  return kernel.matrix_element(state.amplitudes(), state.amplitudes()).real();
}

double expectation(const Statevector& state, const Observable& o) {
  require(o.n_qubits() == state.n_qubits(), "expectation: qubit count mismatch");
  return expectation(state, ObservableKernel(o));
}

cplx transition_element(std::span<const cplx> bra, const ObservableKernel& kernel,
                        std::span<const cplx> ket) {
  return kernel.matrix_element(bra, ket);
}

cplx transition_element(const Statevector& bra, const Observable& o, const Statevector& ket) {
  require(bra.n_qubits() == ket.n_qubits() && o.n_qubits() == ket.n_qubits(),
          "transition element: qubit count mismatch");
  return ObservableKernel(o).matrix_element(bra.amplitudes(), ket.amplitudes());
}

RawVector apply_observable(const RawVector& v, const Observable& o) {
  require(o.n_qubits() == v.n_qubits, "apply_observable: qubit count mismatch");
  RawVector out{v.n_qubits, std::vector<cplx>(v.amplitudes.size())};
  ObservableKernel(o).apply(v.amplitudes, out.amplitudes);
  return out;
}

RawVector apply_observable(const Statevector& state, const Observable& o) {
  return apply_observable(state.to_raw(), o);
}

bool is_hermitian(const MatrixXc& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const MatrixXc& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - MatrixXc::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

MatrixXc expm_from_eigen(const Eigen::VectorXd& eigenvalues, const MatrixXc& eigenvectors,
                         double theta) {
  VectorXc phases(eigenvalues.size());
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) phases[k] = std::exp(-kI * (theta * eigenvalues[k]));
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

MatrixXc expm_hermitian(const MatrixXc& a, double theta) {
  require(is_hermitian(a), "expm_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(a);
  return expm_from_eigen(eig.eigenvalues(), eig.eigenvectors(), theta);
}

void BlockOperator::add(std::vector<int> targets, MatrixXc matrix) {
  check_targets(targets, n_);
  require(matrix.rows() == (Eigen::Index{1} << targets.size()) && matrix.cols() == matrix.rows(),
          "block operator term: matrix dimension does not match targets");
  require(is_hermitian(matrix), "block operator term must be Hermitian");
  terms_.push_back({std::move(targets), std::move(matrix)});
}

double BlockOperator::expectation(const Statevector& state) const {
  require(state.n_qubits() == n_, "block operator expectation: qubit count mismatch");
  const auto psi = state.amplitudes();
  std::vector<cplx> work(psi.size());
  double total = constant_;
  for (const auto& term : terms_) {
    std::copy(psi.begin(), psi.end(), work.begin());
    apply_matrix_in_place(work, n_, term.targets, term.matrix);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * work[i];
    total += acc.real();
  }
  return total;
}

void BlockOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  require(in.size() == (std::size_t{1} << n_) && out.size() == in.size(),
          "block operator application: vector size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = constant_ * in[i];
  std::vector<cplx> work(in.size());
  for (const auto& term : terms_) {
    std::copy(in.begin(), in.end(), work.begin());
    apply_matrix_in_place(work, n_, term.targets, term.matrix);
    for (std::size_t i = 0; i < in.size(); ++i) out[i] += work[i];
  }
}

}  // namespace deepvqe
