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

#include "deepvqe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace deepvqe {

namespace {

using ConstMap = Eigen::Map<const VectorXc>;

ConstMap view(std::span<const cplx> s) { return ConstMap(s.data(), static_cast<Eigen::Index>(s.size())); }

VectorXc random_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  VectorXc v(static_cast<Eigen::Index>(dim));
  for (auto& a : v) a = cplx(g(rng), g(rng));
  return v.normalized();
}

void project_out(VectorXc& v, const std::vector<VectorXc>& found) {
  for (const auto& u : found) v -= u * u.dot(v);
}

struct Eigenpair {
  double energy;
  VectorXc vector;
  double residual;
};

/// Lowest eigenpair of the symmetric tridiagonal (alpha, beta).
std::pair<double, Eigen::VectorXd> tridiagonal_ground(const std::vector<double>& alpha,
                                                      const std::vector<double>& beta) {
  const auto n = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), n);
  Eigen::VectorXd e = n > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), n - 1))
                            : Eigen::VectorXd(Eigen::VectorXd::Zero(1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (n == 1) return {d(0), Eigen::VectorXd::Ones(1)};
  es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

class LanczosSolver {
 public:
  LanczosSolver(const MatVec& h, std::size_t dim, const LanczosConfig& config,
                const std::vector<VectorXc>& deflate)
      : h_(h), dim_(dim), config_(config), deflate_(deflate), hx_(static_cast<Eigen::Index>(dim)) {}

  Eigenpair solve(VectorXc start) {
    const std::size_t bytes = dim_ * sizeof(cplx);
    const std::size_t storable = config_.memory_budget_bytes / std::max<std::size_t>(bytes, 1);
    const int basis = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config_.max_krylov),
                                                             storable > 4 ? storable - 4 : 0));
    double residual = 0.0;
    for (int restart = 0; restart <= config_.max_restarts; ++restart) {
      project_out(start, deflate_);
      start.normalize();
      VectorXc ritz = basis >= 20 ? stored_pass(start, basis) : two_pass(start);
      const double e = apply_real(ritz);
      residual = (hx_ - e * ritz).norm();
      if (residual <= config_.residual_tol) return {e, std::move(ritz), residual};
      start = std::move(ritz);
    }
    throw ConvergenceError("Lanczos did not converge", residual);
  }

 private:
  void apply(const VectorXc& x, VectorXc& y) {
    h_(std::span<const cplx>(x.data(), dim_), std::span<cplx>(y.data(), dim_));
    project_out(y, deflate_);
  }

  // <x|H|x> for a normalized x; leaves H x in hx_.
  double apply_real(const VectorXc& x) {
    apply(x, hx_);
    return x.dot(hx_).real();
  }

  bool converged(const std::vector<double>& alpha, const std::vector<double>& beta, double b,
                 Eigen::VectorXd& y) {
    auto [e, vec] = tridiagonal_ground(alpha, beta);
    y = std::move(vec);
    return b * std::abs(y(y.size() - 1)) < 0.1 * config_.residual_tol || b < 1e-14;
  }

  VectorXc stored_pass(const VectorXc& start, int basis) {
    std::vector<VectorXc> v{start};
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXd y;
    VectorXc w(static_cast<Eigen::Index>(dim_));
    for (int j = 0; j < basis; ++j) {
      apply(v[static_cast<std::size_t>(j)], w);
      alpha.push_back(v[static_cast<std::size_t>(j)].dot(w).real());
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& u : v) w -= u * u.dot(w);
      }
      project_out(w, deflate_);
      const double b = w.norm();
      if (converged(alpha, beta, b, y) || j + 1 == basis) break;
      beta.push_back(b);
      v.push_back(w / b);
    }
    VectorXc x = VectorXc::Zero(static_cast<Eigen::Index>(dim_));
    for (Eigen::Index i = 0; i < y.size(); ++i) x += y(i) * v[static_cast<std::size_t>(i)];
    return x.normalized();
  }

  // Three-term recurrence without reorthogonalization; the Ritz vector is
  // rebuilt by replaying the recurrence.
  VectorXc two_pass(const VectorXc& start) {
    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXd y;
    const auto n = static_cast<Eigen::Index>(dim_);
    VectorXc prev = VectorXc::Zero(n);
    VectorXc cur = start;
    VectorXc w(n);
    for (int j = 0; j < config_.max_krylov; ++j) {
      apply(cur, w);
      alpha.push_back(cur.dot(w).real());
      w -= alpha.back() * cur;
      if (j > 0) w -= beta.back() * prev;
      const double b = w.norm();
      const bool last = j + 1 == config_.max_krylov || b < 1e-14;
      if ((last || j % 5 == 4) && (converged(alpha, beta, b, y) || last)) break;
      beta.push_back(b);
      prev.swap(cur);
      cur = w / b;
    }
    VectorXc x = VectorXc::Zero(n);
    prev.setZero();
    cur = start;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      x += y(j) * cur;
      if (j + 1 == y.size()) break;
      apply(cur, w);
      w -= alpha[static_cast<std::size_t>(j)] * cur;
      if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * prev;
      prev.swap(cur);
      cur = w / beta[static_cast<std::size_t>(j)];
    }
    return x.normalized();
  }

  const MatVec& h_;
  std::size_t dim_;
  const LanczosConfig& config_;
  const std::vector<VectorXc>& deflate_;
  VectorXc hx_;
};

void apply_site(const MatrixXc& m, int d, std::size_t stride, cplx coeff, std::span<const cplx> x,
                std::span<cplx> y) {
  const auto block = static_cast<Eigen::Index>(stride) * d;
  const std::size_t outer = x.size() / static_cast<std::size_t>(block);
  const MatrixXc mt = coeff * m.topLeftCorner(d, d).transpose();
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<const MatrixXc> xs(x.data() + o * static_cast<std::size_t>(block),
                                  static_cast<Eigen::Index>(stride), d);
    Eigen::Map<MatrixXc> ys(y.data() + o * static_cast<std::size_t>(block), static_cast<Eigen::Index>(stride), d);
    ys.noalias() += xs * mt;
  }
}

}  // namespace

SpectrumResult exact_ground_dense(const MatrixXc& h, double gap_tol) {
  require(h.rows() == h.cols() && h.rows() > 0, "matrix must be square and non-empty");
  require(is_hermitian(h), "matrix is not Hermitian");
  Eigen::VectorXd w;
  MatrixXc v;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.real());
    w = es.eigenvalues();
    v = es.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
    w = es.eigenvalues();
    v = es.eigenvectors();
  }
  SpectrumResult r;
  r.method = "dense";
  r.ground_energy = w(0);
  for (Eigen::Index i = 0; i < w.size() && w(i) - w(0) <= gap_tol; ++i) r.ground_subspace.push_back(v.col(i));
  r.degeneracy = static_cast<int>(r.ground_subspace.size());
  return r;
}

SpectrumResult exact_ground_dense(const Observable& o, int qubit_cap) {
  if (o.n_qubits() > qubit_cap) {
    throw ResourceError("dense diagonalization is capped at " + std::to_string(qubit_cap) + " qubits");
  }
  return exact_ground_dense(observable_to_matrix(o, qubit_cap));
}

SpectrumResult lanczos_ground(const MatVec& h, std::size_t dim, const LanczosConfig& config) {
  require(dim > 0, "empty Hilbert space");
  std::vector<VectorXc> found;
  SpectrumResult r;
  r.method = "lanczos";
  const auto first = LanczosSolver(h, dim, config, found).solve(random_vector(dim, config.seed));
  r.ground_energy = first.energy;
  found.push_back(first.vector);
  if (config.detect_degeneracy) {
    for (int k = 1; k < config.max_degeneracy && found.size() < dim; ++k) {
      const auto next = LanczosSolver(h, dim, config, found).solve(random_vector(dim, config.seed + k));
      if (next.energy - r.ground_energy > config.gap_tol) break;
      found.push_back(next.vector);
    }
  }
  r.ground_subspace = std::move(found);
  r.degeneracy = static_cast<int>(r.ground_subspace.size());
  return r;
}

SpectrumResult lanczos_ground(const Observable& o, const LanczosConfig& config) {
  if (o.n_qubits() > config.qubit_cap) {
    throw ResourceError("Lanczos is capped at " + std::to_string(config.qubit_cap) + " qubits");
  }
  const ObservableKernel kernel(o);
  require(kernel.hermitian(), "Lanczos needs a Hermitian operator");
  const MatVec h = [&kernel](std::span<const cplx> x, std::span<cplx> y) { kernel.apply(x, y); };
  return lanczos_ground(h, std::size_t{1} << o.n_qubits(), config);
}

Statevector random_statevector(int n_qubits, std::uint64_t seed) {
  const VectorXc v = random_vector(std::size_t{1} << n_qubits, seed);
  return Statevector::from_amplitudes(std::vector<cplx>(v.begin(), v.end()));
}

IteResult imaginary_time_evolution(const Observable& o, const Statevector& initial, const IteConfig& config) {
  require(o.n_qubits() == initial.n_qubits(), "state and observable sizes differ");
  require(config.dtau > 0.0 && config.tol > 0.0, "dtau and tol must be positive");
  const ObservableKernel kernel(o);
  require(kernel.hermitian(), "imaginary time evolution needs a Hermitian operator");
  const auto dim = static_cast<Eigen::Index>(initial.dim());

  VectorXc psi = view(initial.amplitudes());
  VectorXc hpsi(dim);
  VectorXc phi(dim);
  VectorXc hphi(dim);
  auto h = [&](const VectorXc& x, VectorXc& y) {
    kernel.apply(std::span<const cplx>(x.data(), initial.dim()), std::span<cplx>(y.data(), initial.dim()));
  };

  IteResult r;
  h(psi, hpsi);
  double e = psi.dot(hpsi).real();
  r.energies.push_back(e);
  double dtau = config.dtau;
  const double slack = 1e-12 * std::max(1.0, std::abs(e));
  double de = 0.0;
  double de_prev = 0.0;
  while (r.steps < config.max_steps) {
    phi = psi - dtau * hpsi;
    phi.normalize();
    h(phi, hphi);
    const double e_new = phi.dot(hphi).real();
    if (e_new > e) {
      if (e_new - e <= slack) {  // at a fixed point up to rounding
        de = 0.0;
        r.converged = true;
        break;
      }
      dtau *= 0.5;
      if (dtau < config.min_dtau) break;
      continue;
    }
    ++r.steps;
    psi.swap(phi);
    hpsi.swap(hphi);
    r.energies.push_back(e_new);
    de_prev = de;
    de = e - e_new;
    e = e_new;
    if (de < config.tol) {
      r.converged = true;
      break;
    }
  }
  r.energy = e;
  r.state = Statevector::from_amplitudes(std::vector<cplx>(psi.begin(), psi.end()), 1e-8);
  if (config.reference_energy) {
    // The tol test stops while the energy still decays geometrically; the
    // remaining decrease de * rho / (1 - rho) is not stagnation.
    double tail = 0.0;
    if (de > 0.0 && de_prev > de) {
      const double rho = de / de_prev;
      tail = de * rho / (1.0 - rho);
    }
    r.flagged = e - tail - *config.reference_energy > 10.0 * config.tol;
  }
  return r;
}

std::size_t effective_dimension(const EffectiveProblem& problem) {
  std::size_t dim = 1;
  for (int d : problem.site_dims) {
    if (dim > (std::size_t{1} << 40) / static_cast<std::size_t>(d)) {
      throw ResourceError("effective Hilbert space dimension overflows");
    }
    dim *= static_cast<std::size_t>(d);
  }
  return dim;
}

void apply_effective(const EffectiveProblem& problem, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t dim = effective_dimension(problem);
  require(x.size() == dim && y.size() == dim, "vector size does not match the effective space");
  std::vector<std::size_t> stride(problem.site_dims.size());
  std::size_t s = 1;
  for (std::size_t i = 0; i < stride.size(); ++i) {
    stride[i] = s;
    s *= static_cast<std::size_t>(problem.site_dims[i]);
  }
  std::fill(y.begin(), y.end(), cplx{});
  for (int i = 0; i < problem.n_sites; ++i) {
    const auto u = static_cast<std::size_t>(i);
    apply_site(problem.site_matrices[u], problem.site_dims[u], stride[u], 1.0, x, y);
  }
  std::vector<cplx> tmp(dim);
  for (const auto& p : problem.pairs) {
    const auto a = static_cast<std::size_t>(p.site_i);
    const auto b = static_cast<std::size_t>(p.site_j);
    for (const auto& f : p.factors) {
      std::fill(tmp.begin(), tmp.end(), cplx{});
      apply_site(f.left, problem.site_dims[a], stride[a], 1.0, x, tmp);
      apply_site(f.right, problem.site_dims[b], stride[b], f.coeff, tmp, y);
    }
  }
}

MatrixXc effective_hamiltonian_dense(const EffectiveProblem& problem, std::size_t cap) {
  const std::size_t dim = effective_dimension(problem);
  if (dim > cap) throw ResourceError("effective Hamiltonian too large for dense storage");
  const auto n = static_cast<Eigen::Index>(dim);
  MatrixXc h(n, n);
  VectorXc e = VectorXc::Zero(n);
  VectorXc col(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    apply_effective(problem, std::span<const cplx>(e.data(), dim), std::span<cplx>(col.data(), dim));
    h.col(j) = col;
    e(j) = 0.0;
  }
  return h;
}

double exact_ground_effective(const EffectiveProblem& problem, const EffectiveOracleConfig& config) {
  const std::size_t dim = effective_dimension(problem);
  if (dim > config.max_dim) throw ResourceError("effective Hilbert space exceeds the oracle cap");
  if (dim <= config.dense_cap) {
    MatrixXc h = effective_hamiltonian_dense(problem, config.dense_cap);
    h = 0.5 * (h + h.adjoint()).eval();
    return exact_ground_dense(h).ground_energy;
  }
  LanczosConfig lc = config.lanczos;
  lc.detect_degeneracy = false;
  const MatVec h = [&problem](std::span<const cplx> x, std::span<cplx> y) { apply_effective(problem, x, y); };
  return lanczos_ground(h, dim, lc).ground_energy;
}

}  // namespace deepvqe
