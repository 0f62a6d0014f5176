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

#include "deepvqe/vqe.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace deepvqe {

namespace {

const MatrixXc& pauli_z_half() {
  static const MatrixXc m = [] {
    MatrixXc z = MatrixXc::Zero(2, 2);
    z(0, 0) = 0.5;
    z(1, 1) = -0.5;
    return z;
  }();
  return m;
}

const MatrixXc& pauli_y_half() {
  static const MatrixXc m = [] {
    MatrixXc y = MatrixXc::Zero(2, 2);
    y(0, 1) = cplx(0.0, -0.5);
    y(1, 0) = cplx(0.0, 0.5);
    return y;
  }();
  return m;
}

const MatrixXc& exchange_generator() {
  static const MatrixXc m = [] {
    // XX + YY + ZZ in the |q_first q_second> basis, first = low bit.
    MatrixXc g = MatrixXc::Zero(4, 4);
    g(0, 0) = 1.0;
    g(3, 3) = 1.0;
    g(1, 1) = -1.0;
    g(2, 2) = -1.0;
    g(1, 2) = 2.0;
    g(2, 1) = 2.0;
    return g;
  }();
  return m;
}

MatrixXc rz(double a) { return single_qubit_matrix(a, 0.0, 0.0); }
MatrixXc ry(double b) { return single_qubit_matrix(0.0, b, 0.0); }

// One single-parameter rotation exp(-i theta G) on `targets`.
struct Rotation {
  std::vector<int> targets;
  const MatrixXc* generator;
  int param;
  enum class Kind { kRz, kRy, kExchange, kDense } kind;
  int dense_index = -1;
};

void check_finite(double v) {
  if (!std::isfinite(v)) throw OptimizerError("non-finite cost encountered during optimization");
}

}  // namespace

Ansatz::Ansatz(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 1, "ansatz needs at least one qubit");
}

Ansatz Ansatz::hardware_efficient(int n_qubits, int depth, const std::vector<Edge>& edges) {
  require(depth >= 1, "ansatz depth must be at least 1");
  for (const auto& [a, b] : edges) {
    require(a >= 0 && a < n_qubits && b >= 0 && b < n_qubits && a != b,
            "invalid ansatz edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  Ansatz out(n_qubits);
  out.depth_ = depth;
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q < n_qubits; ++q) out.add_single_qubit(q);
    for (const auto& [a, b] : edges) out.add_heisenberg_pair(a, b);
  }
  return out;
}

void Ansatz::add_single_qubit(int target) {
  require(target >= 0 && target < n_, "single-qubit slot target out of range");
  slots_.push_back({SlotKind::kSingleQubit, {target}, n_params_});
  n_params_ += 3;
}

void Ansatz::add_heisenberg_pair(int first, int second) {
  require(first >= 0 && first < n_ && second >= 0 && second < n_ && first != second,
          "Heisenberg slot targets invalid");
  slots_.push_back({SlotKind::kHeisenbergPair, {first, second}, n_params_});
  n_params_ += 1;
}

int Ansatz::add_generator(std::vector<int> targets, const MatrixXc& hermitian) {
  for (int t : targets) require(t >= 0 && t < n_, "generator target out of range");
  require(hermitian.rows() == (Eigen::Index{1} << targets.size()) && hermitian.cols() == hermitian.rows(),
          "generator dimension does not match its targets");
  require(is_hermitian(hermitian), "generator must be Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(hermitian);
  generators_.push_back({std::move(targets), hermitian, eig.eigenvalues(), eig.eigenvectors()});
  return static_cast<int>(generators_.size()) - 1;
}

void Ansatz::add_generator_slot(int generator) {
  require(generator >= 0 && generator < static_cast<int>(generators_.size()), "unknown generator");
  slots_.push_back({SlotKind::kGenerator, generators_[static_cast<std::size_t>(generator)].targets,
                    n_params_, generator});
  n_params_ += 1;
}

std::vector<Gate> Ansatz::bind(const Params& params) const {
  require(params.size() == n_params_, "parameter vector has length " + std::to_string(params.size()) +
                                          ", ansatz expects " + std::to_string(n_params_));
  std::vector<Gate> gates;
  gates.reserve(slots_.size());
  for (const auto& s : slots_) {
    switch (s.kind) {
      case SlotKind::kSingleQubit:
        gates.emplace_back(SingleQubitGate{s.targets[0], params[s.param_offset],
                                           params[s.param_offset + 1], params[s.param_offset + 2]});
        break;
      case SlotKind::kHeisenbergPair:
        gates.emplace_back(HeisenbergPairGate{s.targets[0], s.targets[1], params[s.param_offset]});
        break;
      case SlotKind::kGenerator: {
        const auto& g = generators_[static_cast<std::size_t>(s.generator)];
        gates.emplace_back(
            DenseBlockGate{g.targets, expm_from_eigen(g.eigenvalues, g.eigenvectors, params[s.param_offset])});
        break;
      }
    }
  }
  return gates;
}

Statevector Ansatz::prepare(const Params& params, const Statevector& initial) const {
  require(initial.n_qubits() == n_, "initial state size does not match ansatz");
  Statevector state = initial;
  for (const auto& gate : bind(params)) state.apply(gate);
  return state;
}

EnergyOperator::EnergyOperator(const Observable& o) : impl_(ObservableKernel(o)) {
  require(std::get<ObservableKernel>(impl_).hermitian(), "energy operator must be Hermitian");
}

EnergyOperator::EnergyOperator(BlockOperator b) : impl_(std::move(b)) {}

int EnergyOperator::n_qubits() const {
  return std::visit([](const auto& h) { return h.n_qubits(); }, impl_);
}

double EnergyOperator::expectation(const Statevector& state) const {
  if (const auto* k = std::get_if<ObservableKernel>(&impl_)) return deepvqe::expectation(state, *k);
  return std::get<BlockOperator>(impl_).expectation(state);
}

void EnergyOperator::apply(std::span<const cplx> in, std::span<cplx> out) const {
  std::visit([&](const auto& h) { h.apply(in, out); }, impl_);
}

double cost(const Ansatz& ansatz, const Params& params, const Observable& observable,
            const Statevector& initial) {
  require(observable.n_qubits() == ansatz.n_qubits(), "cost: observable size does not match ansatz");
  return expectation(ansatz.prepare(params, initial), observable);
}

Params gradient_fd(const CostFunction& f, const Params& params, double step) {
  require(step > 0.0, "finite-difference step must be positive");
  Params g(params.size());
  Params p = params;
  for (Eigen::Index j = 0; j < params.size(); ++j) {
    const double orig = p[j];
    p[j] = orig + step;
    const double plus = f(p);
    p[j] = orig - step;
    const double minus = f(p);
    p[j] = orig;
    g[j] = (plus - minus) / (2.0 * step);
  }
  return g;
}

std::string to_string(GradientMethod m) {
  return m == GradientMethod::kAdjoint ? "adjoint" : "finite_difference";
}

GradientMethod gradient_method_from_string(const std::string& s) {
  if (s == "adjoint") return GradientMethod::kAdjoint;
  if (s == "finite_difference" || s == "fd") return GradientMethod::kFiniteDifference;
  throw InputError("unknown gradient method '" + s + "'");
}

OptimizationResult minimize_bfgs(const CostFunction& f, const GradientFunction& grad,
                                 const Params& initial, const OptimizerConfig& config) {
  for (Eigen::Index j = 0; j < initial.size(); ++j) {
    require(std::isfinite(initial[j]), "initial parameters must be finite");
  }
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 40;

  const Eigen::Index n = initial.size();
  OptimizationResult result;
  Params x = initial;
  double fx = f(x);
  check_finite(fx);
  result.energy_trace.push_back(fx);
  if (n == 0) {
    result.best_params = x;
    result.best_energy = fx;
    result.converged = true;
    return result;
  }

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  Params g = grad(x);
  bool scaled = false;
  int iter = 0;
  for (; iter < config.max_iter; ++iter) {
    if (g.cwiseAbs().maxCoeff() < config.tol_grad) {
      result.converged = true;
      break;
    }
    Params dir = -hinv * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    Params x_new;
    double f_new = fx;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      x_new = x + step * dir;
      f_new = f(x_new);
      check_finite(f_new);
      if (f_new <= fx + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!hinv.isIdentity()) {
        // Stale curvature; retry along steepest descent before giving up.
        hinv.setIdentity();
        continue;
      }
      break;
    }
    const Params g_new = grad(x_new);
    const Params s = x_new - x;
    const Params y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = hinv * y;
      // H+ = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      hinv += rho * ((1.0 + rho * y.dot(hy)) * (s * s.transpose()) - (hy * s.transpose() + s * hy.transpose()));
    }
    x = x_new;
    fx = f_new;
    g = g_new;
    result.energy_trace.push_back(fx);
  }
  result.iterations = iter;
  result.best_params = x;
  result.best_energy = fx;
  return result;
}

OptimizationResult minimize_bfgs(const CostFunction& f, const Params& initial,
                                 const OptimizerConfig& config) {
  const double step = config.fd_step;
  return minimize_bfgs(f, [&](const Params& p) { return gradient_fd(f, p, step); }, initial, config);
}

VqeProblem::VqeProblem(Ansatz ansatz, EnergyOperator hamiltonian, Statevector initial)
    : ansatz_(std::move(ansatz)), hamiltonian_(std::move(hamiltonian)), initial_(std::move(initial)) {
  require(ansatz_.n_qubits() == hamiltonian_.n_qubits() && initial_.n_qubits() == ansatz_.n_qubits(),
          "VQE problem: ansatz, operator and initial state sizes differ");
}

Statevector VqeProblem::state(const Params& params) const { return ansatz_.prepare(params, initial_); }

double VqeProblem::cost(const Params& params) const { return hamiltonian_.expectation(state(params)); }

Params VqeProblem::gradient(const Params& params, GradientMethod method, double fd_step) const {
  if (method == GradientMethod::kAdjoint) return adjoint_gradient(params);
  return gradient_fd([this](const Params& p) { return cost(p); }, params, fd_step);
}

Params VqeProblem::adjoint_gradient(const Params& params) const {
  require(params.size() == ansatz_.n_params(), "adjoint gradient: parameter length mismatch");
  // Expand each slot into single-parameter rotations exp(-i theta G), in
  // application order. Rz(a) Ry(b) Rz(c) applies Rz(c) first.
  std::vector<Rotation> rotations;
  for (const auto& s : ansatz_.slots()) {
    switch (s.kind) {
      case Ansatz::SlotKind::kSingleQubit:
        rotations.push_back({s.targets, &pauli_z_half(), s.param_offset + 2, Rotation::Kind::kRz});
        rotations.push_back({s.targets, &pauli_y_half(), s.param_offset + 1, Rotation::Kind::kRy});
        rotations.push_back({s.targets, &pauli_z_half(), s.param_offset, Rotation::Kind::kRz});
        break;
      case Ansatz::SlotKind::kHeisenbergPair:
        rotations.push_back({s.targets, &exchange_generator(), s.param_offset, Rotation::Kind::kExchange});
        break;
      case Ansatz::SlotKind::kGenerator: {
        const auto& g = ansatz_.generators()[static_cast<std::size_t>(s.generator)];
        rotations.push_back({s.targets, &g.matrix, s.param_offset, Rotation::Kind::kDense, s.generator});
        break;
      }
    }
  }
  auto rotation_matrix = [&](const Rotation& r, double theta) -> MatrixXc {
    switch (r.kind) {
      case Rotation::Kind::kRz: return rz(theta);
      case Rotation::Kind::kRy: return ry(theta);
      case Rotation::Kind::kExchange: return heisenberg_pair_matrix(theta);
      case Rotation::Kind::kDense: {
        const auto& g = ansatz_.generators()[static_cast<std::size_t>(r.dense_index)];
        return expm_from_eigen(g.eigenvalues, g.eigenvectors, theta);
      }
    }
    return {};
  };

  const int n = ansatz_.n_qubits();
  std::vector<cplx> phi(initial_.amplitudes().begin(), initial_.amplitudes().end());
  for (const auto& r : rotations) apply_matrix_in_place(phi, n, r.targets, rotation_matrix(r, params[r.param]));
  std::vector<cplx> lambda(phi.size());
  hamiltonian_.apply(phi, lambda);
  std::vector<cplx> work(phi.size());

  Params grad = Params::Zero(params.size());
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
    std::copy(phi.begin(), phi.end(), work.begin());
    apply_matrix_in_place(work, n, it->targets, *it->generator);
    cplx overlap{0.0, 0.0};
    for (std::size_t i = 0; i < phi.size(); ++i) overlap += std::conj(lambda[i]) * work[i];
    grad[it->param] += 2.0 * overlap.imag();
    const MatrixXc undo = rotation_matrix(*it, -params[it->param]);
    apply_matrix_in_place(phi, n, it->targets, undo);
    apply_matrix_in_place(lambda, n, it->targets, undo);
  }
  return grad;
}

Params random_parameters(int n_params, std::uint64_t seed, double range) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-range, range);
  Params p(n_params);
  for (int j = 0; j < n_params; ++j) p[j] = dist(rng);
  return p;
}

OptimizationResult run_vqe(const VqeProblem& problem, const OptimizerConfig& config) {
  const int n = problem.ansatz().n_params();
  if (config.restarts <= 0) {
    OptimizationResult r;
    r.best_params = Params::Zero(n);
    r.best_energy = problem.cost(r.best_params);
    r.energy_trace = {r.best_energy};
    r.converged = false;
    r.seed = config.seed_base;
    return r;
  }
  const auto f = [&problem](const Params& p) { return problem.cost(p); };
  const auto g = [&problem, &config](const Params& p) {
    return problem.gradient(p, config.gradient, config.fd_step);
  };
  std::vector<OptimizationResult> runs(static_cast<std::size_t>(config.restarts));
  auto run_one = [&](int r) {
    const std::uint64_t seed = config.seed_base + static_cast<std::uint64_t>(r);
    auto res = minimize_bfgs(f, g, random_parameters(n, seed, config.init_range), config);
    res.seed = seed;
    runs[static_cast<std::size_t>(r)] = std::move(res);
  };
  const int threads = std::clamp(config.threads, 1, config.restarts);
  if (threads == 1) {
    for (int r = 0; r < config.restarts; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int r = next++; r < config.restarts; r = next++) run_one(r);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].best_energy < runs[best].best_energy) best = r;
  }
  OptimizationResult out = std::move(runs[best]);
  out.restarts_used = config.restarts;
  return out;
}

double fidelity(const Statevector& state, const std::vector<VectorXc>& subspace) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  for (std::size_t a = 0; a < subspace.size(); ++a) {
    require(subspace[a].size() == dim, "fidelity: reference vector size mismatch");
    for (std::size_t b = a; b < subspace.size(); ++b) {
      const cplx ip = subspace[a].dot(subspace[b]);
      const double expected = a == b ? 1.0 : 0.0;
      require(std::abs(ip - expected) < 1e-8, "fidelity: reference subspace is not orthonormal");
    }
  }
  const Eigen::Map<const VectorXc> psi(state.amplitudes().data(), dim);
  double f = 0.0;
  for (const auto& v : subspace) f += std::norm(v.dot(psi));
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace deepvqe
