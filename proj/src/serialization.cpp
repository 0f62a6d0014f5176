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

#include "deepvqe/serialization.hpp"

#include <fstream>

namespace deepvqe {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json matrix_to_json(const MatrixXc& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

MatrixXc matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    require(rows >= 0 && cols >= 0 && re.size() == static_cast<std::size_t>(rows * cols) && im.size() == re.size(),
            "matrix data size does not match its shape");
    MatrixXc m(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c, ++i) m(r, c) = cplx(re[i].get<double>(), im[i].get<double>());
    }
    return m;
  });
}

Json vector_to_json(std::span<const cplx> v) {
  Json re = Json::array();
  Json im = Json::array();
  for (const auto& a : v) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

std::vector<cplx> vector_from_json(const Json& j) {
  return guarded("vector", [&] {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    require(re.size() == im.size(), "vector parts differ in length");
    std::vector<cplx> v(re.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(re[i], im[i]);
    return v;
  });
}

Json observable_to_json(const Observable& o) {
  Json terms = Json::array();
  for (const auto& t : o.terms()) terms.push_back({t.coeff.real(), t.coeff.imag(), t.string.str()});
  return {{"n_qubits", o.n_qubits()}, {"terms", std::move(terms)}};
}

Observable observable_from_json(const Json& j) {
  return guarded("observable", [&] {
    Observable o(j.at("n_qubits").get<int>());
    for (const auto& t : j.at("terms")) {
      o.add(cplx(t.at(0).get<double>(), t.at(1).get<double>()), t.at(2).get<std::string>());
    }
    return o;
  });
}

Json statevector_to_json(const Statevector& s) {
  Json j = vector_to_json(s.amplitudes());
  j["n_qubits"] = s.n_qubits();
  return j;
}

Statevector statevector_from_json(const Json& j) {
  auto amps = vector_from_json(j);
  const int n = guarded("statevector", [&] { return j.at("n_qubits").get<int>(); });
  require(amps.size() == (std::size_t{1} << n), "statevector length does not match its qubit count");
  return Statevector::from_amplitudes(std::move(amps), 1e-9);
}

Json local_basis_to_json(const LocalBasis& b) {
  return {{"k_raw", b.k_raw},
          {"k", b.k},
          {"kept", b.kept},
          {"overlap", matrix_to_json(b.overlap)},
          {"transform", matrix_to_json(b.transform)},
          {"ground_state", statevector_to_json(b.ground_state)}};
}

LocalBasis local_basis_from_json(const Json& j) {
  return guarded("local basis", [&] {
    LocalBasis b;
    b.k_raw = j.at("k_raw").get<int>();
    b.k = j.at("k").get<int>();
    b.kept = j.at("kept").get<std::vector<int>>();
    b.overlap = matrix_from_json(j.at("overlap"));
    b.transform = matrix_from_json(j.at("transform"));
    b.ground_state = statevector_from_json(j.at("ground_state"));
    return b;
  });
}

Json pair_tensor_to_json(const PairTensor& p) {
  Json factors = Json::array();
  for (const auto& f : p.factors) {
    factors.push_back({{"coeff", f.coeff}, {"left", matrix_to_json(f.left)}, {"right", matrix_to_json(f.right)}});
  }
  return {{"site_i", p.site_i}, {"site_j", p.site_j}, {"k_i", p.k_i}, {"k_j", p.k_j}, {"factors", factors}};
}

PairTensor pair_tensor_from_json(const Json& j) {
  return guarded("pair tensor", [&] {
    PairTensor p;
    p.site_i = j.at("site_i").get<int>();
    p.site_j = j.at("site_j").get<int>();
    p.k_i = j.at("k_i").get<int>();
    p.k_j = j.at("k_j").get<int>();
    for (const auto& f : j.at("factors")) {
      p.factors.push_back({f.at("coeff").get<double>(), matrix_from_json(f.at("left")),
                           matrix_from_json(f.at("right"))});
    }
    return p;
  });
}

Json effective_problem_to_json(const EffectiveProblem& p) {
  Json sites = Json::array();
  for (std::size_t s = 0; s < p.site_matrices.size(); ++s) {
    const int d = p.site_dims[s];
    sites.push_back(matrix_to_json(p.site_matrices[s].topLeftCorner(d, d)));
  }
  Json pairs = Json::array();
  for (const auto& pair : p.pairs) {
    PairTensor trimmed = pair;
    trimmed.k_i = p.site_dims[static_cast<std::size_t>(pair.site_i)];
    trimmed.k_j = p.site_dims[static_cast<std::size_t>(pair.site_j)];
    for (auto& f : trimmed.factors) {
      f.left = f.left.topLeftCorner(trimmed.k_i, trimmed.k_i).eval();
      f.right = f.right.topLeftCorner(trimmed.k_j, trimmed.k_j).eval();
    }
    pairs.push_back(pair_tensor_to_json(trimmed));
  }
  return {{"schema", kSchemaVersion},
          {"kind", "effective_problem"},
          {"n_sites", p.n_sites},
          {"k", p.k},
          {"qubits_per_site", p.qubits_per_site},
          {"site_shift", p.site_shift},
          {"shift", p.shift},
          {"local_energy", local_product_energy(p)},
          {"site_matrices", std::move(sites)},
          {"pairs", std::move(pairs)}};
}

EffectiveProblem effective_problem_from_json(const Json& j) {
  return guarded("effective problem", [&] {
    require(j.value("schema", kSchemaVersion) == kSchemaVersion, "unsupported effective problem schema version");
    std::vector<MatrixXc> sites;
    for (const auto& m : j.at("site_matrices")) sites.push_back(matrix_from_json(m));
    std::vector<PairTensor> pairs;
    for (const auto& p : j.at("pairs")) pairs.push_back(pair_tensor_from_json(p));
    // Recover the margin used for the shift so reassembly reproduces it.
    AssembleOptions options;
    const double site_shift = j.at("site_shift").get<double>();
    if (site_shift != 0.0) {
      const EffectiveProblem probe = assemble_effective(sites, pairs, {.build_encoded = false});
      options.margin = -site_shift - local_product_energy(probe) / probe.n_sites;
    }
    EffectiveProblem p = assemble_effective(std::move(sites), std::move(pairs), options);
    require(std::abs(p.shift - j.at("shift").get<double>()) < 1e-9, "stored shift does not match the data");
    return p;
  });
}

Json optimizer_config_to_json(const OptimizerConfig& c) {
  return {{"depth", c.depth},       {"restarts", c.restarts}, {"seed_base", c.seed_base},
          {"tol_grad", c.tol_grad}, {"max_iter", c.max_iter}, {"fd_step", c.fd_step},
          {"init_range", c.init_range}, {"gradient", to_string(c.gradient)}, {"threads", c.threads}};
}

OptimizerConfig optimizer_config_from_json(const Json& j, const OptimizerConfig& defaults) {
  return guarded("optimizer config", [&] {
    OptimizerConfig c = defaults;
    c.depth = j.value("depth", c.depth);
    c.restarts = j.value("restarts", c.restarts);
    c.seed_base = j.value("seed_base", c.seed_base);
    c.tol_grad = j.value("tol_grad", c.tol_grad);
    c.max_iter = j.value("max_iter", c.max_iter);
    c.fd_step = j.value("fd_step", c.fd_step);
    c.init_range = j.value("init_range", c.init_range);
    if (j.contains("gradient")) c.gradient = gradient_method_from_string(j.at("gradient").get<std::string>());
    c.threads = j.value("threads", c.threads);
    return c;
  });
}

Json optimization_result_to_json(const OptimizationResult& r) {
  return {{"best_energy", r.best_energy},
          {"best_params", std::vector<double>(r.best_params.begin(), r.best_params.end())},
          {"iterations", r.iterations},
          {"restarts_used", r.restarts_used},
          {"converged", r.converged},
          {"seed", r.seed},
          {"energy_trace", r.energy_trace}};
}

OptimizationResult optimization_result_from_json(const Json& j) {
  return guarded("optimization result", [&] {
    OptimizationResult r;
    r.best_energy = j.at("best_energy").get<double>();
    const auto p = j.at("best_params").get<std::vector<double>>();
    r.best_params = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    r.iterations = j.at("iterations").get<int>();
    r.restarts_used = j.at("restarts_used").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.energy_trace = j.at("energy_trace").get<std::vector<double>>();
    return r;
  });
}

Json spectrum_to_json(const SpectrumResult& r) {
  return {{"method", r.method}, {"ground_energy", r.ground_energy}, {"degeneracy", r.degeneracy}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + " is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace deepvqe
