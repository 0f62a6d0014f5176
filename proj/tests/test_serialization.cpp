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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "deepvqe/models.hpp"
#include "deepvqe/oracle.hpp"
#include "deepvqe/pipeline.hpp"
#include "deepvqe/serialization.hpp"
#include "oracle_helpers.hpp"

namespace deepvqe {
namespace {

// Text round trip, so the tests cover the serialized form and not just the
// in-memory tree.
Json reparse(const Json& j) { return Json::parse(j.dump()); }

TEST(Serialization, MatrixRoundTripIsExact) {
  std::mt19937_64 rng(1);
  MatrixXc m = testing::random_hermitian(5, rng);
  m.conservativeResize(5, 3);
  const MatrixXc back = matrix_from_json(reparse(matrix_to_json(m)));
  ASSERT_EQ(back.rows(), 5);
  ASSERT_EQ(back.cols(), 3);
  EXPECT_EQ((back - m).norm(), 0.0);
}

TEST(Serialization, MatrixRejectsBadShape) {
  Json j = matrix_to_json(MatrixXc::Identity(2, 2));
  j["rows"] = 3;
  EXPECT_THROW(matrix_from_json(j), InputError);
  EXPECT_THROW(matrix_from_json(Json::object()), InputError);
}

TEST(Serialization, ObservableRoundTrip) {
  Observable o(3);
  o.add(cplx(0.5, -0.25), "XYZ").add(2.0, "IIZ");
  const Observable back = observable_from_json(reparse(observable_to_json(o)));
  EXPECT_EQ(back.canonicalized().to_text(), o.canonicalized().to_text());
  EXPECT_THROW(observable_from_json(Json{{"n_qubits", 2}, {"terms", {{1.0, 0.0, "XYZ"}}}}), InputError);
}

TEST(Serialization, StatevectorRoundTrip) {
  const Statevector s = random_statevector(5, 3);
  const Statevector back = statevector_from_json(reparse(statevector_to_json(s)));
  ASSERT_EQ(back.n_qubits(), 5);
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_EQ(back.amplitudes()[i], s.amplitudes()[i]);
  Json bad = statevector_to_json(s);
  bad["n_qubits"] = 4;
  EXPECT_THROW(statevector_from_json(bad), InputError);
}

TEST(Serialization, LocalBasisRoundTrip) {
  const auto spec = heisenberg_block4();
  const auto g = exact_ground_dense(spec.hamiltonian);
  const VectorXc& v = g.ground_subspace[0];
  const LocalBasis b = build_local_basis(
      Statevector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()), 1e-9), spec.excitations);
  const LocalBasis back = local_basis_from_json(reparse(local_basis_to_json(b)));
  EXPECT_EQ(back.k, b.k);
  EXPECT_EQ(back.k_raw, b.k_raw);
  EXPECT_EQ(back.kept, b.kept);
  EXPECT_EQ((back.overlap - b.overlap).norm(), 0.0);
  EXPECT_EQ((back.transform - b.transform).norm(), 0.0);
}

TEST(Serialization, EffectiveProblemRoundTrip) {
  const auto problem = chain(heisenberg_block4(), 3);
  const auto g = exact_ground_dense(heisenberg_block4().hamiltonian);
  const VectorXc& v = g.ground_subspace[0];
  const Statevector ground = Statevector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()), 1e-9);
  for (double margin : {1.0, 2.5}) {
    const EffectiveProblem p = build_chain_effective(problem, ground, {.margin = margin});
    const EffectiveProblem back = effective_problem_from_json(reparse(effective_problem_to_json(p)));
    EXPECT_EQ(back.n_sites, p.n_sites);
    EXPECT_EQ(back.k, p.k);
    EXPECT_EQ(back.site_dims, p.site_dims);
    EXPECT_NEAR(back.shift, p.shift, 1e-12);
    for (int s = 0; s < p.n_sites; ++s) {
      EXPECT_LT((back.site_matrices[s] - p.site_matrices[s]).norm(), 1e-12);
    }
    ASSERT_EQ(back.pairs.size(), p.pairs.size());
    EXPECT_LT((back.pairs[1].dense() - p.pairs[1].dense()).norm(), 1e-12);
    EXPECT_NEAR(local_product_energy(back), -21.0, 1e-9);
    EXPECT_EQ(back.encoded.canonicalized().size(), p.encoded.canonicalized().size());
  }
}

TEST(Serialization, EffectiveProblemSchemaVersionChecked) {
  const EffectiveProblem p = assemble_effective({MatrixXc::Identity(2, 2) * -1.0}, {});
  Json j = effective_problem_to_json(p);
  EXPECT_EQ(j.at("schema").get<int>(), kSchemaVersion);
  j["schema"] = kSchemaVersion + 1;
  EXPECT_THROW(effective_problem_from_json(j), InputError);
}

TEST(Serialization, OptimizerConfigRoundTripAndDefaults) {
  OptimizerConfig c;
  c.depth = 7;
  c.restarts = 3;
  c.seed_base = 99;
  c.gradient = GradientMethod::kAdjoint;
  const OptimizerConfig back = optimizer_config_from_json(reparse(optimizer_config_to_json(c)));
  EXPECT_EQ(back.depth, 7);
  EXPECT_EQ(back.restarts, 3);
  EXPECT_EQ(back.seed_base, 99u);
  EXPECT_EQ(back.gradient, GradientMethod::kAdjoint);

  const OptimizerConfig partial = optimizer_config_from_json(Json{{"depth", 3}}, c);
  EXPECT_EQ(partial.depth, 3);
  EXPECT_EQ(partial.restarts, 3);
  EXPECT_THROW(optimizer_config_from_json(Json{{"gradient", "newton"}}), InputError);
}

TEST(Serialization, OptimizationResultRoundTrip) {
  OptimizationResult r;
  r.best_params = Params::LinSpaced(4, -1.0, 1.0);
  r.best_energy = -7.0;
  r.iterations = 12;
  r.restarts_used = 2;
  r.converged = true;
  r.seed = 5;
  r.energy_trace = {-1.0, -6.5, -7.0};
  const OptimizationResult back = optimization_result_from_json(reparse(optimization_result_to_json(r)));
  EXPECT_EQ(back.best_params, r.best_params);
  EXPECT_EQ(back.best_energy, r.best_energy);
  EXPECT_EQ(back.iterations, 12);
  EXPECT_EQ(back.restarts_used, 2);
  EXPECT_TRUE(back.converged);
  EXPECT_EQ(back.seed, 5u);
  EXPECT_EQ(back.energy_trace, r.energy_trace);
}

TEST(Serialization, FilesRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "deepvqe_serialization_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "x.json").string();
  write_json_file(path, Json{{"a", 1}});
  EXPECT_EQ(read_json_file(path).at("a").get<int>(), 1);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(read_json_file(path), InputError);
  EXPECT_THROW(read_json_file((dir / "missing.json").string()), InputError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace deepvqe
