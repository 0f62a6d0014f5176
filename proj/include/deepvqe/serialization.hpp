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

#include <string>

#include <json.hpp>

#include "deepvqe/effective.hpp"
#include "deepvqe/local_basis.hpp"
#include "deepvqe/oracle.hpp"
#include "deepvqe/vqe.hpp"

namespace deepvqe {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Complex matrices: {"rows", "cols", "re": [...], "im": [...]}, row-major.
Json matrix_to_json(const MatrixXc& m);
MatrixXc matrix_from_json(const Json& j);

// Complex vectors: {"re": [...], "im": [...]}.
Json vector_to_json(std::span<const cplx> v);
std::vector<cplx> vector_from_json(const Json& j);

// Observables as their text form, one term per array entry.
Json observable_to_json(const Observable& o);
Observable observable_from_json(const Json& j);

Json statevector_to_json(const Statevector& s);
Statevector statevector_from_json(const Json& j);

Json local_basis_to_json(const LocalBasis& b);
LocalBasis local_basis_from_json(const Json& j);

Json pair_tensor_to_json(const PairTensor& p);
PairTensor pair_tensor_from_json(const Json& j);

/// Site matrices, pair tensors and the shift; the encoded operator is rebuilt
/// on load rather than stored.
Json effective_problem_to_json(const EffectiveProblem& p);
EffectiveProblem effective_problem_from_json(const Json& j);

Json optimizer_config_to_json(const OptimizerConfig& c);
/// Missing fields keep the values of `defaults`.
OptimizerConfig optimizer_config_from_json(const Json& j, const OptimizerConfig& defaults = {});

Json optimization_result_to_json(const OptimizationResult& r);
OptimizationResult optimization_result_from_json(const Json& j);

/// Energy and degeneracy only; vectors are omitted.
Json spectrum_to_json(const SpectrumResult& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace deepvqe
