// Copyright 2026 The parityforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARITYFORGE_JSON_IO_HPP
#define PARITYFORGE_JSON_IO_HPP

#include <json.hpp>
#include <vector>

#include "parityforge/algorithms.hpp"
#include "parityforge/circuit_ir.hpp"
#include "parityforge/code_model.hpp"
#include "parityforge/codec.hpp"
#include "parityforge/simulate.hpp"

namespace parityforge {

using Json = nlohmann::json;

// All loaders raise Error("json_io", ...) naming the missing or ill-typed
// field; they never partially construct. Serializers and loaders round-trip
// losslessly. Keys are emitted in sorted order, so identical values dump to
// byte-identical text.

// {"n": int, "qubits": [[indices...]...], "constraints": [[qubit-refs...]...],
//  "placement": [[x,y]...] (optional), "ancilla_placement": likewise}
Json code_to_json(const ParityCode& code);
ParityCode code_from_json(const Json& j);

// {"num_qubits": int, "qubit_names": [... ] (optional),
//  "gates": [{"g": kind, "q": [ids], "angle"?, "out"?, "cond"?}...],
//  "markers": [[label, position]...] (optional)}
Json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& j);

// {"measure": m, "cnot": c, "single": s}
Json depth_to_json(const DepthReport& report);

// {"rounds": r, "corrections": [{"target": [indices], "op": "X"|"Z",
//  "cond": [outcome names]}...]}
Json plan_to_json(const CorrectionPlan& plan);
CorrectionPlan plan_from_json(const Json& j);

// {"n": int, "terms": [{"idx": [ints], "J": real}...]}
Json problem_to_json(const ProblemHamiltonian& problem);
ProblemHamiltonian problem_from_json(const Json& j);

// {"n": int, "edges": [[u,v]...]}
Json graph_to_json(const GraphSpec& graph);
GraphSpec graph_from_json(const Json& j);

// [{"name": ..., "bit": 0|1, "probability": p, "deterministic": bool}...]
Json outcomes_to_json(const std::vector<OutcomeRecord>& records);

// Amplitudes over `qubits` (qubit 0 of the list = least significant bit) as
// [[basis-index, re, im]...], restricted to entries above `threshold`.
Json state_dump(const StateVector& state, const std::vector<int>& qubits,
                double threshold = 1e-12);

Json validation_to_json(const ValidationReport& report);

}  // namespace parityforge

#endif
