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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "parityforge/algorithms.hpp"
#include "parityforge/code_model.hpp"
#include "parityforge/codec.hpp"
#include "parityforge/errors.hpp"
#include "parityforge/json_io.hpp"
#include "parityforge/simulate.hpp"

namespace {

using namespace parityforge;

bool same_gate(const Gate& a, const Gate& b) {
  return a.kind == b.kind && a.q0 == b.q0 && a.q1 == b.q1 && a.angle == b.angle &&
         a.outcome == b.outcome && a.condition == b.condition;
}

bool same_circuit(const Circuit& a, const Circuit& b) {
  if (a.num_qubits() != b.num_qubits()) return false;
  if (a.qubit_names() != b.qubit_names()) return false;
  if (a.markers() != b.markers()) return false;
  if (a.gates().size() != b.gates().size()) return false;
  for (std::size_t i = 0; i < a.gates().size(); ++i) {
    if (!same_gate(a.gates()[i], b.gates()[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parity codes round-trip through JSON") {
  for (int n : {2, 4, 6}) {
    ParityCode code = lhz_layout(n);
    Json j = code_to_json(code);
    ParityCode back = code_from_json(j);
    CHECK(back.n() == code.n());
    CHECK(back.qubits() == code.qubits());
    REQUIRE(back.constraints().size() == code.constraints().size());
    for (std::size_t i = 0; i < code.constraints().size(); ++i) {
      CHECK(back.constraints()[i].members == code.constraints()[i].members);
    }
    REQUIRE(back.placement().has_value());
    CHECK(*back.placement() == *code.placement());
    CHECK(back.ancilla_placement().has_value() == code.ancilla_placement().has_value());
    CHECK(code_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("codes without placement omit the key") {
  ParityCode code(2, {QubitLabel::single(0), QubitLabel::single(1), QubitLabel::pair(0, 1)},
                  {Constraint{{0, 1, 2}}});
  Json j = code_to_json(code);
  CHECK(!j.contains("placement"));
  CHECK(!j.contains("ancilla_placement"));
  ParityCode back = code_from_json(j);
  CHECK(!back.placement().has_value());
  CHECK(back.qubits() == code.qubits());
}

TEST_CASE("malformed code documents are rejected with the field name") {
  Json good = code_to_json(lhz_layout(3));

  Json missing_n = good;
  missing_n.erase("n");
  CHECK_THROWS_WITH_AS(code_from_json(missing_n), doctest::Contains("'n'"), Error);

  Json bad_qubits = good;
  bad_qubits["qubits"] = "oops";
  CHECK_THROWS_WITH_AS(code_from_json(bad_qubits), doctest::Contains("'qubits'"), Error);

  Json bad_label = good;
  bad_label["qubits"][0] = Json::array({0.5});
  CHECK_THROWS_WITH_AS(code_from_json(bad_label), doctest::Contains("label"), Error);

  Json bad_placement = good;
  bad_placement["placement"][2] = Json::array({1, 2, 3});
  CHECK_THROWS_WITH_AS(code_from_json(bad_placement), doctest::Contains("[x,y]"), Error);

  CHECK_THROWS_WITH_AS(code_from_json(Json::array()), doctest::Contains("object"), Error);
}

TEST_CASE("compiled circuits round-trip with markers, angles, and conditions") {
  MeasurementCompilation enc = compile_encode_measurement(full_encode_spec(3), "m");
  Circuit circuit = enc.circuit;
  circuit.mark("encoded:m");
  Json j = circuit_to_json(circuit);
  Circuit back = circuit_from_json(j);
  CHECK(same_circuit(circuit, back));
  CHECK(circuit_to_json(back).dump() == j.dump());

  // The QFT build exercises angles and named registers.
  Circuit qft = build_qft(4);
  Json jq = circuit_to_json(qft);
  CHECK(jq.contains("qubit_names"));
  Circuit qft_back = circuit_from_json(jq);
  CHECK(same_circuit(qft, qft_back));
  CHECK(circuit_to_json(qft_back).dump() == jq.dump());
}

TEST_CASE("leading and trailing markers survive the round trip") {
  Circuit circuit(2);
  circuit.mark("start");
  circuit.append(Gate(GateKind::H, 0));
  circuit.append(Gate(GateKind::CNOT, 0, 1));
  circuit.mark("end");
  Circuit back = circuit_from_json(circuit_to_json(circuit));
  CHECK(same_circuit(circuit, back));
}

TEST_CASE("malformed circuit documents are rejected") {
  Circuit circuit(2);
  circuit.append(Gate(GateKind::RZ, 0, -1, 0.25));
  Json good = circuit_to_json(circuit);

  Json bad_kind = good;
  bad_kind["gates"][0]["g"] = "swap";
  CHECK_THROWS_WITH_AS(circuit_from_json(bad_kind), doctest::Contains("swap"), Error);

  Json missing_angle = good;
  missing_angle["gates"][0].erase("angle");
  CHECK_THROWS_WITH_AS(circuit_from_json(missing_angle), doctest::Contains("'angle'"), Error);

  Json wrong_arity = good;
  wrong_arity["gates"][0]["q"] = Json::array({0, 1});
  CHECK_THROWS_WITH_AS(circuit_from_json(wrong_arity), doctest::Contains("qubit id"), Error);

  Json marker_past_end = good;
  marker_past_end["markers"] = Json::array({Json::array({"late", 5})});
  CHECK_THROWS_WITH_AS(circuit_from_json(marker_past_end), doctest::Contains("past the end"),
                       Error);

  // A conditional gate naming an unmeasured outcome fails circuit validation.
  Json dangling = good;
  dangling["gates"].push_back(
      Json{{"g", "cond_x"}, {"q", Json::array({1})}, {"cond", Json::array({"nope"})}});
  CHECK_THROWS_AS(circuit_from_json(dangling), Error);
}

TEST_CASE("depth reports serialize all three layer counts") {
  Circuit qft = build_qft(4);
  DepthReport depth = schedule_depth(qft);
  Json j = depth_to_json(depth);
  CHECK(j.at("measure").get<int>() == depth.measure);
  CHECK(j.at("cnot").get<int>() == depth.cnot);
  CHECK(j.at("single").get<int>() == depth.single);
}

TEST_CASE("correction plans round-trip") {
  MeasurementCompilation enc = compile_encode_measurement(full_encode_spec(4), "e");
  Json j = plan_to_json(enc.plan);
  CorrectionPlan back = plan_from_json(j);
  CHECK(back.rounds == enc.plan.rounds);
  REQUIRE(back.corrections.size() == enc.plan.corrections.size());
  for (std::size_t i = 0; i < back.corrections.size(); ++i) {
    CHECK(back.corrections[i].target == enc.plan.corrections[i].target);
    CHECK(back.corrections[i].op == enc.plan.corrections[i].op);
    CHECK(back.corrections[i].cond == enc.plan.corrections[i].cond);
  }
  CHECK(plan_to_json(back).dump() == j.dump());

  Json bad_op = j;
  REQUIRE(!bad_op["corrections"].empty());
  bad_op["corrections"][0]["op"] = "Y";
  CHECK_THROWS_WITH_AS(plan_from_json(bad_op), doctest::Contains("'op'"), Error);
}

TEST_CASE("problems round-trip and are validated on load") {
  ProblemHamiltonian problem{3, {{{0, 1}, 0.5}, {{1, 2}, -1.25}, {{0, 1, 2}, 2.0}}};
  Json j = problem_to_json(problem);
  ProblemHamiltonian back = problem_from_json(j);
  CHECK(back.n == problem.n);
  REQUIRE(back.terms.size() == problem.terms.size());
  for (std::size_t i = 0; i < back.terms.size(); ++i) {
    CHECK(back.terms[i].indices == problem.terms[i].indices);
    CHECK(back.terms[i].coupling == problem.terms[i].coupling);
  }

  Json out_of_range = j;
  out_of_range["terms"][0]["idx"] = Json::array({0, 7});
  CHECK_THROWS_WITH_AS(problem_from_json(out_of_range), doctest::Contains("out of range"), Error);

  Json bad_coupling = j;
  bad_coupling["terms"][0]["J"] = "strong";
  CHECK_THROWS_WITH_AS(problem_from_json(bad_coupling), doctest::Contains("'J'"), Error);
}

TEST_CASE("graphs round-trip") {
  GraphSpec graph{4, {{0, 1}, {1, 2}, {0, 3}}};
  Json j = graph_to_json(graph);
  GraphSpec back = graph_from_json(j);
  CHECK(back.n == graph.n);
  CHECK(back.edges == graph.edges);

  Json bad_edge = j;
  bad_edge["edges"][1] = Json::array({1});
  CHECK_THROWS_WITH_AS(graph_from_json(bad_edge), doctest::Contains("[u,v]"), Error);
}

TEST_CASE("outcome records serialize every field") {
  std::vector<OutcomeRecord> records{{"m0", 1, 0.5, false}, {"m1", 0, 1.0, true}};
  Json j = outcomes_to_json(records);
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("name") == "m0");
  CHECK(j[0].at("bit") == 1);
  CHECK(j[0].at("probability").get<double>() == 0.5);
  CHECK(j[0].at("deterministic") == false);
  CHECK(j[1].at("deterministic") == true);
}

TEST_CASE("state dumps drop amplitudes at or below the threshold") {
  Circuit circuit(2);
  circuit.append(Gate(GateKind::H, 0));
  circuit.append(Gate(GateKind::RZ, 1, -1, 1e-13));
  RunResult run = run_statevector(circuit, StateVector(2), OutcomePolicy::random(1));
  const StateVector& state = run.state;

  Json j = state_dump(state, {0, 1});
  REQUIRE(j.size() == 2);
  CHECK(j[0][0].get<int>() == 0);
  CHECK(j[0][1].get<double>() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(j[1][0].get<int>() == 1);

  // A generous threshold keeps only exact-unit amplitudes.
  Json coarse = state_dump(state, {0, 1}, 0.9);
  CHECK(coarse.empty());
}

TEST_CASE("validation reports serialize the verdict and diagnostics") {
  ParityCode code = lhz_layout(3);
  ValidationReport report = validate_code(code);
  Json j = validation_to_json(report);
  CHECK(j.at("valid") == true);
  CHECK(j.at("rank").get<int>() == report.rank);
  CHECK(j.at("fully_determined") == true);

  ParityCode broken(2, {QubitLabel::single(0), QubitLabel::single(1), QubitLabel::pair(0, 1)},
                    {Constraint{{0, 2}}});
  Json jb = validation_to_json(validate_code(broken));
  CHECK(jb.at("valid") == false);
  CHECK(jb.at("closure_failures").size() == 1);
}

TEST_CASE("identical values dump to byte-identical text") {
  ParityCode code = lhz_layout(5);
  CHECK(code_to_json(code).dump(2) == code_to_json(lhz_layout(5)).dump(2));
  Circuit qft = build_qft(5);
  CHECK(circuit_to_json(qft).dump() == circuit_to_json(build_qft(5)).dump());
}
