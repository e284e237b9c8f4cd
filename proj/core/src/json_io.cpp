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

#include "parityforge/json_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "parityforge/errors.hpp"

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("json_io", message); }

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) fail(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(what) + " is missing field '" + key + "'");
  return *it;
}

int int_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number_integer()) fail(std::string(what) + " field '" + key + "' must be an integer");
  return v.get<int>();
}

double real_field(const Json& j, const char* key, const char* what) {
  const Json& v = field(j, key, what);
  if (!v.is_number()) fail(std::string(what) + " field '" + key + "' must be a number");
  return v.get<double>();
}

std::vector<int> int_list(const Json& v, const std::string& what) {
  if (!v.is_array()) fail(what + " must be an array of integers");
  std::vector<int> out;
  for (const Json& e : v) {
    if (!e.is_number_integer()) fail(what + " must be an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::optional<std::vector<std::array<int, 2>>> coords_field(const Json& j, const char* key,
                                                            const char* what) {
  if (!j.contains(key)) return std::nullopt;
  const Json& v = j.at(key);
  std::vector<std::array<int, 2>> out;
  if (!v.is_array()) fail(std::string(what) + " field '" + key + "' must be an array of pairs");
  for (const Json& e : v) {
    auto xy = int_list(e, std::string(what) + " field '" + key + "' entry");
    if (xy.size() != 2) fail(std::string(what) + " field '" + key + "' entry must be [x,y]");
    out.push_back({xy[0], xy[1]});
  }
  return out;
}

// Wire names are lowercase; gate_name() keeps the uppercase display names.
struct KindName {
  GateKind kind;
  const char* name;
};

constexpr std::array<KindName, 15> kKindNames{{
    {GateKind::H, "h"},
    {GateKind::X, "x"},
    {GateKind::Z, "z"},
    {GateKind::S, "s"},
    {GateKind::RZ, "rz"},
    {GateKind::RX, "rx"},
    {GateKind::CNOT, "cnot"},
    {GateKind::CZ, "cz"},
    {GateKind::CP, "cp"},
    {GateKind::MeasureZ, "measure_z"},
    {GateKind::MeasureX, "measure_x"},
    {GateKind::Reset0, "reset_0"},
    {GateKind::ResetPlus, "reset_plus"},
    {GateKind::CondX, "cond_x"},
    {GateKind::CondZ, "cond_z"},
}};

const char* kind_name(GateKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  fail("unknown gate kind");
}

GateKind kind_from_name(const std::string& name) {
  for (const auto& entry : kKindNames) {
    if (name == entry.name) return entry.kind;
  }
  fail("unknown gate kind '" + name + "'");
}

}  // namespace

Json code_to_json(const ParityCode& code) {
  Json j;
  j["n"] = code.n();
  Json qubits = Json::array();
  for (const QubitLabel& label : code.qubits()) qubits.push_back(label.indices());
  j["qubits"] = std::move(qubits);
  Json constraints = Json::array();
  for (const Constraint& c : code.constraints()) constraints.push_back(c.members);
  j["constraints"] = std::move(constraints);
  if (code.placement()) j["placement"] = *code.placement();
  if (code.ancilla_placement()) j["ancilla_placement"] = *code.ancilla_placement();
  return j;
}

ParityCode code_from_json(const Json& j) {
  int n = int_field(j, "n", "code");
  std::vector<QubitLabel> qubits;
  const Json& q = field(j, "qubits", "code");
  if (!q.is_array()) fail("code field 'qubits' must be an array of index lists");
  for (const Json& entry : q) qubits.push_back(QubitLabel(int_list(entry, "code qubit label")));
  std::vector<Constraint> constraints;
  const Json& c = field(j, "constraints", "code");
  if (!c.is_array()) fail("code field 'constraints' must be an array of member lists");
  for (const Json& entry : c) constraints.push_back({int_list(entry, "code constraint")});
  auto placement = coords_field(j, "placement", "code");
  auto ancilla_placement = coords_field(j, "ancilla_placement", "code");
  return ParityCode(n, std::move(qubits), std::move(constraints), std::move(placement),
                    std::move(ancilla_placement));
}

Json circuit_to_json(const Circuit& circuit) {
  Json j;
  j["num_qubits"] = circuit.num_qubits();
  bool named = false;
  for (const std::string& name : circuit.qubit_names()) {
    if (!name.empty()) named = true;
  }
  if (named) j["qubit_names"] = circuit.qubit_names();
  Json gates = Json::array();
  for (const Gate& gate : circuit.gates()) {
    Json g;
    g["g"] = kind_name(gate.kind);
    if (gate.q1 >= 0) {
      g["q"] = Json::array({gate.q0, gate.q1});
    } else {
      g["q"] = Json::array({gate.q0});
    }
    if (gate_has_angle(gate.kind)) g["angle"] = gate.angle;
    if (gate_is_measurement(gate.kind)) g["out"] = gate.outcome;
    if (gate_is_conditional(gate.kind)) g["cond"] = gate.condition;
    gates.push_back(std::move(g));
  }
  j["gates"] = std::move(gates);
  if (!circuit.markers().empty()) {
    Json markers = Json::array();
    for (const auto& [label, position] : circuit.markers()) {
      markers.push_back(Json::array({label, position}));
    }
    j["markers"] = std::move(markers);
  }
  return j;
}

Circuit circuit_from_json(const Json& j) {
  int num_qubits = int_field(j, "num_qubits", "circuit");
  std::vector<std::string> names;
  if (j.contains("qubit_names")) {
    const Json& v = j.at("qubit_names");
    if (!v.is_array()) fail("circuit field 'qubit_names' must be an array of strings");
    for (const Json& e : v) {
      if (!e.is_string()) fail("circuit field 'qubit_names' must be an array of strings");
      names.push_back(e.get<std::string>());
    }
  }
  Circuit circuit(num_qubits, std::move(names));

  std::vector<std::pair<std::string, std::size_t>> markers;
  if (j.contains("markers")) {
    const Json& v = j.at("markers");
    if (!v.is_array()) fail("circuit field 'markers' must be an array of [label, position]");
    for (const Json& e : v) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer()) {
        fail("circuit field 'markers' must be an array of [label, position]");
      }
      markers.emplace_back(e[0].get<std::string>(), e[1].get<std::size_t>());
    }
    std::stable_sort(markers.begin(), markers.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
  }

  const Json& gates = field(j, "gates", "circuit");
  if (!gates.is_array()) fail("circuit field 'gates' must be an array");
  std::size_t next_marker = 0;
  std::size_t appended = 0;
  auto flush_markers = [&]() {
    while (next_marker < markers.size() && markers[next_marker].second == appended) {
      circuit.mark(markers[next_marker].first);
      ++next_marker;
    }
  };
  flush_markers();
  for (const Json& g : gates) {
    if (!g.is_object()) fail("circuit gate entries must be objects");
    const Json& gname = field(g, "g", "gate");
    if (!gname.is_string()) fail("gate field 'g' must be a string");
    GateKind kind = kind_from_name(gname.get<std::string>());
    auto q = int_list(field(g, "q", "gate"), "gate field 'q'");
    const std::size_t expected = gate_is_two_qubit(kind) ? 2 : 1;
    if (q.size() != expected) {
      fail(std::string("gate '") + kind_name(kind) + "' needs " + std::to_string(expected) +
           " qubit id(s)");
    }
    Gate gate(kind, q[0], expected == 2 ? q[1] : -1, 0.0);
    if (gate_has_angle(kind)) gate.angle = real_field(g, "angle", "gate");
    if (gate_is_measurement(kind)) {
      const Json& out = field(g, "out", "gate");
      if (!out.is_string()) fail("gate field 'out' must be a string");
      gate.outcome = out.get<std::string>();
    }
    if (gate_is_conditional(kind)) {
      const Json& cond = field(g, "cond", "gate");
      if (!cond.is_array()) fail("gate field 'cond' must be an array of outcome names");
      for (const Json& e : cond) {
        if (!e.is_string()) fail("gate field 'cond' must be an array of outcome names");
        gate.condition.push_back(e.get<std::string>());
      }
    }
    circuit.append(std::move(gate));
    ++appended;
    flush_markers();
  }
  if (next_marker < markers.size()) {
    fail("circuit marker position " + std::to_string(markers[next_marker].second) +
         " is past the end of the gate list");
  }
  return circuit;
}

Json depth_to_json(const DepthReport& report) {
  return Json{{"measure", report.measure}, {"cnot", report.cnot}, {"single", report.single}};
}

Json plan_to_json(const CorrectionPlan& plan) {
  Json corrections = Json::array();
  for (const Correction& c : plan.corrections) {
    corrections.push_back(Json{{"target", c.target.indices()},
                               {"op", c.op == CorrectionOp::X ? "X" : "Z"},
                               {"cond", c.cond}});
  }
  return Json{{"rounds", plan.rounds}, {"corrections", std::move(corrections)}};
}

CorrectionPlan plan_from_json(const Json& j) {
  CorrectionPlan plan;
  plan.rounds = int_field(j, "rounds", "correction plan");
  const Json& corrections = field(j, "corrections", "correction plan");
  if (!corrections.is_array()) fail("correction plan field 'corrections' must be an array");
  for (const Json& c : corrections) {
    Correction correction;
    correction.target = QubitLabel(int_list(field(c, "target", "correction"), "correction target"));
    const Json& op = field(c, "op", "correction");
    if (!op.is_string() || (op != "X" && op != "Z")) {
      fail("correction field 'op' must be \"X\" or \"Z\"");
    }
    correction.op = op == "X" ? CorrectionOp::X : CorrectionOp::Z;
    const Json& cond = field(c, "cond", "correction");
    if (!cond.is_array()) fail("correction field 'cond' must be an array of outcome names");
    for (const Json& e : cond) {
      if (!e.is_string()) fail("correction field 'cond' must be an array of outcome names");
      correction.cond.push_back(e.get<std::string>());
    }
    plan.corrections.push_back(std::move(correction));
  }
  return plan;
}

Json problem_to_json(const ProblemHamiltonian& problem) {
  Json terms = Json::array();
  for (const ProblemTerm& term : problem.terms) {
    terms.push_back(Json{{"idx", term.indices}, {"J", term.coupling}});
  }
  return Json{{"n", problem.n}, {"terms", std::move(terms)}};
}

ProblemHamiltonian problem_from_json(const Json& j) {
  ProblemHamiltonian problem;
  problem.n = int_field(j, "n", "problem");
  const Json& terms = field(j, "terms", "problem");
  if (!terms.is_array()) fail("problem field 'terms' must be an array");
  for (const Json& t : terms) {
    ProblemTerm term;
    term.indices = int_list(field(t, "idx", "problem term"), "problem term field 'idx'");
    term.coupling = real_field(t, "J", "problem term");
    problem.terms.push_back(std::move(term));
  }
  validate_problem(problem);
  return problem;
}

Json graph_to_json(const GraphSpec& graph) {
  Json edges = Json::array();
  for (auto [u, v] : graph.edges) edges.push_back(Json::array({u, v}));
  return Json{{"n", graph.n}, {"edges", std::move(edges)}};
}

GraphSpec graph_from_json(const Json& j) {
  GraphSpec graph;
  graph.n = int_field(j, "n", "graph");
  const Json& edges = field(j, "edges", "graph");
  if (!edges.is_array()) fail("graph field 'edges' must be an array of [u,v]");
  for (const Json& e : edges) {
    auto uv = int_list(e, "graph edge");
    if (uv.size() != 2) fail("graph edge must be [u,v]");
    graph.edges.emplace_back(uv[0], uv[1]);
  }
  return graph;
}

Json outcomes_to_json(const std::vector<OutcomeRecord>& records) {
  Json j = Json::array();
  for (const OutcomeRecord& record : records) {
    j.push_back(Json{{"name", record.name},
                     {"bit", record.bit},
                     {"probability", record.probability},
                     {"deterministic", record.deterministic}});
  }
  return j;
}

Json state_dump(const StateVector& state, const std::vector<int>& qubits, double threshold) {
  Json j = Json::array();
  auto amps = state.reduced_dense(qubits);
  for (std::size_t b = 0; b < amps.size(); ++b) {
    if (std::abs(amps[b]) <= threshold) continue;
    j.push_back(Json::array({b, amps[b].real(), amps[b].imag()}));
  }
  return j;
}

Json validation_to_json(const ValidationReport& report) {
  return Json{{"valid", report.valid()},
              {"closure_failures", report.closure_failures},
              {"undersized", report.undersized},
              {"rank", report.rank},
              {"label_rank", report.label_rank},
              {"independent", report.independent},
              {"fully_determined", report.fully_determined},
              {"local_constraints", report.local_constraints}};
}

}  // namespace parityforge
