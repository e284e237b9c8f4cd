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

#include "parityforge/circuit_ir.hpp"

#include <algorithm>
#include <cmath>

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("circuit_ir", what); }

struct KindInfo {
  GateKind kind;
  const char* name;
  bool two_qubit;
  bool angle;
  bool measurement;
  bool reset;
  bool conditional;
};

constexpr KindInfo kKinds[] = {
    {GateKind::H, "H", false, false, false, false, false},
    {GateKind::X, "X", false, false, false, false, false},
    {GateKind::Z, "Z", false, false, false, false, false},
    {GateKind::S, "S", false, false, false, false, false},
    {GateKind::RZ, "RZ", false, true, false, false, false},
    {GateKind::RX, "RX", false, true, false, false, false},
    {GateKind::CNOT, "CNOT", true, false, false, false, false},
    {GateKind::CZ, "CZ", true, false, false, false, false},
    {GateKind::CP, "CP", true, true, false, false, false},
    {GateKind::MeasureZ, "MEASURE_Z", false, false, true, false, false},
    {GateKind::MeasureX, "MEASURE_X", false, false, true, false, false},
    {GateKind::Reset0, "RESET_0", false, false, false, true, false},
    {GateKind::ResetPlus, "RESET_PLUS", false, false, false, true, false},
    {GateKind::CondX, "COND_X", false, false, false, false, true},
    {GateKind::CondZ, "COND_Z", false, false, false, false, true},
};

const KindInfo& info(GateKind kind) { return kKinds[static_cast<int>(kind)]; }

}  // namespace

const char* gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  fail("unknown gate kind '" + name + "'");
}

bool gate_is_two_qubit(GateKind kind) { return info(kind).two_qubit; }
bool gate_has_angle(GateKind kind) { return info(kind).angle; }
bool gate_is_measurement(GateKind kind) { return info(kind).measurement; }
bool gate_is_reset(GateKind kind) { return info(kind).reset; }
bool gate_is_conditional(GateKind kind) { return info(kind).conditional; }

Circuit::Circuit(int num_qubits, std::vector<std::string> qubit_names)
    : num_qubits_(num_qubits), qubit_names_(std::move(qubit_names)) {
  if (num_qubits_ < 0) fail("negative qubit count");
  if (!qubit_names_.empty() && qubit_names_.size() != static_cast<std::size_t>(num_qubits_)) {
    fail("qubit name list does not match qubit count");
  }
}

void Circuit::append(Gate gate) {
  const auto& k = info(gate.kind);
  if (gate.q0 < 0 || gate.q0 >= num_qubits_) fail("gate operand out of range");
  if (k.two_qubit) {
    if (gate.q1 < 0 || gate.q1 >= num_qubits_) fail("gate operand out of range");
    if (gate.q0 == gate.q1) {
      fail(std::string(k.name) + " requires two distinct qubits");
    }
  } else if (gate.q1 != -1) {
    fail(std::string(k.name) + " takes a single qubit operand");
  }
  if (k.angle) {
    if (!std::isfinite(gate.angle)) fail("gate angle must be finite");
  } else if (gate.angle != 0.0) {
    fail(std::string(k.name) + " takes no angle");
  }
  if (k.measurement) {
    if (gate.outcome.empty()) fail("measurement needs an outcome name");
    if (!outcome_names_.insert(gate.outcome).second) {
      fail("outcome name '" + gate.outcome + "' already used");
    }
    outcome_order_.push_back(gate.outcome);
  } else if (!gate.outcome.empty()) {
    fail(std::string(k.name) + " takes no outcome name");
  }
  if (k.conditional) {
    if (gate.condition.empty()) fail("conditional gate needs a non-empty condition");
    for (const auto& name : gate.condition) {
      if (!outcome_names_.count(name)) {
        fail("condition references unmeasured outcome '" + name + "'");
      }
    }
  } else if (!gate.condition.empty()) {
    fail(std::string(k.name) + " takes no condition");
  }
  gates_.push_back(std::move(gate));
}

void Circuit::measure_z(int q, std::string name) {
  Gate g{GateKind::MeasureZ, q};
  g.outcome = std::move(name);
  append(std::move(g));
}

void Circuit::measure_x(int q, std::string name) {
  Gate g{GateKind::MeasureX, q};
  g.outcome = std::move(name);
  append(std::move(g));
}

void Circuit::cond_x(int q, std::vector<std::string> condition) {
  Gate g{GateKind::CondX, q};
  g.condition = std::move(condition);
  append(std::move(g));
}

void Circuit::cond_z(int q, std::vector<std::string> condition) {
  Gate g{GateKind::CondZ, q};
  g.condition = std::move(condition);
  append(std::move(g));
}

void Circuit::mark(const std::string& label) { markers_.emplace_back(label, gates_.size()); }

void Circuit::append_circuit(const Circuit& other) {
  if (other.num_qubits() != num_qubits_) fail("append_circuit requires matching registers");
  const std::size_t offset = gates_.size();
  for (const auto& g : other.gates()) append(g);
  for (const auto& [label, pos] : other.markers()) markers_.emplace_back(label, pos + offset);
}

void Circuit::append_circuit(const Circuit& other, const std::vector<int>& qubit_map) {
  if (static_cast<int>(qubit_map.size()) != other.num_qubits()) {
    fail("qubit map size must equal the appended circuit's register");
  }
  std::set<int> images;
  for (int q : qubit_map) {
    if (q < 0 || q >= num_qubits_) fail("qubit map leaves the register");
    if (!images.insert(q).second) fail("qubit map must be injective");
  }
  const std::size_t offset = gates_.size();
  for (Gate g : other.gates()) {
    g.q0 = qubit_map[g.q0];
    if (gate_is_two_qubit(g.kind)) g.q1 = qubit_map[g.q1];
    append(g);
  }
  for (const auto& [label, pos] : other.markers()) markers_.emplace_back(label, pos + offset);
}

namespace {

enum class RunClass { Measure, TwoQubit, Single, Free };

RunClass run_class(GateKind kind) {
  if (gate_is_measurement(kind)) return RunClass::Measure;
  if (gate_is_two_qubit(kind)) return RunClass::TwoQubit;
  if (gate_is_reset(kind)) return RunClass::Free;
  return RunClass::Single;
}

bool is_diagonal_two_qubit(GateKind kind) { return kind == GateKind::CZ || kind == GateKind::CP; }

// Syntactic commutation for two-qubit gates. CNOTs commute unless the target
// of one is the control of the other; diagonal gates always commute; a CNOT
// commutes with a diagonal gate unless its target is touched by it.
bool gates_commute(const Gate& a, const Gate& b) {
  const bool share = a.q0 == b.q0 || a.q0 == b.q1 || a.q1 == b.q0 || a.q1 == b.q1;
  if (!share) return true;
  const bool a_diag = is_diagonal_two_qubit(a.kind);
  const bool b_diag = is_diagonal_two_qubit(b.kind);
  if (a_diag && b_diag) return true;
  if (!a_diag && !b_diag) {
    return a.q1 != b.q0 && a.q0 != b.q1;  // CNOT pair: no target feeds a control
  }
  const Gate& cnot = a_diag ? b : a;
  const Gate& diag = a_diag ? a : b;
  return cnot.q1 != diag.q0 && cnot.q1 != diag.q1;
}

struct EdgeColoring {
  std::vector<int> color;  // per edge
  int num_colors = 0;
};

// Optimal (max-degree) edge coloring of a bipartite multigraph via
// alternating-chain recoloring.
class BipartiteColorer {
 public:
  BipartiteColorer(int num_vertices, int max_degree)
      : at_(num_vertices, std::vector<int>(max_degree, -1)) {}

  // u and v must lie on opposite sides of the bipartition.
  void add(int edge_id, int u, int v, std::vector<int>& color,
           const std::vector<std::pair<int, int>>& ends) {
    const int a = free_at(u);
    const int b = free_at(v);
    color[edge_id] = a;
    at_[u][a] = edge_id;
    if (a == b) {
      at_[v][a] = edge_id;
      return;
    }
    // Walk the a/b alternating chain from v, pushing each occupant into the
    // other color. The chain enters u's side only through edges that held
    // color a before the walk, and a started free at u, so it never reaches
    // u and every step keeps the coloring proper.
    int vertex = v;
    int edge = edge_id;
    int need = a;
    int spare = b;
    while (true) {
      const int displaced = at_[vertex][need];
      at_[vertex][need] = edge;
      if (displaced < 0) break;
      at_[vertex][spare] = displaced;
      color[displaced] = spare;
      const int far =
          ends[displaced].first == vertex ? ends[displaced].second : ends[displaced].first;
      at_[far][need] = -1;
      vertex = far;
      edge = displaced;
      std::swap(need, spare);
    }
  }

 private:
  int free_at(int v) const {
    for (std::size_t c = 0; c < at_[v].size(); ++c) {
      if (at_[v][c] < 0) return static_cast<int>(c);
    }
    fail("edge coloring ran out of colors");
  }

  std::vector<std::vector<int>> at_;
};

// Attempts a 2-coloring of the vertices touched by the run; returns empty on
// odd cycles.
std::vector<int> try_bipartition(int num_vertices, const std::vector<std::pair<int, int>>& ends) {
  std::vector<std::vector<int>> adj(num_vertices);
  for (const auto& [u, v] : ends) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> side(num_vertices, -1);
  for (const auto& [u, v] : ends) {
    (void)v;
    if (side[u] >= 0) continue;
    side[u] = 0;
    std::vector<int> stack{u};
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (int x : adj[w]) {
        if (side[x] < 0) {
          side[x] = side[w] ^ 1;
          stack.push_back(x);
        } else if (side[x] == side[w]) {
          return {};
        }
      }
    }
  }
  return side;
}

EdgeColoring color_commuting_run(const std::vector<Gate>& gates,
                                 const std::vector<std::size_t>& run, int num_qubits) {
  std::vector<std::pair<int, int>> ends;
  std::vector<int> degree(num_qubits, 0);
  for (auto gi : run) {
    ends.emplace_back(gates[gi].q0, gates[gi].q1);
    ++degree[gates[gi].q0];
    ++degree[gates[gi].q1];
  }
  const int max_degree = *std::max_element(degree.begin(), degree.end());
  EdgeColoring out;
  out.color.assign(run.size(), -1);

  auto side = try_bipartition(num_qubits, ends);
  if (!side.empty()) {
    BipartiteColorer colorer(num_qubits, max_degree);
    for (std::size_t e = 0; e < ends.size(); ++e) {
      auto [u, v] = ends[e];
      if (side[u] != 0) std::swap(u, v);
      colorer.add(static_cast<int>(e), u, v, out.color, ends);
    }
  } else {
    // Non-bipartite commuting run (for example CZ sets over odd cycles):
    // greedy first-fit coloring, at most 2*max_degree - 1 colors.
    std::vector<std::vector<bool>> used(num_qubits, std::vector<bool>(2 * max_degree, false));
    for (std::size_t e = 0; e < ends.size(); ++e) {
      auto [u, v] = ends[e];
      int c = 0;
      while (used[u][c] || used[v][c]) ++c;
      used[u][c] = used[v][c] = true;
      out.color[e] = c;
    }
  }
  out.num_colors = *std::max_element(out.color.begin(), out.color.end()) + 1;
  return out;
}

}  // namespace

Schedule schedule_layers(const Circuit& circuit) {
  Schedule schedule;
  const auto& gates = circuit.gates();

  std::vector<std::size_t> run;
  RunClass current = RunClass::Free;

  auto emit_list_scheduled = [&](LayerClass cls) {
    // Order-preserving greedy layering within the run.
    std::map<int, int> next_free;
    std::vector<ScheduledLayer> layers;
    for (auto gi : run) {
      const Gate& g = gates[gi];
      int layer = next_free.count(g.q0) ? next_free[g.q0] : 0;
      if (g.q1 >= 0 && next_free.count(g.q1)) layer = std::max(layer, next_free[g.q1]);
      while (static_cast<int>(layers.size()) <= layer) layers.push_back({cls, {}, false});
      layers[layer].gates.push_back(gi);
      if (g.kind == GateKind::CP) layers[layer].has_cp = true;
      next_free[g.q0] = layer + 1;
      if (g.q1 >= 0) next_free[g.q1] = layer + 1;
    }
    for (auto& l : layers) schedule.layers.push_back(std::move(l));
  };

  auto flush = [&] {
    if (run.empty()) return;
    if (current == RunClass::TwoQubit) {
      bool commuting = true;
      for (std::size_t i = 0; i < run.size() && commuting; ++i) {
        for (std::size_t j = i + 1; j < run.size() && commuting; ++j) {
          commuting = gates_commute(gates[run[i]], gates[run[j]]);
        }
      }
      if (commuting) {
        auto coloring = color_commuting_run(gates, run, circuit.num_qubits());
        std::vector<ScheduledLayer> layers(coloring.num_colors);
        for (std::size_t e = 0; e < run.size(); ++e) {
          auto& layer = layers[coloring.color[e]];
          layer.cls = LayerClass::TwoQubit;
          layer.gates.push_back(run[e]);
          if (gates[run[e]].kind == GateKind::CP) layer.has_cp = true;
        }
        for (auto& l : layers) schedule.layers.push_back(std::move(l));
      } else {
        emit_list_scheduled(LayerClass::TwoQubit);
      }
    } else if (current == RunClass::Measure) {
      emit_list_scheduled(LayerClass::Measure);
    } else {
      emit_list_scheduled(LayerClass::Single);
    }
    run.clear();
  };

  for (std::size_t i = 0; i < gates.size(); ++i) {
    RunClass cls = run_class(gates[i].kind);
    if (cls == RunClass::Free) continue;  // resets cost no depth and break no run
    if (cls != current) {
      flush();
      current = cls;
    }
    run.push_back(i);
  }
  flush();
  return schedule;
}

DepthReport Schedule::report() const {
  DepthReport r;
  for (const auto& layer : layers) {
    switch (layer.cls) {
      case LayerClass::Measure:
        ++r.measure;
        break;
      case LayerClass::TwoQubit:
        r.cnot += layer.has_cp ? 2 : 1;
        break;
      case LayerClass::Single:
        ++r.single;
        break;
    }
  }
  return r;
}

DepthReport schedule_depth(const Circuit& circuit) { return schedule_layers(circuit).report(); }

}  // namespace parityforge
