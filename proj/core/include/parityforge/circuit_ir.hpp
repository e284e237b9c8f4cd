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

#ifndef PARITYFORGE_CIRCUIT_IR_HPP
#define PARITYFORGE_CIRCUIT_IR_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "parityforge/errors.hpp"

namespace parityforge {

enum class GateKind {
  H,
  X,
  Z,
  S,
  RZ,
  RX,
  CNOT,
  CZ,
  CP,
  MeasureZ,
  MeasureX,
  Reset0,
  ResetPlus,
  CondX,
  CondZ,
};

const char* gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);
bool gate_is_two_qubit(GateKind kind);
bool gate_has_angle(GateKind kind);
bool gate_is_measurement(GateKind kind);
bool gate_is_reset(GateKind kind);
bool gate_is_conditional(GateKind kind);

struct Gate {
  Gate(GateKind kind_, int q0_, int q1_ = -1, double angle_ = 0.0)
      : kind(kind_), q0(q0_), q1(q1_), angle(angle_) {}

  GateKind kind;
  int q0;
  int q1;                              // two-qubit gates only
  double angle;                        // RZ/RX/CP only
  std::string outcome;                 // MEASURE_* destination name
  std::vector<std::string> condition;  // COND_*: XOR of named outcome bits
};

// Flat gate list over a fixed register. Classically controlled gates refer to
// named outcomes of earlier measurements; append() rejects dangling names so
// a circuit is always executable front to back.
class Circuit {
 public:
  explicit Circuit(int num_qubits, std::vector<std::string> qubit_names = {});

  int num_qubits() const { return num_qubits_; }
  const std::vector<std::string>& qubit_names() const { return qubit_names_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::pair<std::string, std::size_t>>& markers() const { return markers_; }
  const std::vector<std::string>& outcome_names() const { return outcome_order_; }
  int num_measurements() const { return static_cast<int>(outcome_order_.size()); }

  void append(Gate gate);

  // Convenience wrappers used by the compilers.
  void h(int q) { append({GateKind::H, q}); }
  void x(int q) { append({GateKind::X, q}); }
  void z(int q) { append({GateKind::Z, q}); }
  void s(int q) { append({GateKind::S, q}); }
  void rz(int q, double angle) { append({GateKind::RZ, q, -1, angle}); }
  void rx(int q, double angle) { append({GateKind::RX, q, -1, angle}); }
  void cnot(int c, int t) { append({GateKind::CNOT, c, t}); }
  void cz(int a, int b) { append({GateKind::CZ, a, b}); }
  void cp(int a, int b, double angle) { append({GateKind::CP, a, b, angle}); }
  void measure_z(int q, std::string name);
  void measure_x(int q, std::string name);
  void reset_0(int q) { append({GateKind::Reset0, q}); }
  void reset_plus(int q) { append({GateKind::ResetPlus, q}); }
  void cond_x(int q, std::vector<std::string> condition);
  void cond_z(int q, std::vector<std::string> condition);

  // Records a named position after the most recently appended gate;
  // simulators report the state there to verification hooks.
  void mark(const std::string& label);

  void append_circuit(const Circuit& other);  // same register, merges gates and markers

  // Merges `other` with its qubit i relocated to qubit_map[i]; the map must
  // be injective into this register.
  void append_circuit(const Circuit& other, const std::vector<int>& qubit_map);

 private:
  int num_qubits_;
  std::vector<std::string> qubit_names_;
  std::vector<Gate> gates_;
  std::vector<std::string> outcome_order_;
  std::set<std::string> outcome_names_;
  std::vector<std::pair<std::string, std::size_t>> markers_;
};

struct DepthReport {
  int measure = 0;
  int cnot = 0;  // CNOT-equivalent layers: CZ counts 1, CP counts 2
  int single = 0;

  bool operator==(const DepthReport&) const = default;
};

enum class LayerClass { Measure, TwoQubit, Single };

struct ScheduledLayer {
  LayerClass cls;
  std::vector<std::size_t> gates;  // indices into Circuit::gates()
  bool has_cp = false;
};

struct Schedule {
  std::vector<ScheduledLayer> layers;
  DepthReport report() const;
};

// Greedy phase layering: the gate list splits into maximal runs of one layer
// class (resets cost nothing and break nothing). Runs of mutually commuting
// two-qubit gates are layered by edge coloring, which reaches the max-degree
// bound for the bipartite control/ancilla patterns produced by constraint
// measurements; anything non-commuting falls back to order-preserving list
// scheduling.
Schedule schedule_layers(const Circuit& circuit);
DepthReport schedule_depth(const Circuit& circuit);

}  // namespace parityforge

#endif
