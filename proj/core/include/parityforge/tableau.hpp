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

#ifndef PARITYFORGE_TABLEAU_HPP
#define PARITYFORGE_TABLEAU_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "parityforge/simulate.hpp"

namespace parityforge {

// Stabilizer tableau over destabilizer/stabilizer generator rows with sign
// bits, supporting the Clifford subset of the gate set plus projective
// measurements. Rotations and controlled phases are rejected by name.
class Tableau {
 public:
  explicit Tableau(int num_qubits);

  int num_qubits() const { return n_; }

  // Clifford unitaries only: H, X, Z, S, CNOT, CZ.
  void apply(const Gate& gate);

  // Outcome of a Z- or X-basis measurement when it is determined by the
  // current stabilizer group, without disturbing the state. nullopt means
  // the outcome is uniformly random.
  std::optional<int> peek_deterministic(int q, bool x_basis);

  // Projects the state onto the requested measurement outcome. Both bits are
  // valid for a random outcome; a determined outcome must match or this
  // throws.
  void project(int q, bool x_basis, int bit);

  // Expectation of the Pauli product with X factors on x_support and Z
  // factors on z_support (Y where they overlap): +1, -1 or 0.
  int pauli_expectation(const std::vector<int>& x_support, const std::vector<int>& z_support);

  struct PauliRow {
    std::vector<int> x_support;
    std::vector<int> z_support;
    int sign = 1;
  };
  PauliRow stabilizer(int i) const;
  PauliRow destabilizer(int i) const;

 private:
  int row_count() const { return 2 * n_ + 1; }
  bool x(int row, int q) const { return xs_[row][q >> 6] >> (q & 63) & 1; }
  bool z(int row, int q) const { return zs_[row][q >> 6] >> (q & 63) & 1; }
  void set_x(int row, int q, bool v);
  void set_z(int row, int q, bool v);
  void rowsum(int h, int i);
  void clear_row(int row);
  void hadamard(int q);
  void phase_s(int q);
  void pauli_x(int q);
  void pauli_z(int q);
  void cnot(int c, int t);
  int measure_z_random_row(int q) const;  // stabilizer row index or -1

  int n_;
  int words_;
  std::vector<std::vector<std::uint64_t>> xs_;
  std::vector<std::vector<std::uint64_t>> zs_;
  std::vector<std::uint8_t> r_;
};

struct TableauRunResult {
  Tableau tableau;
  std::vector<OutcomeRecord> outcomes;
};

using TableauMarkerHook = std::function<void(const std::string&, Tableau&)>;

// Executes a Clifford circuit front to back under the same policy and
// record semantics as run_statevector. One caveat: the statevector engine
// resets without a record whenever the qubit is unentangled, while this
// engine records a hidden choice whenever the pre-reset outcome is random,
// so the two record streams match only when resets hit determined qubits.
TableauRunResult run_stabilizer(const Circuit& circuit, const OutcomePolicy& policy,
                                SimOptions opts = default_sim_options(),
                                const TableauMarkerHook& hook = nullptr);

}  // namespace parityforge

#endif
