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

#ifndef PARITYFORGE_CODE_MODEL_HPP
#define PARITYFORGE_CODE_MODEL_HPP

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "parityforge/errors.hpp"
#include "parityforge/gf2.hpp"

namespace parityforge {

// Label of one physical qubit: the set of logical indices whose parity the
// qubit carries. A singleton label marks a data qubit; larger labels mark
// parity qubits. Labels double as physical-qubit identifiers: a parity code
// never holds two qubits with the same label.
class QubitLabel {
 public:
  QubitLabel() = default;
  explicit QubitLabel(std::vector<int> indices);
  static QubitLabel single(int i) { return QubitLabel({i}); }
  static QubitLabel pair(int i, int j) { return QubitLabel({i, j}); }

  const std::vector<int>& indices() const { return indices_; }
  std::size_t weight() const { return indices_.size(); }
  bool is_data() const { return indices_.size() == 1; }
  int max_index() const { return indices_.empty() ? -1 : indices_.back(); }
  bool contains(int i) const;

  // Bit-vector form over logical indices, used for all GF(2) arithmetic.
  Gf2Word mask() const;

  std::string str() const;  // "(0,1)"

  auto operator<=>(const QubitLabel&) const = default;

 private:
  std::vector<int> indices_;  // sorted, unique, non-empty once constructed
};

// A parity constraint: a set of physical qubits (by index into the owning
// code's qubit list) whose labels XOR to the empty set. Code states are +1
// eigenstates of the product of Z over the members.
struct Constraint {
  std::vector<int> members;  // sorted qubit indices, at least 2 entries
};

struct ValidationReport {
  std::vector<int> closure_failures;  // constraints whose labels do not cancel
  std::vector<int> undersized;        // constraints with fewer than 2 members
  int rank = 0;                       // GF(2) rank of the constraint set
  int label_rank = 0;                 // GF(2) rank of the qubit labels
  bool independent = false;           // rank == number of constraints
  bool fully_determined = false;      // rank == K - n
  bool local_constraints = true;      // every constraint fits a 2x2 cell (if placed)

  bool valid() const {
    return closure_failures.empty() && undersized.empty() && independent;
  }
};

// A choice of n qubits whose labels are GF(2)-independent. Measuring them in
// the Z basis determines every logical Z value: logical i is the XOR of the
// measured bits selected by row i of `transform`.
struct ReadoutBasis {
  std::vector<int> chosen;         // n qubit indices
  std::vector<Gf2Word> transform;  // n rows; bit j of row i selects chosen[j]
};

struct ReadoutCheck {
  std::optional<ReadoutBasis> basis;  // empty on rejection
  int rank = 0;                       // rank of the chosen labels
  int deficit = 0;                    // n - rank when rejected
};

class ParityCode {
 public:
  // Structural problems (bad labels, duplicate labels, out-of-range members)
  // throw. Semantic problems (closure failures, dependent constraints) are
  // deliberately representable so that validate_code can report them.
  ParityCode(int n, std::vector<QubitLabel> qubits, std::vector<Constraint> constraints,
             std::optional<std::vector<std::array<int, 2>>> placement = std::nullopt,
             std::optional<std::vector<std::array<int, 2>>> ancilla_placement = std::nullopt);

  int n() const { return n_; }
  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  const std::vector<QubitLabel>& qubits() const { return qubits_; }
  const QubitLabel& label(int q) const { return qubits_.at(q); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::optional<std::vector<std::array<int, 2>>>& placement() const { return placement_; }
  const std::optional<std::vector<std::array<int, 2>>>& ancilla_placement() const {
    return ancilla_placement_;
  }

  std::optional<int> find(const QubitLabel& label) const;
  int require(const QubitLabel& label) const;  // throws when absent

  std::vector<int> data_qubits() const;
  std::vector<int> parity_qubits() const;

  // XOR of member labels; the zero mask for well-formed constraints.
  Gf2Word constraint_residue(const Constraint& c) const;

 private:
  int n_ = 0;
  std::vector<QubitLabel> qubits_;
  std::vector<Constraint> constraints_;
  std::optional<std::vector<std::array<int, 2>>> placement_;
  std::optional<std::vector<std::array<int, 2>>> ancilla_placement_;
};

// Triangular all-to-all layout: data qubits (i), parity qubits (i,j), and the
// standard generator family of n-1 triangles plus plaquettes, each fitting a
// 2x2 cell of the placement grid. with_data=false drops the data-qubit row
// and the constraints touching it, yielding the original parity-only layout
// (one fewer logical degree of freedom than labels suggest; validate_code
// reports it as not fully determined for n logical qubits).
ParityCode lhz_layout(int n, bool with_data = true);

// Four logical qubits, all four three-body parity qubits, plus ancillary
// parity qubits (0,1) and (2,3) that keep every generator at weight <= 4.
ParityCode higher_order_fixture();

ValidationReport validate_code(const ParityCode& code);

// subset must contain exactly code.n() qubit indices.
ReadoutCheck is_valid_readout_basis(const ParityCode& code, const std::vector<int>& subset);

// All qubits whose label contains logical index i; flipping X on all of them
// realizes logical X_i.
std::vector<int> logical_x_support(const ParityCode& code, int logical);

// min_i |logical_x_support(i)|. Requires a fully determined code.
int code_distance(const ParityCode& code);

}  // namespace parityforge

#endif
