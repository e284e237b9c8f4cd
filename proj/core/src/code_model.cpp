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

#include "parityforge/code_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("code_model", what); }

// Rank of subsets of a K-element universe under symmetric difference.
// Constraint membership vectors can exceed 64 qubits, so this works on
// multi-word rows instead of the single-word helpers in gf2.hpp.
int rank_of_member_sets(const std::vector<std::vector<int>>& sets, int universe) {
  const int words = (universe + 63) / 64;
  std::vector<std::vector<Gf2Word>> rows;
  rows.reserve(sets.size());
  for (const auto& s : sets) {
    std::vector<Gf2Word> row(words, 0);
    for (int q : s) row[q / 64] ^= Gf2Word(1) << (q % 64);
    rows.push_back(std::move(row));
  }
  int rank = 0;
  std::vector<std::pair<int, int>> pivots;  // (word, bit) per basis row kept
  std::vector<std::vector<Gf2Word>> basis;
  for (auto& row : rows) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto [w, bit] = pivots[b];
      if (row[w] >> bit & 1) {
        for (int k = 0; k < words; ++k) row[k] ^= basis[b][k];
      }
    }
    int pw = -1, pb = -1;
    for (int k = 0; k < words && pw < 0; ++k) {
      if (row[k]) {
        pw = k;
        pb = std::countr_zero(row[k]);
      }
    }
    if (pw >= 0) {
      ++rank;
      pivots.emplace_back(pw, pb);
      basis.push_back(row);
    }
  }
  return rank;
}

}  // namespace

QubitLabel::QubitLabel(std::vector<int> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) fail("qubit label must contain at least one logical index");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) fail("qubit label contains a negative logical index");
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      fail("qubit label contains duplicate logical index " + std::to_string(indices_[i]));
    }
  }
}

bool QubitLabel::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

Gf2Word QubitLabel::mask() const {
  Gf2Word m = 0;
  for (int i : indices_) {
    if (i >= 64) fail("logical index " + std::to_string(i) + " exceeds the 64-index label limit");
    m |= Gf2Word(1) << i;
  }
  return m;
}

std::string QubitLabel::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out << ',';
    out << indices_[i];
  }
  out << ')';
  return out.str();
}

ParityCode::ParityCode(int n, std::vector<QubitLabel> qubits, std::vector<Constraint> constraints,
                       std::optional<std::vector<std::array<int, 2>>> placement,
                       std::optional<std::vector<std::array<int, 2>>> ancilla_placement)
    : n_(n),
      qubits_(std::move(qubits)),
      constraints_(std::move(constraints)),
      placement_(std::move(placement)),
      ancilla_placement_(std::move(ancilla_placement)) {
  if (n_ < 1) fail("logical qubit count must be positive");
  if (n_ > 64) fail("logical qubit count exceeds the 64-index label limit");
  std::set<QubitLabel> seen;
  for (const auto& q : qubits_) {
    if (q.max_index() >= n_) {
      fail("label " + q.str() + " references logical index >= n = " + std::to_string(n_));
    }
    if (!seen.insert(q).second) fail("duplicate physical qubit label " + q.str());
  }
  for (const auto& c : constraints_) {
    std::set<int> members;
    for (int m : c.members) {
      if (m < 0 || m >= num_qubits()) fail("constraint references qubit index out of range");
      if (!members.insert(m).second) fail("constraint lists the same qubit twice");
    }
  }
  if (placement_ && placement_->size() != qubits_.size()) {
    fail("placement size does not match qubit count");
  }
  if (ancilla_placement_ && ancilla_placement_->size() != constraints_.size()) {
    fail("ancilla placement size does not match constraint count");
  }
}

std::optional<int> ParityCode::find(const QubitLabel& label) const {
  for (std::size_t i = 0; i < qubits_.size(); ++i) {
    if (qubits_[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

int ParityCode::require(const QubitLabel& label) const {
  auto idx = find(label);
  if (!idx) fail("code has no qubit labelled " + label.str());
  return *idx;
}

std::vector<int> ParityCode::data_qubits() const {
  std::vector<int> out;
  for (int i = 0; i < num_qubits(); ++i) {
    if (qubits_[i].is_data()) out.push_back(i);
  }
  return out;
}

std::vector<int> ParityCode::parity_qubits() const {
  std::vector<int> out;
  for (int i = 0; i < num_qubits(); ++i) {
    if (!qubits_[i].is_data()) out.push_back(i);
  }
  return out;
}

Gf2Word ParityCode::constraint_residue(const Constraint& c) const {
  Gf2Word acc = 0;
  for (int m : c.members) acc ^= label(m).mask();
  return acc;
}

ParityCode lhz_layout(int n, bool with_data) {
  if (n < 2) fail("lhz_layout requires n >= 2");
  std::vector<QubitLabel> qubits;
  std::vector<std::array<int, 2>> placement;
  if (with_data) {
    for (int i = 0; i < n; ++i) {
      qubits.push_back(QubitLabel::single(i));
      placement.push_back({2 * i, 2 * i});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      qubits.push_back(QubitLabel::pair(i, j));
      placement.push_back({2 * i, 2 * j});
    }
  }
  auto index_of = [&qubits](const QubitLabel& l) {
    return static_cast<int>(std::find(qubits.begin(), qubits.end(), l) - qubits.begin());
  };

  std::vector<Constraint> constraints;
  std::vector<std::array<int, 2>> ancillas;
  if (with_data) {
    // Triangles (i),(i+1),(i,i+1) along the diagonal.
    for (int i = 0; i + 1 < n; ++i) {
      Constraint c;
      c.members = {index_of(QubitLabel::single(i)), index_of(QubitLabel::single(i + 1)),
                   index_of(QubitLabel::pair(i, i + 1))};
      std::sort(c.members.begin(), c.members.end());
      constraints.push_back(std::move(c));
      ancillas.push_back({2 * i + 1, 2 * i + 1});
    }
  }
  // Plaquettes below (i,j), ordered by diagonal row so the list reads in the
  // same order the iterative correction pass resolves them.
  for (int d = 2; d < n; ++d) {
    for (int i = 0; i + d < n; ++i) {
      const int j = i + d;
      Constraint c;
      c.members.push_back(index_of(QubitLabel::pair(i, j)));
      c.members.push_back(index_of(QubitLabel::pair(i, j - 1)));
      // The corner (i+1,j-1) of the bottom-row cell degenerates to the label
      // {i+1, i+1} = {} and drops out, leaving a three-body plaquette. No
      // four-body constraint can contain a data qubit: three pair labels and
      // a singleton have odd total size, so their symmetric difference is
      // never empty.
      if (i + 1 != j - 1) c.members.push_back(index_of(QubitLabel::pair(i + 1, j - 1)));
      c.members.push_back(index_of(QubitLabel::pair(i + 1, j)));
      std::sort(c.members.begin(), c.members.end());
      constraints.push_back(std::move(c));
      ancillas.push_back({2 * i + 1, 2 * j - 1});
    }
  }
  return ParityCode(n, std::move(qubits), std::move(constraints), std::move(placement),
                    std::move(ancillas));
}

ParityCode higher_order_fixture() {
  std::vector<QubitLabel> qubits;
  for (int i = 0; i < 4; ++i) qubits.push_back(QubitLabel::single(i));
  qubits.push_back(QubitLabel({0, 1}));
  qubits.push_back(QubitLabel({2, 3}));
  qubits.push_back(QubitLabel({0, 1, 2}));
  qubits.push_back(QubitLabel({0, 1, 3}));
  qubits.push_back(QubitLabel({0, 2, 3}));
  qubits.push_back(QubitLabel({1, 2, 3}));

  ParityCode shell(4, qubits, {});
  auto at = [&shell](std::vector<int> idx) { return shell.require(QubitLabel(std::move(idx))); };

  std::vector<Constraint> constraints;
  auto add = [&constraints](std::vector<int> members) {
    std::sort(members.begin(), members.end());
    constraints.push_back(Constraint{std::move(members)});
  };
  add({at({0}), at({1}), at({0, 1})});
  add({at({2}), at({3}), at({2, 3})});
  add({at({0, 1}), at({2}), at({0, 1, 2})});
  add({at({0, 1}), at({3}), at({0, 1, 3})});
  add({at({0}), at({2, 3}), at({0, 2, 3})});
  add({at({1}), at({2, 3}), at({1, 2, 3})});
  return ParityCode(4, std::move(qubits), std::move(constraints));
}

ValidationReport validate_code(const ParityCode& code) {
  ValidationReport report;
  std::vector<std::vector<int>> member_sets;
  for (std::size_t i = 0; i < code.constraints().size(); ++i) {
    const auto& c = code.constraints()[i];
    if (c.members.size() < 2) report.undersized.push_back(static_cast<int>(i));
    if (code.constraint_residue(c) != 0) report.closure_failures.push_back(static_cast<int>(i));
    member_sets.push_back(c.members);
  }
  report.rank = rank_of_member_sets(member_sets, code.num_qubits());
  report.independent = report.rank == static_cast<int>(code.constraints().size());

  std::vector<Gf2Word> labels;
  for (const auto& q : code.qubits()) labels.push_back(q.mask());
  report.label_rank = gf2_rank(labels);

  report.fully_determined = report.rank == code.num_qubits() - code.n();

  if (code.placement()) {
    const auto& pos = *code.placement();
    for (const auto& c : code.constraints()) {
      int min_x = INT32_MAX, max_x = INT32_MIN, min_y = INT32_MAX, max_y = INT32_MIN;
      for (int m : c.members) {
        min_x = std::min(min_x, pos[m][0]);
        max_x = std::max(max_x, pos[m][0]);
        min_y = std::min(min_y, pos[m][1]);
        max_y = std::max(max_y, pos[m][1]);
      }
      if (max_x - min_x > 2 || max_y - min_y > 2) report.local_constraints = false;
    }
  }
  return report;
}

ReadoutCheck is_valid_readout_basis(const ParityCode& code, const std::vector<int>& subset) {
  if (static_cast<int>(subset.size()) != code.n()) {
    fail("readout basis needs exactly n = " + std::to_string(code.n()) + " qubits, got " +
         std::to_string(subset.size()));
  }
  std::set<int> dedup(subset.begin(), subset.end());
  if (dedup.size() != subset.size()) fail("readout basis lists a qubit twice");

  std::vector<Gf2Word> rows;
  for (int q : subset) {
    if (q < 0 || q >= code.num_qubits()) fail("readout basis references qubit index out of range");
    rows.push_back(code.label(q).mask());
  }
  ReadoutCheck check;
  check.rank = gf2_rank(rows);
  check.deficit = code.n() - check.rank;
  auto inv = gf2_invert(rows, code.n());
  if (!inv) return check;  // singular: rejection with the rank deficit filled in
  check.basis = ReadoutBasis{subset, *inv};
  return check;
}

std::vector<int> logical_x_support(const ParityCode& code, int logical) {
  if (logical < 0 || logical >= code.n()) {
    fail("logical index " + std::to_string(logical) + " out of range");
  }
  std::vector<int> support;
  for (int q = 0; q < code.num_qubits(); ++q) {
    if (code.label(q).contains(logical)) support.push_back(q);
  }
  return support;
}

int code_distance(const ParityCode& code) {
  auto report = validate_code(code);
  if (!report.valid() || !report.fully_determined) {
    fail("code_distance requires a valid, fully determined code");
  }
  int dist = code.num_qubits();
  for (int i = 0; i < code.n(); ++i) {
    dist = std::min(dist, static_cast<int>(logical_x_support(code, i).size()));
  }
  return dist;
}

}  // namespace parityforge
