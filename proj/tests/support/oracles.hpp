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

// Test-side reference implementations. These deliberately use different
// algorithms and representations than the library so that agreement between
// the two is evidence, not tautology.

#ifndef PARITYFORGE_TESTS_SUPPORT_ORACLES_HPP
#define PARITYFORGE_TESTS_SUPPORT_ORACLES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "parityforge/code_model.hpp"

namespace parityforge::testing {

// GF(2) rank by textbook column-sweep Gaussian elimination on an explicit
// 0/1 matrix (the library reduces 64-bit row masks instead).
inline int oracle_rank(std::vector<std::vector<int>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != row && m[r][col]) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] ^= m[row][c];
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<int>> masks_to_matrix(const std::vector<Gf2Word>& rows, int width) {
  std::vector<std::vector<int>> m;
  for (Gf2Word r : rows) {
    std::vector<int> row(width, 0);
    for (int c = 0; c < width; ++c) row[c] = static_cast<int>(r >> c & 1);
    m.push_back(std::move(row));
  }
  return m;
}

// Constraint-membership matrix: one row per constraint, one column per qubit.
inline std::vector<std::vector<int>> membership_matrix(const ParityCode& code) {
  std::vector<std::vector<int>> m;
  for (const auto& c : code.constraints()) {
    std::vector<int> row(code.num_qubits(), 0);
    for (int q : c.members) row[q] = 1;
    m.push_back(std::move(row));
  }
  return m;
}

inline std::vector<std::vector<int>> label_matrix(const ParityCode& code) {
  std::vector<std::vector<int>> m;
  for (const auto& q : code.qubits()) {
    std::vector<int> row(code.n(), 0);
    for (int i : q.indices()) row[i] = 1;
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace parityforge::testing

#endif
