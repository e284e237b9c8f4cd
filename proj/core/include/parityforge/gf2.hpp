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

#ifndef PARITYFORGE_GF2_HPP
#define PARITYFORGE_GF2_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace parityforge {

// Vectors over GF(2) are stored as 64-bit masks, one bit per coordinate.
// This caps supported dimensions at 64, which is far beyond the sizes the
// simulators can handle anyway.
using Gf2Word = std::uint64_t;

inline int gf2_rank(std::vector<Gf2Word> rows) {
  int rank = 0;
  for (std::size_t col_owner = 0; col_owner < rows.size(); ++col_owner) {
    Gf2Word row = rows[col_owner];
    if (row == 0) continue;
    Gf2Word pivot = row & (~row + 1);  // lowest set bit
    ++rank;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != col_owner && (rows[j] & pivot)) rows[j] ^= row;
    }
    rows[col_owner] = 0;  // consumed
  }
  return rank;
}

inline bool gf2_in_span(const std::vector<Gf2Word>& rows, Gf2Word v) {
  std::vector<Gf2Word> basis;
  auto reduce = [&basis](Gf2Word w) {
    for (Gf2Word b : basis) {
      Gf2Word low = b & (~b + 1);
      if (w & low) w ^= b;
    }
    return w;
  };
  for (Gf2Word r : rows) {
    Gf2Word w = reduce(r);
    if (w) basis.push_back(w);
  }
  return reduce(v) == 0;
}

// Inverts an n x n matrix given as n row masks. Returns std::nullopt when
// the matrix is singular.
inline std::optional<std::vector<Gf2Word>> gf2_invert(std::vector<Gf2Word> rows, int n) {
  std::vector<Gf2Word> inv(rows.size());
  for (int i = 0; i < n; ++i) inv[i] = Gf2Word(1) << i;
  for (int col = 0; col < n; ++col) {
    Gf2Word pivot_bit = Gf2Word(1) << col;
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (rows[r] & pivot_bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(rows[pivot], rows[col]);
    std::swap(inv[pivot], inv[col]);
    for (int r = 0; r < n; ++r) {
      if (r != col && (rows[r] & pivot_bit)) {
        rows[r] ^= rows[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return inv;
}

inline int gf2_parity(Gf2Word w) { return std::popcount(w) & 1; }

}  // namespace parityforge

#endif
