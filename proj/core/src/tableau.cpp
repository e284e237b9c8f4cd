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

#include "parityforge/tableau.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "parityforge/errors.hpp"

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("tableau", what); }

// Exponent of i picked up when multiplying the single-qubit Pauli (x1,z1)
// into (x2,z2), in {-1,0,1}.
int phase_exponent(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return int(z2) - int(x2);            // Y * P
  if (x1) return z2 ? (x2 ? 1 : -1) : 0;             // X * P
  return x2 ? (z2 ? -1 : 1) : 0;                     // Z * P
}

}  // namespace

Tableau::Tableau(int num_qubits) : n_(num_qubits), words_((num_qubits + 63) / 64) {
  if (num_qubits <= 0) fail("register must hold at least one qubit");
  xs_.assign(row_count(), std::vector<std::uint64_t>(words_, 0));
  zs_.assign(row_count(), std::vector<std::uint64_t>(words_, 0));
  r_.assign(row_count(), 0);
  for (int i = 0; i < n_; ++i) {
    set_x(i, i, true);         // destabilizer X_i
    set_z(n_ + i, i, true);    // stabilizer Z_i
  }
}

void Tableau::set_x(int row, int q, bool v) {
  const std::uint64_t bit = std::uint64_t(1) << (q & 63);
  if (v) {
    xs_[row][q >> 6] |= bit;
  } else {
    xs_[row][q >> 6] &= ~bit;
  }
}

void Tableau::set_z(int row, int q, bool v) {
  const std::uint64_t bit = std::uint64_t(1) << (q & 63);
  if (v) {
    zs_[row][q >> 6] |= bit;
  } else {
    zs_[row][q >> 6] &= ~bit;
  }
}

void Tableau::clear_row(int row) {
  std::fill(xs_[row].begin(), xs_[row].end(), 0);
  std::fill(zs_[row].begin(), zs_[row].end(), 0);
  r_[row] = 0;
}

void Tableau::rowsum(int h, int i) {
  int phase = 2 * r_[h] + 2 * r_[i];
  for (int q = 0; q < n_; ++q) {
    phase += phase_exponent(x(i, q), z(i, q), x(h, q), z(h, q));
  }
  phase %= 4;
  if (phase < 0) phase += 4;
  r_[h] = phase == 2 ? 1 : 0;
  for (int w = 0; w < words_; ++w) {
    xs_[h][w] ^= xs_[i][w];
    zs_[h][w] ^= zs_[i][w];
  }
}

void Tableau::hadamard(int q) {
  for (int row = 0; row < 2 * n_; ++row) {
    const bool xv = x(row, q);
    const bool zv = z(row, q);
    r_[row] ^= xv && zv;
    set_x(row, q, zv);
    set_z(row, q, xv);
  }
}

void Tableau::phase_s(int q) {
  for (int row = 0; row < 2 * n_; ++row) {
    const bool xv = x(row, q);
    const bool zv = z(row, q);
    r_[row] ^= xv && zv;
    set_z(row, q, zv != xv);
  }
}

void Tableau::pauli_x(int q) {
  for (int row = 0; row < 2 * n_; ++row) r_[row] ^= z(row, q);
}

void Tableau::pauli_z(int q) {
  for (int row = 0; row < 2 * n_; ++row) r_[row] ^= x(row, q);
}

void Tableau::cnot(int c, int t) {
  for (int row = 0; row < 2 * n_; ++row) {
    const bool xc = x(row, c);
    const bool zc = z(row, c);
    const bool xt = x(row, t);
    const bool zt = z(row, t);
    r_[row] ^= xc && zt && (xt == zc);
    set_x(row, t, xt != xc);
    set_z(row, c, zc != zt);
  }
}

void Tableau::apply(const Gate& g) {
  const int q = g.q0;
  if (q < 0 || q >= n_ || (gate_is_two_qubit(g.kind) && (g.q1 < 0 || g.q1 >= n_))) {
    fail("gate operand out of range");
  }
  switch (g.kind) {
    case GateKind::H: hadamard(q); return;
    case GateKind::X: pauli_x(q); return;
    case GateKind::Z: pauli_z(q); return;
    case GateKind::S: phase_s(q); return;
    case GateKind::CNOT: cnot(q, g.q1); return;
    case GateKind::CZ:
      hadamard(g.q1);
      cnot(q, g.q1);
      hadamard(g.q1);
      return;
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::CP:
      fail(std::string("non-Clifford gate ") + gate_name(g.kind) +
           " is not representable in a stabilizer tableau");
    default:
      fail(std::string("apply() handles unitary gates only, got ") + gate_name(g.kind));
  }
}

int Tableau::measure_z_random_row(int q) const {
  for (int p = n_; p < 2 * n_; ++p) {
    if (x(p, q)) return p;
  }
  return -1;
}

std::optional<int> Tableau::peek_deterministic(int q, bool x_basis) {
  if (q < 0 || q >= n_) fail("qubit index out of range");
  if (x_basis) hadamard(q);
  std::optional<int> out;
  if (measure_z_random_row(q) < 0) {
    const int scratch = 2 * n_;
    clear_row(scratch);
    for (int i = 0; i < n_; ++i) {
      if (x(i, q)) rowsum(scratch, i + n_);
    }
    out = int(r_[scratch]);
  }
  if (x_basis) hadamard(q);
  return out;
}

void Tableau::project(int q, bool x_basis, int bit) {
  if (q < 0 || q >= n_) fail("qubit index out of range");
  if (bit != 0 && bit != 1) fail("outcome bit must be 0 or 1");
  if (x_basis) hadamard(q);
  const int p = measure_z_random_row(q);
  if (p < 0) {
    const int scratch = 2 * n_;
    clear_row(scratch);
    for (int i = 0; i < n_; ++i) {
      if (x(i, q)) rowsum(scratch, i + n_);
    }
    const int determined = int(r_[scratch]);
    if (x_basis) hadamard(q);
    if (determined != bit) fail("projection onto an outcome with probability 0");
    return;
  }
  for (int i = 0; i < 2 * n_; ++i) {
    if (i != p && x(i, q)) rowsum(i, p);
  }
  xs_[p - n_] = xs_[p];
  zs_[p - n_] = zs_[p];
  r_[p - n_] = r_[p];
  clear_row(p);
  set_z(p, q, true);
  r_[p] = static_cast<std::uint8_t>(bit);
  if (x_basis) hadamard(q);
}

int Tableau::pauli_expectation(const std::vector<int>& x_support,
                               const std::vector<int>& z_support) {
  std::vector<std::uint64_t> px(words_, 0), pz(words_, 0);
  for (int q : x_support) {
    if (q < 0 || q >= n_) fail("qubit index out of range");
    px[q >> 6] ^= std::uint64_t(1) << (q & 63);
  }
  for (int q : z_support) {
    if (q < 0 || q >= n_) fail("qubit index out of range");
    pz[q >> 6] ^= std::uint64_t(1) << (q & 63);
  }
  auto anticommutes = [&](int row) {
    std::uint64_t acc = 0;
    for (int w = 0; w < words_; ++w) {
      acc ^= (xs_[row][w] & pz[w]) ^ (zs_[row][w] & px[w]);
    }
    return (std::popcount(acc) & 1) != 0;
  };
  for (int p = n_; p < 2 * n_; ++p) {
    if (anticommutes(p)) return 0;
  }
  // The operator commutes with the whole group, so it equals a signed
  // product of stabilizers, selected by anticommutation with destabilizers.
  const int scratch = 2 * n_;
  clear_row(scratch);
  for (int i = 0; i < n_; ++i) {
    if (anticommutes(i)) rowsum(scratch, i + n_);
  }
  for (int w = 0; w < words_; ++w) {
    if (xs_[scratch][w] != px[w] || zs_[scratch][w] != pz[w]) {
      fail("expectation bookkeeping failed");
    }
  }
  return r_[scratch] ? -1 : 1;
}

Tableau::PauliRow Tableau::stabilizer(int i) const {
  if (i < 0 || i >= n_) fail("stabilizer index out of range");
  PauliRow row;
  for (int q = 0; q < n_; ++q) {
    if (x(n_ + i, q)) row.x_support.push_back(q);
    if (z(n_ + i, q)) row.z_support.push_back(q);
  }
  row.sign = r_[n_ + i] ? -1 : 1;
  return row;
}

Tableau::PauliRow Tableau::destabilizer(int i) const {
  if (i < 0 || i >= n_) fail("destabilizer index out of range");
  PauliRow row;
  for (int q = 0; q < n_; ++q) {
    if (x(i, q)) row.x_support.push_back(q);
    if (z(i, q)) row.z_support.push_back(q);
  }
  row.sign = r_[i] ? -1 : 1;
  return row;
}

TableauRunResult run_stabilizer(const Circuit& circuit, const OutcomePolicy& policy,
                                SimOptions opts, const TableauMarkerHook& hook) {
  Tableau t(circuit.num_qubits());
  OutcomeChooser cursor(policy, opts);
  std::vector<OutcomeRecord> records;
  std::map<std::string, int> bits;

  auto markers = circuit.markers();
  std::stable_sort(markers.begin(), markers.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  std::size_t mi = 0;

  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i <= gates.size(); ++i) {
    while (mi < markers.size() && markers[mi].second == i) {
      if (hook) hook(markers[mi].first, t);
      ++mi;
    }
    if (i == gates.size()) break;
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::MeasureZ:
      case GateKind::MeasureX: {
        const bool x = g.kind == GateKind::MeasureX;
        const auto det = t.peek_deterministic(g.q0, x);
        const double p1 = det ? (*det ? 1.0 : 0.0) : 0.5;
        const int bit = cursor.choose(g.outcome, p1);
        t.project(g.q0, x, bit);
        records.push_back(OutcomeRecord{g.outcome, bit, det ? 1.0 : 0.5, det.has_value()});
        bits[g.outcome] = bit;
        break;
      }
      case GateKind::Reset0:
      case GateKind::ResetPlus: {
        const auto det = t.peek_deterministic(g.q0, false);
        int bit;
        if (det) {
          bit = *det;
        } else {
          const std::string name = reset_choice_name(circuit, i);
          bit = cursor.choose(name, 0.5);
          t.project(g.q0, false, bit);
          records.push_back(OutcomeRecord{name, bit, 0.5, false});
        }
        if (bit) t.apply(Gate{GateKind::X, g.q0});
        if (g.kind == GateKind::ResetPlus) t.apply(Gate{GateKind::H, g.q0});
        break;
      }
      case GateKind::CondX:
      case GateKind::CondZ: {
        int parity = 0;
        for (const auto& name : g.condition) {
          auto it = bits.find(name);
          if (it == bits.end()) fail("conditional gate reads unmeasured outcome '" + name + "'");
          parity ^= it->second;
        }
        if (parity) {
          t.apply(Gate{g.kind == GateKind::CondX ? GateKind::X : GateKind::Z, g.q0});
        }
        break;
      }
      default:
        t.apply(g);
        break;
    }
  }
  return TableauRunResult{std::move(t), std::move(records)};
}

}  // namespace parityforge
