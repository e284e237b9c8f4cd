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

#include "parityforge/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("simulate", what); }

constexpr std::complex<double> kI{0.0, 1.0};

std::string qubit_display_name(const Circuit& c, int q) {
  if (!c.qubit_names().empty()) return c.qubit_names()[q];
  return "q" + std::to_string(q);
}

}  // namespace

std::string reset_choice_name(const Circuit& c, std::size_t gate_index) {
  return "reset(" + qubit_display_name(c, c.gates()[gate_index].q0) + ")@" +
         std::to_string(gate_index);
}

SimOptions default_sim_options() {
  SimOptions opts;
  if (const char* env = std::getenv("PARITY_FORGE_MAX_QUBITS")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= 28) opts.max_active_qubits = v;
  }
  return opts;
}

OutcomePolicy OutcomePolicy::random(std::uint64_t seed) {
  OutcomePolicy p;
  p.random_ = true;
  p.seed_ = seed;
  return p;
}

OutcomePolicy OutcomePolicy::forced(std::vector<int> bits) {
  OutcomePolicy p;
  p.random_ = false;
  p.bits_ = std::move(bits);
  return p;
}

OutcomePolicy OutcomePolicy::forced_named(std::map<std::string, int> bits) {
  OutcomePolicy p;
  p.random_ = false;
  p.named_mode_ = true;
  p.named_ = std::move(bits);
  return p;
}

StateVector::StateVector(int num_qubits, SimOptions opts)
    : opts_(opts), qubits_(num_qubits), slot_(num_qubits, -1), amps_{1.0} {
  if (num_qubits < 0) fail("negative register size");
}

StateVector::QubitStatus StateVector::status(int q) const {
  if (q < 0 || q >= num_qubits()) fail("qubit index out of range");
  return qubits_[q];
}

void StateVector::activate(int q) {
  if (slot_[q] >= 0) return;
  if (num_active() >= opts_.max_active_qubits) {
    fail("active-qubit limit " + std::to_string(opts_.max_active_qubits) +
         " exceeded activating qubit " + std::to_string(q));
  }
  const std::size_t old_size = amps_.size();
  amps_.resize(old_size * 2, 0.0);
  const auto& st = qubits_[q];
  if (!st.x_basis) {
    if (st.bit == 1) {
      for (std::size_t idx = 0; idx < old_size; ++idx) {
        amps_[idx | old_size] = amps_[idx];
        amps_[idx] = 0.0;
      }
    }
  } else {
    const double s = 1.0 / std::sqrt(2.0);
    const double sign = st.bit == 1 ? -1.0 : 1.0;
    for (std::size_t idx = 0; idx < old_size; ++idx) {
      amps_[idx | old_size] = sign * s * amps_[idx];
      amps_[idx] *= s;
    }
  }
  qubits_[q].active = true;
  slot_[q] = static_cast<int>(active_.size());
  active_.push_back(q);
}

void StateVector::deactivate(int q, int bit, double norm) {
  const int s = slot_[q];
  const std::size_t mask = std::size_t(1) << s;
  const std::size_t half = amps_.size() / 2;
  std::vector<std::complex<double>> next(half);
  const std::size_t low_mask = mask - 1;
  for (std::size_t idx = 0; idx < half; ++idx) {
    const std::size_t low = idx & low_mask;
    const std::size_t high = (idx >> s) << (s + 1);
    next[idx] = amps_[high | (bit ? mask : 0) | low] / norm;
  }
  amps_ = std::move(next);
  active_.erase(active_.begin() + s);
  for (std::size_t j = s; j < active_.size(); ++j) slot_[active_[j]] = static_cast<int>(j);
  slot_[q] = -1;
  qubits_[q] = QubitStatus{false, false, bit};
}

void StateVector::scale(std::complex<double> factor) {
  for (auto& a : amps_) a *= factor;
}

void StateVector::apply_single(int q, const std::complex<double> u[2][2]) {
  activate(q);
  const std::size_t mask = std::size_t(1) << slot_[q];
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    if (idx & mask) continue;
    const auto a0 = amps_[idx];
    const auto a1 = amps_[idx | mask];
    amps_[idx] = u[0][0] * a0 + u[0][1] * a1;
    amps_[idx | mask] = u[1][0] * a0 + u[1][1] * a1;
  }
}

void StateVector::phase_gate(int q, double angle) {
  const auto phase = std::exp(kI * angle);
  if (slot_[q] < 0 && !qubits_[q].x_basis) {
    if (qubits_[q].bit == 1) scale(phase);
    return;
  }
  activate(q);
  const std::size_t mask = std::size_t(1) << slot_[q];
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    if (idx & mask) amps_[idx] *= phase;
  }
}

void StateVector::apply(const Gate& g) {
  const int q = g.q0;
  if (q < 0 || q >= num_qubits() || (gate_is_two_qubit(g.kind) && (g.q1 < 0 || g.q1 >= num_qubits()))) {
    fail("gate operand out of range");
  }
  const bool active = slot_[q] >= 0;
  auto& st = qubits_[q];
  switch (g.kind) {
    case GateKind::H: {
      if (!active) {
        st.x_basis = !st.x_basis;  // H exchanges the Z and X eigenbases
        return;
      }
      const double s = 1.0 / std::sqrt(2.0);
      const std::complex<double> u[2][2] = {{s, s}, {s, -s}};
      apply_single(q, u);
      return;
    }
    case GateKind::X: {
      if (!active) {
        if (st.x_basis) {
          if (st.bit == 1) scale(-1.0);  // X|-> = -|->
        } else {
          st.bit ^= 1;
        }
        return;
      }
      const std::complex<double> u[2][2] = {{0.0, 1.0}, {1.0, 0.0}};
      apply_single(q, u);
      return;
    }
    case GateKind::Z: {
      if (!active) {
        if (st.x_basis) {
          st.bit ^= 1;  // Z|+> = |->
        } else if (st.bit == 1) {
          scale(-1.0);
        }
        return;
      }
      const std::complex<double> u[2][2] = {{1.0, 0.0}, {0.0, -1.0}};
      apply_single(q, u);
      return;
    }
    case GateKind::S: {
      if (!active && !st.x_basis) {
        if (st.bit == 1) scale(kI);
        return;
      }
      const std::complex<double> u[2][2] = {{1.0, 0.0}, {0.0, kI}};
      apply_single(q, u);
      return;
    }
    case GateKind::RZ: {
      if (!active && !st.x_basis) {
        scale(std::exp(kI * (st.bit == 1 ? 0.5 : -0.5) * g.angle));
        return;
      }
      const std::complex<double> u[2][2] = {{std::exp(-kI * g.angle / 2.0), 0.0},
                                            {0.0, std::exp(kI * g.angle / 2.0)}};
      apply_single(q, u);
      return;
    }
    case GateKind::RX: {
      if (!active && st.x_basis) {
        scale(std::exp(kI * (st.bit == 1 ? 0.5 : -0.5) * g.angle));
        return;
      }
      const std::complex<double> c = std::cos(g.angle / 2.0);
      const std::complex<double> s = -kI * std::sin(g.angle / 2.0);
      const std::complex<double> u[2][2] = {{c, s}, {s, c}};
      apply_single(q, u);
      return;
    }
    case GateKind::CNOT: {
      const int t = g.q1;
      if (slot_[q] < 0 && !qubits_[q].x_basis) {
        if (qubits_[q].bit == 1) apply(Gate{GateKind::X, t});
        return;
      }
      if (slot_[t] < 0 && qubits_[t].x_basis) {
        if (qubits_[t].bit == 1) apply(Gate{GateKind::Z, q});  // phase kickback onto the control
        return;
      }
      activate(q);
      activate(t);
      const std::size_t cm = std::size_t(1) << slot_[q];
      const std::size_t tm = std::size_t(1) << slot_[t];
      for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        if ((idx & cm) && !(idx & tm)) std::swap(amps_[idx], amps_[idx | tm]);
      }
      return;
    }
    case GateKind::CZ: {
      const int b = g.q1;
      if (slot_[q] < 0 && !qubits_[q].x_basis) {
        if (qubits_[q].bit == 1) apply(Gate{GateKind::Z, b});
        return;
      }
      if (slot_[b] < 0 && !qubits_[b].x_basis) {
        if (qubits_[b].bit == 1) apply(Gate{GateKind::Z, q});
        return;
      }
      activate(q);
      activate(b);
      const std::size_t am = std::size_t(1) << slot_[q];
      const std::size_t bm = std::size_t(1) << slot_[b];
      for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        if ((idx & am) && (idx & bm)) amps_[idx] *= -1.0;
      }
      return;
    }
    case GateKind::CP: {
      const int b = g.q1;
      if (slot_[q] < 0 && !qubits_[q].x_basis) {
        if (qubits_[q].bit == 1) phase_gate(b, g.angle);
        return;
      }
      if (slot_[b] < 0 && !qubits_[b].x_basis) {
        if (qubits_[b].bit == 1) phase_gate(q, g.angle);
        return;
      }
      activate(q);
      activate(b);
      const auto phase = std::exp(kI * g.angle);
      const std::size_t am = std::size_t(1) << slot_[q];
      const std::size_t bm = std::size_t(1) << slot_[b];
      for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        if ((idx & am) && (idx & bm)) amps_[idx] *= phase;
      }
      return;
    }
    default:
      fail(std::string("apply() handles unitary gates only, got ") + gate_name(g.kind));
  }
}

std::pair<double, double> StateVector::measure_probabilities(int q, bool x_basis) const {
  if (q < 0 || q >= num_qubits()) fail("qubit index out of range");
  if (slot_[q] < 0) {
    const auto& st = qubits_[q];
    if (st.x_basis == x_basis) return st.bit == 0 ? std::pair{1.0, 0.0} : std::pair{0.0, 1.0};
    return {0.5, 0.5};
  }
  const std::size_t mask = std::size_t(1) << slot_[q];
  double p0 = 0.0, p1 = 0.0;
  if (!x_basis) {
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      ((idx & mask) ? p1 : p0) += std::norm(amps_[idx]);
    }
  } else {
    const double half = 0.5;
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      if (idx & mask) continue;
      p0 += half * std::norm(amps_[idx] + amps_[idx | mask]);
      p1 += half * std::norm(amps_[idx] - amps_[idx | mask]);
    }
  }
  return {p0, p1};
}

double StateVector::collapse(int q, bool x_basis, int bit) {
  if (q < 0 || q >= num_qubits()) fail("qubit index out of range");
  if (bit != 0 && bit != 1) fail("outcome bit must be 0 or 1");
  if (slot_[q] < 0) {
    auto& st = qubits_[q];
    if (st.x_basis == x_basis) {
      if (st.bit != bit) fail("collapse onto an outcome with probability 0");
      return 1.0;
    }
    st.x_basis = x_basis;
    st.bit = bit;
    return 0.5;
  }
  if (x_basis) {
    const double s = 1.0 / std::sqrt(2.0);
    const std::complex<double> u[2][2] = {{s, s}, {s, -s}};
    apply_single(q, u);
  }
  const std::size_t mask = std::size_t(1) << slot_[q];
  double p = 0.0;
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    if (((idx & mask) != 0) == (bit == 1)) p += std::norm(amps_[idx]);
  }
  if (p < opts_.prune_threshold) {
    fail("collapse onto an outcome with probability ~0 (qubit " + std::to_string(q) + ")");
  }
  deactivate(q, bit, std::sqrt(p));
  if (x_basis) qubits_[q].x_basis = true;  // post-measurement state is |+> or |->
  return p;
}

bool StateVector::try_reset(int q, bool plus) {
  if (q < 0 || q >= num_qubits()) fail("qubit index out of range");
  if (slot_[q] >= 0) {
    const std::size_t mask = std::size_t(1) << slot_[q];
    double n0 = 0.0, n1 = 0.0;
    std::complex<double> inner = 0.0;
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      if (idx & mask) continue;
      n0 += std::norm(amps_[idx]);
      n1 += std::norm(amps_[idx | mask]);
      inner += std::conj(amps_[idx]) * amps_[idx | mask];
    }
    if (n1 < opts_.prune_threshold) {
      deactivate(q, 0, std::sqrt(n0));
    } else if (n0 < opts_.prune_threshold) {
      deactivate(q, 1, std::sqrt(n1));
    } else if (std::norm(inner) >= n0 * n1 * (1.0 - opts_.tolerance)) {
      // Cauchy-Schwarz equality: the two slices are parallel, so the qubit
      // carries no entanglement and drops out deterministically.
      deactivate(q, 0, std::sqrt(n0));
    } else {
      return false;
    }
  }
  qubits_[q] = QubitStatus{false, plus, 0};
  return true;
}

std::vector<std::complex<double>> StateVector::reduced_dense(const std::vector<int>& qubits) const {
  if (qubits.size() > 26) fail("reduced_dense request too wide");
  std::set<int> in_request;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits()) fail("qubit index out of range");
    if (!in_request.insert(q).second) fail("reduced_dense lists a qubit twice");
  }
  for (int q : active_) {
    if (!in_request.count(q)) {
      fail("reduced_dense must include every active qubit (missing " + std::to_string(q) + ")");
    }
  }
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<std::complex<double>> out(std::size_t(1) << qubits.size(), 0.0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::complex<double> factor = 1.0;
    std::size_t a_idx = 0;
    bool zero = false;
    for (std::size_t j = 0; j < qubits.size() && !zero; ++j) {
      const int q = qubits[j];
      const int b = static_cast<int>(r >> j & 1);
      if (slot_[q] >= 0) {
        a_idx |= std::size_t(b) << slot_[q];
      } else if (!qubits_[q].x_basis) {
        if (b != qubits_[q].bit) zero = true;
      } else {
        factor *= (b == 1 && qubits_[q].bit == 1) ? -s : s;
      }
    }
    if (!zero) out[r] = factor * amps_[a_idx];
  }
  return out;
}

double StateVector::pauli_z_expectation(const std::vector<int>& qubits) const {
  std::set<int> odd;  // qubits with an odd Z count; Z*Z = identity
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits()) fail("qubit index out of range");
    if (!odd.insert(q).second) odd.erase(q);
  }
  double sign = 1.0;
  std::size_t mask = 0;
  for (int q : odd) {
    if (slot_[q] >= 0) {
      mask |= std::size_t(1) << slot_[q];
    } else if (qubits_[q].x_basis) {
      return 0.0;  // <+-|Z|+-> = 0 and the qubit is unentangled
    } else if (qubits_[q].bit == 1) {
      sign = -sign;
    }
  }
  if (mask == 0) return sign;
  double acc = 0.0;
  for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
    const double p = std::norm(amps_[idx]);
    acc += (std::popcount(idx & mask) & 1) ? -p : p;
  }
  return sign * acc;
}

bool same_state_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.num_qubits() != b.num_qubits()) return false;
  std::vector<int> joint;
  for (int q = 0; q < a.num_qubits(); ++q) {
    const auto sa = a.status(q);
    const auto sb = b.status(q);
    const bool same_inactive =
        !sa.active && !sb.active && sa.x_basis == sb.x_basis && sa.bit == sb.bit;
    if (!same_inactive) joint.push_back(q);
  }
  if (joint.size() > 26) throw Error("simulate", "state comparison support too wide");
  const auto da = a.reduced_dense(joint);
  const auto db = b.reduced_dense(joint);
  std::complex<double> inner = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) inner += std::conj(da[i]) * db[i];
  return std::abs(inner) >= 1.0 - tol;
}

OutcomeChooser::OutcomeChooser(const OutcomePolicy& policy, const SimOptions& opts)
    : policy_(policy), opts_(opts), rng_(policy.seed()) {}

int OutcomeChooser::choose(const std::string& name, double p1) {
  p1 = std::clamp(p1, 0.0, 1.0);
  const bool deterministic = p1 <= opts_.prune_threshold || p1 >= 1.0 - opts_.prune_threshold;
  std::optional<int> requested;
  if (!policy_.is_random()) {
    if (auto it = policy_.named().find(name); it != policy_.named().end()) {
      requested = it->second;
    } else if (next_ < policy_.bits().size()) {
      requested = policy_.bits()[next_++];
    } else if (!policy_.is_named()) {
      fail("forced policy ran out of bits at outcome '" + name + "'");
    } else if (!deterministic) {
      fail("forced policy has no bit for outcome '" + name + "'");
    }
  }
  if (deterministic) {
    const int bit = p1 >= 0.5 ? 1 : 0;
    if (requested && *requested != bit) {
      fail("forced outcome '" + name + "' has probability ~0");
    }
    return bit;
  }
  if (requested) return *requested;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p1 ? 1 : 0;
}

namespace {

std::vector<std::pair<std::string, std::size_t>> sorted_markers(const Circuit& c) {
  auto markers = c.markers();
  std::stable_sort(markers.begin(), markers.end(),
                   [](const auto& x, const auto& y) { return x.second < y.second; });
  return markers;
}

OutcomeRecord make_record(const std::string& name, int bit, double p_bit, double tol) {
  return OutcomeRecord{name, bit, p_bit, p_bit >= 1.0 - tol};
}

}  // namespace

RunResult run_statevector(const Circuit& circuit, StateVector state, const OutcomePolicy& policy,
                          const MarkerHook& hook) {
  if (circuit.num_qubits() != state.num_qubits()) {
    fail("circuit and state register sizes differ");
  }
  const auto& gates = circuit.gates();
  const auto markers = sorted_markers(circuit);
  const double tol = state.options().tolerance;
  OutcomeChooser cursor(policy, state.options());
  std::vector<OutcomeRecord> records;
  std::map<std::string, int> bits;
  std::size_t mi = 0;

  for (std::size_t i = 0; i <= gates.size(); ++i) {
    while (mi < markers.size() && markers[mi].second == i) {
      if (hook) hook(markers[mi].first, state);
      ++mi;
    }
    if (i == gates.size()) break;
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::MeasureZ:
      case GateKind::MeasureX: {
        const bool x = g.kind == GateKind::MeasureX;
        const auto [p0, p1] = state.measure_probabilities(g.q0, x);
        const int bit = cursor.choose(g.outcome, p1);
        const double p = state.collapse(g.q0, x, bit);
        (void)p0;
        records.push_back(make_record(g.outcome, bit, p, tol));
        bits[g.outcome] = bit;
        break;
      }
      case GateKind::Reset0:
      case GateKind::ResetPlus: {
        const bool plus = g.kind == GateKind::ResetPlus;
        if (!state.try_reset(g.q0, plus)) {
          const std::string name = reset_choice_name(circuit, i);
          const auto [p0, p1] = state.measure_probabilities(g.q0, false);
          (void)p0;
          const int bit = cursor.choose(name, p1);
          const double p = state.collapse(g.q0, false, bit);
          records.push_back(make_record(name, bit, p, tol));
          state.try_reset(g.q0, plus);
        }
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
          state.apply(Gate{g.kind == GateKind::CondX ? GateKind::X : GateKind::Z, g.q0});
        }
        break;
      }
      default:
        state.apply(g);
        break;
    }
  }
  return RunResult{std::move(state), std::move(records)};
}

namespace {

void enumerate_impl(const Circuit& circuit,
                    const std::vector<std::pair<std::string, std::size_t>>& markers,
                    StateVector state, std::vector<OutcomeRecord> records,
                    std::map<std::string, int> bits, double prob, std::size_t gi, std::size_t mi,
                    const MarkerHook& hook, std::vector<Branch>& out) {
  const auto& gates = circuit.gates();
  const double tol = state.options().tolerance;
  const double prune = state.options().prune_threshold;

  for (; gi <= gates.size(); ++gi) {
    while (mi < markers.size() && markers[mi].second == gi) {
      if (hook) hook(markers[mi].first, state);
      ++mi;
    }
    if (gi == gates.size()) break;
    const Gate& g = gates[gi];

    // Resolves one binary choice, forking when both outcomes are possible.
    auto resolve = [&](const std::string& name, bool x_basis, bool reset_after,
                       bool plus) -> bool {
      const auto [p0, p1] = state.measure_probabilities(g.q0, x_basis);
      const bool can0 = p0 > prune;
      const bool can1 = p1 > prune;
      if (can0 && can1) {
        for (int bit = 0; bit < 2; ++bit) {
          StateVector forked = state;
          const double p = forked.collapse(g.q0, x_basis, bit);
          if (reset_after) forked.try_reset(g.q0, plus);
          auto forked_records = records;
          forked_records.push_back(make_record(name, bit, p, tol));
          auto forked_bits = bits;
          forked_bits[name] = bit;
          enumerate_impl(circuit, markers, std::move(forked), std::move(forked_records),
                         std::move(forked_bits), prob * p, gi + 1, mi, hook, out);
        }
        return false;  // both continuations handled recursively
      }
      const int bit = can1 ? 1 : 0;
      const double p = state.collapse(g.q0, x_basis, bit);
      if (reset_after) state.try_reset(g.q0, plus);
      records.push_back(make_record(name, bit, p, tol));
      bits[name] = bit;
      prob *= p;
      return true;
    };

    switch (g.kind) {
      case GateKind::MeasureZ:
      case GateKind::MeasureX:
        if (!resolve(g.outcome, g.kind == GateKind::MeasureX, false, false)) return;
        break;
      case GateKind::Reset0:
      case GateKind::ResetPlus: {
        const bool plus = g.kind == GateKind::ResetPlus;
        if (state.try_reset(g.q0, plus)) break;
        if (!resolve(reset_choice_name(circuit, gi), false, true, plus)) return;
        break;
      }
      case GateKind::CondX:
      case GateKind::CondZ: {
        int parity = 0;
        for (const auto& name : g.condition) parity ^= bits.at(name);
        if (parity) {
          state.apply(Gate{g.kind == GateKind::CondX ? GateKind::X : GateKind::Z, g.q0});
        }
        break;
      }
      default:
        state.apply(g);
        break;
    }
  }
  out.push_back(Branch{prob, std::move(records), std::move(state)});
}

}  // namespace

std::vector<Branch> enumerate_branches(const Circuit& circuit, const StateVector& initial,
                                       const MarkerHook& hook) {
  if (circuit.num_qubits() != initial.num_qubits()) {
    fail("circuit and state register sizes differ");
  }
  if (circuit.num_measurements() > initial.options().max_enumerated_measurements) {
    fail("circuit has too many measurements to enumerate (" +
         std::to_string(circuit.num_measurements()) + ")");
  }
  std::vector<Branch> out;
  enumerate_impl(circuit, sorted_markers(circuit), initial, {}, {}, 1.0, 0, 0, hook, out);
  return out;
}

}  // namespace parityforge
