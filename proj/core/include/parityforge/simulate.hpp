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

#ifndef PARITYFORGE_SIMULATE_HPP
#define PARITYFORGE_SIMULATE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "parityforge/circuit_ir.hpp"

namespace parityforge {

struct SimOptions {
  // Hard cap on simultaneously active (amplitude-resolved) qubits.
  int max_active_qubits = 20;
  // Probabilities within this of 0 or 1 count as deterministic outcomes.
  double tolerance = 1e-9;
  // Branches below this probability are impossible: forcing one is an error
  // and enumeration prunes them.
  double prune_threshold = 1e-12;
  // Fork-point cap for enumerate_branches.
  int max_enumerated_measurements = 16;
};

// Defaults, with max_active_qubits overridable through the environment
// variable PARITY_FORGE_MAX_QUBITS.
SimOptions default_sim_options();

// Decides measurement outcomes during a run.
class OutcomePolicy {
 public:
  static OutcomePolicy random(std::uint64_t seed);
  // Bits consumed in choice order (hidden reset choices included).
  static OutcomePolicy forced(std::vector<int> bits);
  // Bits looked up by outcome name; unnamed choices fall back to `bits`.
  static OutcomePolicy forced_named(std::map<std::string, int> bits);

  bool is_random() const { return random_; }
  bool is_named() const { return named_mode_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<int>& bits() const { return bits_; }
  const std::map<std::string, int>& named() const { return named_; }

 private:
  bool random_ = true;
  bool named_mode_ = false;
  std::uint64_t seed_ = 0;
  std::vector<int> bits_;
  std::map<std::string, int> named_;
};

struct OutcomeRecord {
  std::string name;
  int bit = 0;
  double probability = 1.0;  // probability the recorded bit had when measured
  bool deterministic = true;
};

// Stateful outcome selector shared by the simulation engines. Deterministic
// choices (probability within prune_threshold of 0 or 1) never consult
// randomness but still validate and consume forced bits.
class OutcomeChooser {
 public:
  OutcomeChooser(const OutcomePolicy& policy, const SimOptions& opts);

  // Picks the bit for the named binary choice given P(bit = 1).
  int choose(const std::string& name, double p1);

 private:
  const OutcomePolicy& policy_;
  SimOptions opts_;
  std::mt19937_64 rng_;
  std::size_t next_ = 0;
};

// Hidden outcome name recorded when a reset has to measure first.
std::string reset_choice_name(const Circuit& circuit, std::size_t gate_index);

// Statevector over a fixed register where qubits join the dense amplitude
// vector only while they are entangled with the computation. Every qubit
// starts inactive in |0>; single-qubit stabilizer states (Z or X basis)
// stay classical, and measurements deactivate qubits again. This keeps the
// dense vector width at the circuit's entanglement frontier instead of the
// register size.
class StateVector {
 public:
  explicit StateVector(int num_qubits, SimOptions opts = default_sim_options());

  int num_qubits() const { return static_cast<int>(qubits_.size()); }
  int num_active() const { return static_cast<int>(active_.size()); }
  const SimOptions& options() const { return opts_; }

  struct QubitStatus {
    bool active = false;
    bool x_basis = false;  // meaningful when inactive
    int bit = 0;           // meaningful when inactive
  };
  QubitStatus status(int q) const;

  // Slot order of active qubits; slot s corresponds to amplitude index bit s.
  const std::vector<int>& active_qubits() const { return active_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  // Unitary gates only (including classically resolved fast paths).
  // Measurements, resets and conditionals belong to the runners.
  void apply(const Gate& gate);

  // Probability of each outcome for a Z- or X-basis measurement, without
  // mutating the state.
  std::pair<double, double> measure_probabilities(int q, bool x_basis) const;

  // Projects onto the requested outcome, renormalizes, deactivates the qubit
  // and returns the probability the outcome had. Throws when that
  // probability is below the prune threshold.
  double collapse(int q, bool x_basis, int bit);

  // Deterministic reset: succeeds when the qubit is inactive or carries no
  // entanglement (its two amplitude slices are parallel). Returns false when
  // a measurement is required first.
  bool try_reset(int q, bool plus);

  // Dense amplitudes over the listed qubits (qubits[0] = least significant
  // bit). Every active qubit must be listed; inactive listed qubits
  // contribute their basis-state factors.
  std::vector<std::complex<double>> reduced_dense(const std::vector<int>& qubits) const;

  // Expectation of the Z product over `qubits`. Exactly 0 whenever an
  // X-basis inactive qubit is included.
  double pauli_z_expectation(const std::vector<int>& qubits) const;

 private:
  void activate(int q);
  void deactivate(int q, int bit, double norm);
  void scale(std::complex<double> factor);
  void apply_single(int q, const std::complex<double> u[2][2]);
  void phase_gate(int q, double angle);  // diag(1, e^{i angle})

  SimOptions opts_;
  std::vector<QubitStatus> qubits_;
  std::vector<int> slot_;  // per qubit, -1 when inactive
  std::vector<int> active_;
  std::vector<std::complex<double>> amps_;
};

// |<a|b>| >= 1 - tol over the joint support. Requires equally sized
// registers; qubits inactive and identical on both sides are compared
// symbolically, everything else is densified.
bool same_state_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

// Invoked as hook(label, state) when a run crosses a circuit marker.
using MarkerHook = std::function<void(const std::string&, const StateVector&)>;

struct RunResult {
  StateVector state;
  std::vector<OutcomeRecord> outcomes;
};

// Executes the circuit front to back. Measurement outcomes come from the
// policy; conditional gates read earlier records; resets on entangled qubits
// consume a policy choice recorded under "reset(<qubit>)@<gate index>".
RunResult run_statevector(const Circuit& circuit, StateVector initial, const OutcomePolicy& policy,
                          const MarkerHook& hook = nullptr);

struct Branch {
  double probability = 1.0;
  std::vector<OutcomeRecord> outcomes;
  StateVector state;
};

// Depth-first expansion of every outcome branch with probability above the
// prune threshold. Branch probabilities sum to 1 up to rounding. Deterministic
// measurements do not fork.
std::vector<Branch> enumerate_branches(const Circuit& circuit, const StateVector& initial,
                                       const MarkerHook& hook = nullptr);

}  // namespace parityforge

#endif
