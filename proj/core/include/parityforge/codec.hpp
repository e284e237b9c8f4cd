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

#ifndef PARITYFORGE_CODEC_HPP
#define PARITYFORGE_CODEC_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "parityforge/circuit_ir.hpp"
#include "parityforge/code_model.hpp"

namespace parityforge {

enum class CorrectionOp { X, Z };

// One classically conditioned flip: apply `op` to `target` when the XOR of
// the named measurement bits is 1.
struct Correction {
  QubitLabel target;
  CorrectionOp op = CorrectionOp::X;
  std::vector<std::string> cond;  // sorted outcome names
};

struct CorrectionPlan {
  std::vector<Correction> corrections;
  // Iterations of the classical propagation that derived the conditions,
  // not counting the initial correction-free seed set.
  int rounds = 0;
};

// Pairs an added or removed qubit with the parity constraint that fixes or
// releases it. The constraint is given by its full member list (including
// `qubit`); it may be any closing set of labels, not necessarily one of the
// code's generators.
struct DeformationChoice {
  QubitLabel qubit;
  std::vector<QubitLabel> constraint;
};

// A single deformation step: grow code_before into code_after (encode) or
// shrink it (decode), with one constraint choice per changed qubit. Build
// through encode_spec/decode_spec, which validate the invariants.
struct DeformationSpec {
  ParityCode code_before;
  ParityCode code_after;
  bool encode = true;
  std::vector<DeformationChoice> choices;
};

// Validates and assembles an encode step. Every qubit of code_after that is
// not in code_before needs exactly one choice; each constraint must close,
// contain its qubit, live inside code_after, and no constraint may be used
// for two qubits.
DeformationSpec encode_spec(ParityCode before, ParityCode after,
                            std::vector<DeformationChoice> choices);

// Validates and assembles a decode step. Removed parity qubits without an
// explicit choice default to the constraint against their own data qubits.
// The remaining qubits must still determine all logical values; a rank
// deficit is rejected by name.
DeformationSpec decode_spec(ParityCode before, ParityCode after,
                            std::vector<DeformationChoice> choices = {});

// Full triangular-layout deformations: encode all parity qubits starting
// from bare data qubits, with each pair qubit fixed by the cell directly
// below it, and decode them all against their data qubits.
DeformationSpec full_encode_spec(int n);
DeformationSpec full_decode_spec(int n);

// Sequential encode: per added qubit (in dependency order) RESET_0 followed
// by CNOTs from every other constraint member onto it. Fails on cyclic
// constraint choices. Register: code_after's qubits, named by label.
Circuit compile_encode_cnot(const DeformationSpec& spec);

struct MeasurementCompilation {
  Circuit circuit;
  CorrectionPlan plan;
};

// Constant-depth encode: every added qubit RESET_PLUS; per constraint one
// ancilla (RESET_0, CNOT fan-in from all members, MEASURE_Z named
// "mz<qubit>"), then a single COND_X layer carrying the symbolically
// resolved conditions. Register: code_after's qubits followed by one
// ancilla per choice. A non-empty tag suffixes outcome names with "@tag"
// so steps can share a circuit.
MeasurementCompilation compile_encode_measurement(const DeformationSpec& spec,
                                                  const std::string& tag = "");

// Constant-depth decode: MEASURE_X (named "mx<qubit>") on every removed
// qubit, then a single COND_Z layer on the remaining constraint members.
// Register: code_before's qubits.
MeasurementCompilation compile_decode_measurement(const DeformationSpec& spec,
                                                  const std::string& tag = "");

struct ResolvedCorrections {
  // Flip bit per corrected qubit (key: label string): X flips on added
  // qubits for encode, Z flips on remaining members for decode.
  std::map<std::string, int> flips;
  int rounds = 0;
};

// The iterative classical algorithm: grows the set of correction-known
// qubits round by round from the raw measurement bits (keyed by outcome
// name, -1 outcomes stored as bit 1). Independent of the symbolic plan.
// Fails when propagation stalls or an outcome is missing.
ResolvedCorrections resolve_corrections(const DeformationSpec& spec,
                                        const std::map<std::string, int>& outcomes);

// Evaluates a plan's XOR conditions against measured bits.
std::map<std::string, int> evaluate_plan(const CorrectionPlan& plan,
                                         const std::map<std::string, int>& outcomes);

// Closed forms for the full triangular-layout deformations. Outcome keys
// are the (i,j) pairs (0 <= i < j < n) naming the constraint measured for
// qubit (i,j) (encode) or the X measurement of qubit (i,j) (decode); the
// exact key set is enforced.
// Encode: flip X on (k,l) iff the product of all outcomes inside [k,l]
// is -1, i.e. the XOR of bits m_ij over k <= i < j <= l.
std::map<std::pair<int, int>, int> closed_form_encode(
    int n, const std::map<std::pair<int, int>, int>& mz);
// Decode: flip Z on data qubit i iff the product of the outcomes of all
// pairs containing i is -1.
std::map<int, int> closed_form_decode(int n, const std::map<std::pair<int, int>, int>& mx);

}  // namespace parityforge

#endif
