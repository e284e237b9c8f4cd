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

#include "parityforge/codec.hpp"

#include <algorithm>
#include <set>

#include "parityforge/errors.hpp"
#include "parityforge/gf2.hpp"

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("codec", what); }

std::set<QubitLabel> label_set(const ParityCode& code) {
  return {code.qubits().begin(), code.qubits().end()};
}

void xor_into(std::set<std::string>& acc, const std::set<std::string>& other) {
  for (const auto& name : other) {
    auto [it, inserted] = acc.insert(name);
    if (!inserted) acc.erase(it);
  }
}

void validate_choice(const DeformationChoice& choice, const ParityCode& code) {
  if (choice.constraint.size() < 2) {
    fail("constraint for " + choice.qubit.str() + " needs at least two members");
  }
  Gf2Word residue = 0;
  bool contains_qubit = false;
  std::set<QubitLabel> unique;
  for (const auto& member : choice.constraint) {
    if (!code.find(member)) {
      fail("constraint member " + member.str() + " is not a code qubit");
    }
    if (!unique.insert(member).second) {
      fail("constraint for " + choice.qubit.str() + " lists " + member.str() + " twice");
    }
    residue ^= member.mask();
    contains_qubit = contains_qubit || member == choice.qubit;
  }
  if (!contains_qubit) {
    fail("constraint for " + choice.qubit.str() + " does not contain it");
  }
  if (residue != 0) {
    fail("constraint for " + choice.qubit.str() + " does not close");
  }
}

void check_no_reuse(const std::vector<DeformationChoice>& choices) {
  std::set<std::vector<QubitLabel>> seen;
  for (const auto& choice : choices) {
    std::vector<QubitLabel> key = choice.constraint;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) {
      fail("constraint reused; every constraint may encode or decode only one qubit (" +
           choice.qubit.str() + ")");
    }
  }
}

// Deterministic choice order: by the changed qubit's index in `code`.
void sort_choices(std::vector<DeformationChoice>& choices, const ParityCode& code) {
  std::sort(choices.begin(), choices.end(), [&](const auto& a, const auto& b) {
    return code.require(a.qubit) < code.require(b.qubit);
  });
}

bool constraint_contains(const DeformationChoice& choice, const QubitLabel& label) {
  return std::find(choice.constraint.begin(), choice.constraint.end(), label) !=
         choice.constraint.end();
}

std::string outcome_suffix(const std::string& tag) { return tag.empty() ? "" : "@" + tag; }

// One node of the classical propagation: `value` becomes the XOR of `base`
// and the values of `deps`, computable once every dep is resolved.
struct PropagationItem {
  QubitLabel target;
  std::set<std::string> base;
  std::vector<QubitLabel> deps;
  bool is_correction = true;  // seeds skip the round count when false-deps
};

// Runs the round-based resolution. Items whose deps are empty and which are
// flagged as correction-free seed the resolved set before counting rounds.
struct PropagationResult {
  std::map<QubitLabel, std::set<std::string>> values;
  int rounds = 0;
};

PropagationResult propagate(std::vector<PropagationItem> items,
                            const std::set<QubitLabel>& seed_when_independent) {
  PropagationResult out;
  std::vector<PropagationItem> pending;
  for (auto& item : items) {
    if (item.deps.empty() && seed_when_independent.count(item.target)) {
      out.values[item.target] = std::move(item.base);
    } else {
      pending.push_back(std::move(item));
    }
  }
  while (!pending.empty()) {
    std::vector<std::size_t> batch;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const bool ready = std::all_of(pending[i].deps.begin(), pending[i].deps.end(),
                                     [&](const QubitLabel& d) { return out.values.count(d); });
      if (ready) batch.push_back(i);
    }
    if (batch.empty()) {
      fail("correction propagation stalled; the constraint choices are cyclic");
    }
    // Resolve the whole batch against the state at the start of the round.
    std::map<QubitLabel, std::set<std::string>> resolved_now;
    for (std::size_t i : batch) {
      auto value = std::move(pending[i].base);
      for (const auto& dep : pending[i].deps) xor_into(value, out.values.at(dep));
      resolved_now[pending[i].target] = std::move(value);
    }
    for (auto it = batch.rbegin(); it != batch.rend(); ++it) {
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    for (auto& [label, value] : resolved_now) out.values[label] = std::move(value);
    ++out.rounds;
  }
  return out;
}

// Encode: the flip of an added qubit is its own constraint outcome XOR the
// flips of the other added qubits inside that constraint.
PropagationResult encode_propagation(const DeformationSpec& spec, const std::string& tag) {
  std::set<QubitLabel> added;
  for (const auto& c : spec.choices) added.insert(c.qubit);
  std::vector<PropagationItem> items;
  for (const auto& choice : spec.choices) {
    PropagationItem item;
    item.target = choice.qubit;
    item.base = {"mz" + choice.qubit.str() + outcome_suffix(tag)};
    for (const auto& member : choice.constraint) {
      if (member != choice.qubit && added.count(member)) item.deps.push_back(member);
    }
    items.push_back(std::move(item));
  }
  return propagate(std::move(items), /*seed_when_independent=*/{});
}

// Decode: a removed qubit's effective outcome is its raw X outcome XOR the
// effective outcomes of the removed qubits whose constraints contain it;
// a remaining member collects the effective outcomes of the constraints it
// appears in. Returns effective outcomes and remaining-member conditions in
// one value map.
PropagationResult decode_propagation(const DeformationSpec& spec, const std::string& tag) {
  std::set<QubitLabel> removed;
  for (const auto& c : spec.choices) removed.insert(c.qubit);

  std::vector<PropagationItem> items;
  std::set<QubitLabel> independent;
  for (const auto& choice : spec.choices) {
    PropagationItem item;
    item.target = choice.qubit;
    item.base = {"mx" + choice.qubit.str() + outcome_suffix(tag)};
    for (const auto& other : spec.choices) {
      if (other.qubit != choice.qubit && constraint_contains(other, choice.qubit)) {
        item.deps.push_back(other.qubit);
      }
    }
    if (item.deps.empty()) independent.insert(choice.qubit);
    items.push_back(std::move(item));
  }
  std::map<QubitLabel, std::vector<QubitLabel>> member_deps;
  for (const auto& choice : spec.choices) {
    for (const auto& member : choice.constraint) {
      if (member != choice.qubit && !removed.count(member)) {
        member_deps[member].push_back(choice.qubit);
      }
    }
  }
  for (auto& [member, deps] : member_deps) {
    PropagationItem item;
    item.target = member;
    item.deps = std::move(deps);
    items.push_back(std::move(item));
  }
  return propagate(std::move(items), independent);
}

std::map<std::string, int> evaluate_values(
    const std::map<QubitLabel, std::set<std::string>>& values,
    const std::map<std::string, int>& outcomes, const std::set<QubitLabel>& keep) {
  std::map<std::string, int> flips;
  for (const auto& [label, names] : values) {
    if (!keep.count(label)) continue;
    int bit = 0;
    for (const auto& name : names) {
      auto it = outcomes.find(name);
      if (it == outcomes.end()) fail("missing outcome '" + name + "'");
      bit ^= it->second & 1;
    }
    flips[label.str()] = bit;
  }
  return flips;
}

}  // namespace

DeformationSpec encode_spec(ParityCode before, ParityCode after,
                            std::vector<DeformationChoice> choices) {
  if (before.n() != after.n()) fail("codes describe different logical registers");
  const auto before_labels = label_set(before);
  const auto after_labels = label_set(after);
  for (const auto& label : before_labels) {
    if (!after_labels.count(label)) {
      fail("encode cannot remove qubit " + label.str());
    }
  }
  if (!validate_code(after).valid()) fail("code_after is not a valid code");

  std::set<QubitLabel> added;
  for (const auto& label : after_labels) {
    if (!before_labels.count(label)) added.insert(label);
  }
  std::set<QubitLabel> chosen;
  for (const auto& choice : choices) {
    if (!added.count(choice.qubit)) {
      fail("choice targets " + choice.qubit.str() + ", which is not an added qubit");
    }
    if (!chosen.insert(choice.qubit).second) {
      fail("two constraint choices for " + choice.qubit.str());
    }
    validate_choice(choice, after);
  }
  for (const auto& label : added) {
    if (!chosen.count(label)) fail("missing constraint choice for " + label.str());
  }
  check_no_reuse(choices);
  sort_choices(choices, after);
  return DeformationSpec{std::move(before), std::move(after), true, std::move(choices)};
}

DeformationSpec decode_spec(ParityCode before, ParityCode after,
                            std::vector<DeformationChoice> choices) {
  if (before.n() != after.n()) fail("codes describe different logical registers");
  const auto before_labels = label_set(before);
  const auto after_labels = label_set(after);
  for (const auto& label : after_labels) {
    if (!before_labels.count(label)) {
      fail("decode cannot add qubit " + label.str());
    }
  }
  if (!validate_code(after).valid()) fail("code_after is not a valid code");

  std::vector<Gf2Word> remaining_masks;
  for (const auto& label : after.qubits()) remaining_masks.push_back(label.mask());
  const int rank = gf2_rank(remaining_masks);
  if (rank < before.n()) {
    fail("removed set breaks the readout basis: rank deficit " +
         std::to_string(before.n() - rank));
  }

  std::set<QubitLabel> removed;
  for (const auto& label : before_labels) {
    if (!after_labels.count(label)) removed.insert(label);
  }
  std::set<QubitLabel> chosen;
  for (const auto& choice : choices) {
    if (!removed.count(choice.qubit)) {
      fail("choice targets " + choice.qubit.str() + ", which is not a removed qubit");
    }
    if (!chosen.insert(choice.qubit).second) {
      fail("two constraint choices for " + choice.qubit.str());
    }
    validate_choice(choice, before);
  }
  for (const auto& label : removed) {
    if (chosen.count(label)) continue;
    if (label.is_data()) {
      fail("no default decoding constraint for data qubit " + label.str() +
           "; provide one explicitly");
    }
    DeformationChoice choice;
    choice.qubit = label;
    choice.constraint.push_back(label);
    for (int i : label.indices()) {
      const QubitLabel data = QubitLabel::single(i);
      if (!before.find(data)) {
        fail("default decoding constraint for " + label.str() + " needs data qubit " +
             data.str() + "; provide an explicit choice");
      }
      choice.constraint.push_back(data);
    }
    validate_choice(choice, before);
    choices.push_back(std::move(choice));
  }
  check_no_reuse(choices);
  sort_choices(choices, before);
  return DeformationSpec{std::move(before), std::move(after), false, std::move(choices)};
}

DeformationSpec full_encode_spec(int n) {
  ParityCode after = lhz_layout(n);
  std::vector<QubitLabel> data;
  for (int i = 0; i < n; ++i) data.push_back(QubitLabel::single(i));
  ParityCode before(n, data, {});

  std::vector<DeformationChoice> choices;
  for (const auto& constraint : after.constraints()) {
    DeformationChoice choice;
    int best_spread = -1;
    for (int member : constraint.members) {
      const QubitLabel& label = after.label(member);
      choice.constraint.push_back(label);
      const int spread = label.max_index() - label.indices().front();
      if (spread > best_spread) {
        best_spread = spread;
        choice.qubit = label;
      }
    }
    choices.push_back(std::move(choice));
  }
  return encode_spec(std::move(before), std::move(after), std::move(choices));
}

DeformationSpec full_decode_spec(int n) {
  ParityCode before = lhz_layout(n);
  std::vector<QubitLabel> data;
  for (int i = 0; i < n; ++i) data.push_back(QubitLabel::single(i));
  ParityCode after(n, data, {});
  return decode_spec(std::move(before), std::move(after), {});
}

Circuit compile_encode_cnot(const DeformationSpec& spec) {
  if (!spec.encode) fail("compile_encode_cnot needs an encode spec");
  const ParityCode& code = spec.code_after;
  std::vector<std::string> names;
  for (const auto& label : code.qubits()) names.push_back(label.str());
  Circuit circuit(code.num_qubits(), names);

  std::set<QubitLabel> present = label_set(spec.code_before);
  std::vector<bool> done(spec.choices.size(), false);
  std::size_t remaining = spec.choices.size();
  while (remaining > 0) {
    bool progress = false;
    for (std::size_t i = 0; i < spec.choices.size(); ++i) {
      if (done[i]) continue;
      const auto& choice = spec.choices[i];
      const bool ready =
          std::all_of(choice.constraint.begin(), choice.constraint.end(),
                      [&](const QubitLabel& m) { return m == choice.qubit || present.count(m); });
      if (!ready) continue;
      const int target = code.require(choice.qubit);
      circuit.reset_0(target);
      for (const auto& member : choice.constraint) {
        if (member != choice.qubit) circuit.cnot(code.require(member), target);
      }
      present.insert(choice.qubit);
      done[i] = true;
      --remaining;
      progress = true;
    }
    if (!progress) {
      fail("added qubits cannot be ordered; the constraint choices are cyclic");
    }
  }
  return circuit;
}

MeasurementCompilation compile_encode_measurement(const DeformationSpec& spec,
                                                  const std::string& tag) {
  if (!spec.encode) fail("compile_encode_measurement needs an encode spec");
  const ParityCode& code = spec.code_after;
  const int k = code.num_qubits();
  const int ancillas = static_cast<int>(spec.choices.size());

  std::vector<std::string> names;
  for (const auto& label : code.qubits()) names.push_back(label.str());
  for (const auto& choice : spec.choices) names.push_back("anc" + choice.qubit.str());
  Circuit circuit(k + ancillas, names);

  const auto before_labels = label_set(spec.code_before);
  std::vector<int> added_indices;
  for (int q = 0; q < k; ++q) {
    if (!before_labels.count(code.label(q))) added_indices.push_back(q);
  }
  for (int q : added_indices) circuit.reset_plus(q);
  for (int a = 0; a < ancillas; ++a) circuit.reset_0(k + a);
  for (int a = 0; a < ancillas; ++a) {
    for (const auto& member : spec.choices[a].constraint) {
      circuit.cnot(code.require(member), k + a);
    }
  }
  for (int a = 0; a < ancillas; ++a) {
    circuit.measure_z(k + a, "mz" + spec.choices[a].qubit.str() + outcome_suffix(tag));
  }

  const auto resolution = encode_propagation(spec, tag);
  CorrectionPlan plan;
  plan.rounds = resolution.rounds;
  for (int q : added_indices) {
    const auto& label = code.label(q);
    const auto& names_set = resolution.values.at(label);
    std::vector<std::string> cond(names_set.begin(), names_set.end());
    circuit.cond_x(q, cond);
    plan.corrections.push_back(Correction{label, CorrectionOp::X, std::move(cond)});
  }
  return MeasurementCompilation{std::move(circuit), std::move(plan)};
}

MeasurementCompilation compile_decode_measurement(const DeformationSpec& spec,
                                                  const std::string& tag) {
  if (spec.encode) fail("compile_decode_measurement needs a decode spec");
  const ParityCode& code = spec.code_before;

  std::vector<std::string> names;
  for (const auto& label : code.qubits()) names.push_back(label.str());
  Circuit circuit(code.num_qubits(), names);

  const auto after_labels = label_set(spec.code_after);
  std::vector<int> removed_indices;
  for (int q = 0; q < code.num_qubits(); ++q) {
    if (!after_labels.count(code.label(q))) removed_indices.push_back(q);
  }
  for (int q : removed_indices) {
    circuit.measure_x(q, "mx" + code.label(q).str() + outcome_suffix(tag));
  }

  const auto resolution = decode_propagation(spec, tag);
  CorrectionPlan plan;
  plan.rounds = resolution.rounds;
  for (int q = 0; q < code.num_qubits(); ++q) {
    const auto& label = code.label(q);
    if (!after_labels.count(label)) continue;
    const auto it = resolution.values.find(label);
    if (it == resolution.values.end() || it->second.empty()) continue;
    std::vector<std::string> cond(it->second.begin(), it->second.end());
    circuit.cond_z(q, cond);
    plan.corrections.push_back(Correction{label, CorrectionOp::Z, std::move(cond)});
  }
  return MeasurementCompilation{std::move(circuit), std::move(plan)};
}

ResolvedCorrections resolve_corrections(const DeformationSpec& spec,
                                        const std::map<std::string, int>& outcomes) {
  const auto resolution =
      spec.encode ? encode_propagation(spec, "") : decode_propagation(spec, "");
  std::set<QubitLabel> keep;
  if (spec.encode) {
    for (const auto& choice : spec.choices) keep.insert(choice.qubit);
  } else {
    std::set<QubitLabel> removed;
    for (const auto& choice : spec.choices) removed.insert(choice.qubit);
    for (const auto& [label, value] : resolution.values) {
      if (!removed.count(label)) keep.insert(label);
    }
  }
  ResolvedCorrections out;
  out.rounds = resolution.rounds;
  out.flips = evaluate_values(resolution.values, outcomes, keep);
  return out;
}

std::map<std::string, int> evaluate_plan(const CorrectionPlan& plan,
                                         const std::map<std::string, int>& outcomes) {
  std::map<std::string, int> flips;
  for (const auto& correction : plan.corrections) {
    int bit = 0;
    for (const auto& name : correction.cond) {
      auto it = outcomes.find(name);
      if (it == outcomes.end()) fail("missing outcome '" + name + "'");
      bit ^= it->second & 1;
    }
    flips[correction.target.str()] = bit;
  }
  return flips;
}

namespace {

void check_pair_outcomes(int n, const std::map<std::pair<int, int>, int>& outcomes) {
  if (n < 2) fail("closed forms need at least two logical qubits");
  std::size_t expected = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto it = outcomes.find({i, j});
      if (it == outcomes.end()) {
        fail("missing outcome for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (it->second != 0 && it->second != 1) fail("outcomes must be bits");
      ++expected;
    }
  }
  if (outcomes.size() != expected) fail("unexpected outcome keys");
}

}  // namespace

std::map<std::pair<int, int>, int> closed_form_encode(
    int n, const std::map<std::pair<int, int>, int>& mz) {
  check_pair_outcomes(n, mz);
  std::map<std::pair<int, int>, int> flips;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      int bit = 0;
      for (int i = k; i < l; ++i) {
        for (int j = i + 1; j <= l; ++j) bit ^= mz.at({i, j});
      }
      flips[{k, l}] = bit;
    }
  }
  return flips;
}

std::map<int, int> closed_form_decode(int n, const std::map<std::pair<int, int>, int>& mx) {
  check_pair_outcomes(n, mx);
  std::map<int, int> flips;
  for (int i = 0; i < n; ++i) {
    int bit = 0;
    for (int l = 0; l < i; ++l) bit ^= mx.at({l, i});
    for (int j = i + 1; j < n; ++j) bit ^= mx.at({i, j});
    flips[i] = bit;
  }
  return flips;
}

}  // namespace parityforge
