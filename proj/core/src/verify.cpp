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

#include "parityforge/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "parityforge/codec.hpp"
#include "parityforge/errors.hpp"
#include "parityforge/simulate.hpp"
#include "parityforge/tableau.hpp"

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("verify", message); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// Accumulates the worst deviation and keeps the first over-tolerance context.
struct CheckBuilder {
  CheckResult r;

  CheckBuilder(std::string name, double tol) {
    r.name = std::move(name);
    r.tolerance = tol;
    r.pass = true;
  }

  void observe(double dev, const std::string& context) {
    r.worst = std::max(r.worst, dev);
    if (dev > r.tolerance && r.pass) {
      r.pass = false;
      r.detail = context + " (deviation " + fmt(dev) + ")";
    }
  }

  void require(bool ok, const std::string& context) {
    if (!ok && r.pass) {
      r.pass = false;
      r.detail = context;
    }
  }

  CheckResult done(const std::string& ok_detail) {
    if (r.pass) r.detail = ok_detail + ", worst deviation " + fmt(r.worst);
    return std::move(r);
  }
};

std::vector<int> iota_positions(int k) {
  std::vector<int> out(k);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<int> data_positions(const ParityCode& code) {
  std::vector<int> out;
  for (int q = 0; q < code.num_qubits(); ++q) {
    if (code.label(q).is_data()) out.push_back(q);
  }
  return out;
}

// |<a|b>| over equally sized dense vectors.
double overlap(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) fail("overlap of differently sized states");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return std::abs(acc);
}

// Random product state as a gate list; q0 indexes the preparation slot and
// gets remapped onto register positions when applied.
std::vector<Gate> product_prep(int slots, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
  std::vector<Gate> gates;
  for (int s = 0; s < slots; ++s) {
    gates.push_back(Gate(GateKind::RX, s, -1, theta(rng)));
    gates.push_back(Gate(GateKind::RZ, s, -1, phi(rng)));
  }
  return gates;
}

void apply_prep(StateVector& state, const std::vector<Gate>& prep,
                const std::vector<int>& positions) {
  for (Gate gate : prep) {
    gate.q0 = positions[gate.q0];
    state.apply(gate);
  }
}

// Appends src's gates and markers one-to-one onto the front of dst's
// register (dst must be at least as wide).
void append_mapped(Circuit& dst, const Circuit& src) {
  const auto& markers = src.markers();
  const auto& gates = src.gates();
  std::size_t next = 0;
  for (std::size_t gi = 0; gi <= gates.size(); ++gi) {
    while (next < markers.size() && markers[next].second == gi) {
      dst.mark(markers[next].first);
      ++next;
    }
    if (gi < gates.size()) dst.append(gates[gi]);
  }
}

// <psi| P |psi> with X factors on x_support, Z on z_support, Hermitian Y
// where they overlap. Matches the tableau's row convention; kept local so
// the replay check does not lean on the engine under test.
std::complex<double> pauli_expectation_dense(const std::vector<std::complex<double>>& v,
                                             const std::vector<int>& x_support,
                                             const std::vector<int>& z_support) {
  std::size_t xmask = 0, zmask = 0;
  for (int q : x_support) xmask ^= std::size_t(1) << q;
  for (int q : z_support) zmask ^= std::size_t(1) << q;
  const std::size_t ymask = xmask & zmask;
  const std::size_t zonly = zmask & ~xmask;
  const std::complex<double> i_unit{0.0, 1.0};
  std::complex<double> acc = 0.0;
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    std::complex<double> coeff = (std::popcount(idx & zonly) & 1) ? -1.0 : 1.0;
    for (std::size_t q = 0; (ymask >> q) != 0; ++q) {
      if (ymask >> q & 1) coeff *= (idx >> q & 1) ? -i_unit : i_unit;
    }
    acc += std::conj(v[idx ^ xmask]) * coeff * v[idx];
  }
  return acc;
}

std::size_t reverse_bits(std::size_t b, int n) {
  std::size_t out = 0;
  for (int i = 0; i < n; ++i) {
    if (b >> i & 1) out |= std::size_t(1) << (n - 1 - i);
  }
  return out;
}

// Reference transform: the circuit emits the result bit-reversed on the data
// row, so the reference bakes the reversal into the phase sum.
std::vector<std::complex<double>> transform_reference(const std::vector<std::complex<double>>& in,
                                                      int n) {
  const std::size_t dim = in.size();
  std::vector<std::complex<double>> out(dim, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t y = 0; y < dim; ++y) {
    std::complex<double> acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(reverse_bits(b, n)) *
                           static_cast<double>(y) / static_cast<double>(dim);
      acc += in[b] * std::polar(1.0, angle);
    }
    out[y] = scale * acc;
  }
  return out;
}

// Register positions of the parity cells fixed during block i of the
// transform, following the documented register layout of build_qft.
std::vector<std::vector<int>> transform_block_cells(int n, int i) {
  const auto top = [n](int k) { return n + (k - 1); };
  const auto bottom = [n](int l) { return (2 * n - 1) + (l - 2); };
  std::vector<std::vector<int>> cells;
  for (int k = i + 1; k <= n - 1; ++k) {
    if (k == i + 1) {
      cells.push_back({top(k), i, i + 1});
    } else {
      cells.push_back({top(k), top(k - 1), k - 1, k});
    }
  }
  for (int l = i + 2; l <= n - 1; ++l) {
    if (l == i + 2) {
      cells.push_back({bottom(l), i + 1, i + 2});
    } else {
      cells.push_back({bottom(l), bottom(l - 1), l - 1, l});
    }
  }
  return cells;
}

void random_clifford_gates(Circuit& circuit, const std::vector<int>& slots, int count,
                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, slots.size() >= 2 ? 4 : 3);
  std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
  for (int g = 0; g < count; ++g) {
    const int q0 = slots[pick(rng)];
    switch (kind(rng)) {
      case 0:
        circuit.append(Gate(GateKind::H, q0));
        break;
      case 1:
        circuit.append(Gate(GateKind::S, q0));
        break;
      case 2:
        circuit.append(Gate(GateKind::X, q0));
        break;
      case 3:
        circuit.append(Gate(GateKind::Z, q0));
        break;
      default: {
        int q1 = slots[pick(rng)];
        while (q1 == q0) q1 = slots[pick(rng)];
        circuit.append(Gate(GateKind::CNOT, q0, q1));
        break;
      }
    }
  }
}

}  // namespace

ProblemHamiltonian random_all_to_all_problem(int n, std::uint64_t seed) {
  if (n < 2) fail("a random problem needs at least two logical qubits");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coupling(-1.0, 1.0);
  ProblemHamiltonian problem;
  problem.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      problem.terms.push_back(ProblemTerm{{i, j}, coupling(rng)});
    }
  }
  return problem;
}

GraphSpec random_graph(int n, std::uint64_t seed) {
  if (n < 1) fail("a random graph needs at least one vertex");
  std::mt19937_64 rng(seed);
  GraphSpec graph;
  graph.n = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng() & 1) graph.edges.emplace_back(u, v);
    }
  }
  return graph;
}

std::vector<CheckResult> verify_encode_protocols(int n, int trials, std::uint64_t seed,
                                                 double tol) {
  if (n < 2 || n > 4) {
    fail("encode protocol verification enumerates every branch and supports 2 <= n <= 4");
  }
  if (trials < 1) fail("encode protocol verification needs at least one trial");

  const DeformationSpec enc = full_encode_spec(n);
  const DeformationSpec dec = full_decode_spec(n);
  const ParityCode& code = enc.code_after;
  const int k = code.num_qubits();
  const std::vector<int> data = data_positions(code);

  Circuit ms = compile_encode_measurement(enc).circuit;
  ms.mark("encoded");
  const Circuit cx = compile_encode_cnot(enc);
  const Circuit dm = compile_decode_measurement(dec).circuit;

  const std::string suffix = " (n=" + std::to_string(n) + ")";
  CheckBuilder branches_check("measurement encode matches cnot encode" + suffix, tol);
  CheckBuilder decode_check("measurement decode restores the logical state" + suffix, tol);
  CheckBuilder cells_check("cell parities are +1 after encode" + suffix, tol);

  const MarkerHook hook = [&](const std::string& label, const StateVector& state) {
    if (label != "encoded") return;
    for (std::size_t c = 0; c < code.constraints().size(); ++c) {
      const double e = state.pauli_z_expectation(code.constraints()[c].members);
      cells_check.observe(std::abs(e - 1.0), "cell " + std::to_string(c));
    }
  };

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const auto prep = product_prep(n, rng);
    const std::string where = "trial " + std::to_string(trial);

    StateVector cx_state(k);
    apply_prep(cx_state, prep, data);
    const auto cx_run = run_statevector(cx, std::move(cx_state), OutcomePolicy::random(1));
    const auto want = cx_run.state.reduced_dense(iota_positions(k));

    StateVector ms_state(ms.num_qubits());
    apply_prep(ms_state, prep, data);
    const auto branches = enumerate_branches(ms, ms_state, hook);
    branches_check.require(branches.size() == std::size_t{1} << enc.choices.size(),
                           where + ": unexpected branch count");
    for (const auto& branch : branches) {
      const auto got = branch.state.reduced_dense(iota_positions(k));
      branches_check.observe(std::max(0.0, 1.0 - overlap(got, want)), where);
    }

    StateVector logical(n);
    apply_prep(logical, prep, iota_positions(n));
    const auto want_logical = logical.reduced_dense(iota_positions(n));
    const auto decode_branches = enumerate_branches(dm, cx_run.state);
    decode_check.require(decode_branches.size() == std::size_t{1} << dec.choices.size(),
                         where + ": unexpected branch count");
    for (const auto& branch : decode_branches) {
      const auto got = branch.state.reduced_dense(data);
      decode_check.observe(std::max(0.0, 1.0 - overlap(got, want_logical)), where);
    }
  }

  const std::string summary = std::to_string(trials) + " product inputs";
  std::vector<CheckResult> results;
  results.push_back(branches_check.done(summary));
  results.push_back(decode_check.done(summary));
  results.push_back(cells_check.done(summary));
  return results;
}

CheckResult verify_qft_depth(int n) {
  const DepthReport depth = schedule_depth(build_qft(n));
  const QftDepth formula = qft_depth_formula(n);
  CheckBuilder check("transform depth matches the closed formula (n=" + std::to_string(n) + ")",
                     0.0);
  check.observe(std::abs(depth.measure - formula.measure), "measure layer count");
  check.observe(std::abs(depth.cnot - formula.cnot), "cnot layer count");
  return check.done("measure " + std::to_string(depth.measure) + ", cnot " +
                    std::to_string(depth.cnot) + ", single " + std::to_string(depth.single));
}

std::vector<CheckResult> verify_qft(int n, int inputs, int samples, std::uint64_t seed,
                                    double tol) {
  if (n < 2) fail("the transform needs at least two logical qubits");
  if (inputs < 1) fail("transform verification needs at least one input");
  if (samples < 1) fail("transform verification needs at least one sample run");

  const Circuit circuit = build_qft(n);
  SimOptions opts = default_sim_options();
  opts.max_active_qubits = std::max(opts.max_active_qubits, std::min(circuit.num_qubits(), 26));

  std::map<std::string, std::vector<std::vector<int>>> cells_by_label;
  for (int i = 0; i + 3 <= n; i += 2) {
    cells_by_label["encoded:b" + std::to_string(i)] = transform_block_cells(n, i);
  }

  const std::string suffix = " (n=" + std::to_string(n) + ")";
  CheckBuilder fidelity_check("transform matches the dense reference" + suffix, tol);
  CheckBuilder cells_check("cell parities are +1 after each block encode" + suffix, tol);

  std::set<std::string> seen;
  const MarkerHook hook = [&](const std::string& label, const StateVector& state) {
    const auto it = cells_by_label.find(label);
    if (it == cells_by_label.end()) return;
    seen.insert(label);
    for (std::size_t c = 0; c < it->second.size(); ++c) {
      const double e = state.pauli_z_expectation(it->second[c]);
      cells_check.observe(std::abs(e - 1.0), label + " cell " + std::to_string(c));
    }
  };

  const bool enumerable = circuit.num_measurements() <= opts.max_enumerated_measurements;
  const std::vector<int> data = iota_positions(n);

  std::mt19937_64 rng(seed);
  for (int input = 0; input < inputs; ++input) {
    const auto prep = product_prep(n, rng);
    const std::string where = "input " + std::to_string(input);

    StateVector in_state(n);
    apply_prep(in_state, prep, data);
    const auto want = transform_reference(in_state.reduced_dense(data), n);

    StateVector initial(circuit.num_qubits(), opts);
    apply_prep(initial, prep, data);

    if (enumerable) {
      const auto branches = enumerate_branches(circuit, initial, hook);
      for (const auto& branch : branches) {
        const auto got = branch.state.reduced_dense(data);
        fidelity_check.observe(std::max(0.0, 1.0 - overlap(got, want)), where);
      }
    } else {
      for (int s = 0; s < samples; ++s) {
        const auto run = run_statevector(circuit, initial, OutcomePolicy::random(rng()), hook);
        const auto got = run.state.reduced_dense(data);
        fidelity_check.observe(std::max(0.0, 1.0 - overlap(got, want)),
                               where + " sample " + std::to_string(s));
      }
    }
  }
  cells_check.require(seen.size() == cells_by_label.size(),
                      "some block encode markers never fired");

  const std::string summary = std::to_string(inputs) + " product inputs, " +
                              (enumerable ? "all branches" : "sampled branches");
  std::vector<CheckResult> results;
  results.push_back(fidelity_check.done(summary));
  results.push_back(cells_check.done(summary));
  results.push_back(verify_qft_depth(n));
  return results;
}

LandscapeResult verify_qaoa_landscape(const ProblemHamiltonian& problem, int p, int grid,
                                      double tol) {
  validate_problem(problem);
  if (problem.n > 4) {
    fail("the dense landscape check holds the full encode frontier and supports n <= 4");
  }
  if (p < 1) fail("the landscape needs at least one layer");
  if (grid < 1) fail("the landscape needs a positive grid size");

  const ParityCode code = lhz_layout(problem.n);
  CheckBuilder check("qaoa energies match the dense logical reference (n=" +
                         std::to_string(problem.n) + ", p=" + std::to_string(p) + ")",
                     tol);

  LandscapeResult result;
  for (int a = 0; a < grid; ++a) {
    const double beta = std::numbers::pi * (a + 1) / (grid + 1);
    for (int b = 0; b < grid; ++b) {
      const double gamma = 2.0 * std::numbers::pi * (b + 1) / (grid + 1);
      QaoaParams params;
      params.betas.assign(p, beta);
      params.gammas.assign(p, gamma);
      const double parity = parity_qaoa_energy(problem, code, params);
      const double logical = reference_logical_qaoa(problem, params);
      result.points.push_back(LandscapePoint{beta, gamma, parity, logical});
      check.observe(std::abs(parity - logical),
                    "beta=" + fmt(beta) + " gamma=" + fmt(gamma));
    }
  }
  result.check = check.done(std::to_string(grid) + "x" + std::to_string(grid) + " grid");
  return result;
}

std::vector<CheckResult> verify_graph_state(const GraphSpec& graph, int samples,
                                            std::uint64_t seed, double tol) {
  if (samples < 1) fail("graph-state verification needs at least one sample run");
  const int n = graph.n;
  const int edges = static_cast<int>(graph.edges.size());
  if (n + 2 * edges > 26) {
    fail("graph-state verification holds n + 2E qubits dense; this graph needs " +
         std::to_string(n + 2 * edges));
  }

  const ParityCode layout = graph_state_layout(graph);
  const Circuit circuit = build_graph_state(graph);
  SimOptions opts = default_sim_options();
  opts.max_active_qubits = std::max(opts.max_active_qubits, n + 2 * edges);

  std::vector<std::complex<double>> want(std::size_t{1} << n);
  const double scale = std::pow(2.0, -0.5 * n);
  for (std::size_t b = 0; b < want.size(); ++b) {
    int parity = 0;
    for (const auto& [u, v] : graph.edges) parity ^= (b >> u) & (b >> v) & 1;
    want[b] = parity ? -scale : scale;
  }

  const std::string suffix = " (n=" + std::to_string(n) + ", " + std::to_string(edges) + " edges)";
  CheckBuilder fidelity_check("graph state matches the closed form" + suffix, tol);
  CheckBuilder cells_check("edge cell parities are +1 after encode" + suffix, tol);

  const MarkerHook hook = [&](const std::string& label, const StateVector& state) {
    if (label != "encoded:gs") return;
    for (std::size_t c = 0; c < layout.constraints().size(); ++c) {
      const double e = state.pauli_z_expectation(layout.constraints()[c].members);
      cells_check.observe(std::abs(e - 1.0), "cell " + std::to_string(c));
    }
  };

  const std::vector<int> data = iota_positions(n);
  const int runs = circuit.num_measurements() == 0 ? 1 : samples;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < runs; ++s) {
    const auto run =
        run_statevector(circuit, StateVector(circuit.num_qubits(), opts),
                        OutcomePolicy::random(rng()), hook);
    const auto got = run.state.reduced_dense(data);
    fidelity_check.observe(std::max(0.0, 1.0 - overlap(got, want)),
                           "sample " + std::to_string(s));
  }

  const std::string summary = std::to_string(runs) + " sampled runs";
  std::vector<CheckResult> results;
  results.push_back(fidelity_check.done(summary));
  results.push_back(cells_check.done(summary));
  return results;
}

CheckResult verify_cross_engine(int n, int circuits, std::uint64_t seed) {
  if (n < 2) fail("cross-engine verification needs n >= 2");
  if (circuits < 1) fail("cross-engine verification needs at least one circuit");
  const int top = std::min(n, 4);

  CheckBuilder check("tableau replay matches the statevector run (n=2.." + std::to_string(top) +
                         ")",
                     1e-9);

  std::mt19937_64 rng(seed);
  for (int c = 0; c < circuits; ++c) {
    const int nn = 2 + (top > 2 ? c % (top - 1) : 0);
    const std::string where = "circuit " + std::to_string(c) + " (n=" + std::to_string(nn) + ")";

    const DeformationSpec enc = full_encode_spec(nn);
    const DeformationSpec dec = full_decode_spec(nn);
    const auto ms = compile_encode_measurement(enc, "e");
    const auto dm = compile_decode_measurement(dec, "d");
    const int k = enc.code_after.num_qubits();
    const int width = ms.circuit.num_qubits();

    Circuit circuit(width, ms.circuit.qubit_names());
    random_clifford_gates(circuit, data_positions(enc.code_after), 3 * nn, rng);
    append_mapped(circuit, ms.circuit);
    random_clifford_gates(circuit, iota_positions(k), 2 * nn, rng);
    append_mapped(circuit, dm.circuit);

    const auto sv = run_statevector(circuit, StateVector(width), OutcomePolicy::random(rng()));
    std::map<std::string, int> forced;
    for (const auto& record : sv.outcomes) forced[record.name] = record.bit;

    TableauRunResult tb = [&] {
      try {
        return run_stabilizer(circuit, OutcomePolicy::forced_named(forced));
      } catch (const Error& e) {
        check.require(false, where + ": tableau replay rejected the recorded bits: " + e.what());
        return TableauRunResult{Tableau(width), {}};
      }
    }();
    if (!check.r.pass) break;

    check.require(tb.outcomes.size() == sv.outcomes.size(), where + ": record count differs");
    if (tb.outcomes.size() != sv.outcomes.size()) continue;
    for (std::size_t i = 0; i < sv.outcomes.size(); ++i) {
      const auto& a = sv.outcomes[i];
      const auto& b = tb.outcomes[i];
      check.require(a.name == b.name, where + ": outcome order differs at " + a.name);
      check.require(a.bit == b.bit, where + ": bit differs at " + a.name);
      check.require(a.deterministic == b.deterministic,
                    where + ": deterministic flag differs at " + a.name);
      check.observe(std::abs(a.probability - b.probability), where + ": probability at " + a.name);
    }

    const auto dense = sv.state.reduced_dense(iota_positions(width));
    for (int row = 0; row < width; ++row) {
      const auto pauli = tb.tableau.stabilizer(row);
      const auto e = pauli_expectation_dense(dense, pauli.x_support, pauli.z_support);
      check.observe(std::abs(e - static_cast<double>(pauli.sign)),
                    where + ": stabilizer row " + std::to_string(row));
    }
  }

  return check.done(std::to_string(circuits) + " circuits");
}

std::vector<CheckResult> verify_battery(int n, std::uint64_t seed, double tol) {
  if (n < 2) fail("the verification battery needs n >= 2");
  std::vector<CheckResult> all;
  const auto take = [&all](std::vector<CheckResult> part) {
    for (auto& r : part) all.push_back(std::move(r));
  };

  take(verify_encode_protocols(std::min(n, 4), 3, seed, tol));
  take(verify_qft(n, 3, 2, seed + 1, tol));
  take(verify_graph_state(random_graph(std::min(n, 5), seed + 3), 2, seed + 4, tol));
  all.push_back(
      verify_qaoa_landscape(random_all_to_all_problem(std::min(n, 4), seed + 2), 1, 3, tol)
          .check);
  all.push_back(verify_cross_engine(n, 10, seed + 5));
  return all;
}

}  // namespace parityforge
