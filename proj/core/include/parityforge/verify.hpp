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

#ifndef PARITYFORGE_VERIFY_HPP
#define PARITYFORGE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "parityforge/algorithms.hpp"
#include "parityforge/code_model.hpp"

namespace parityforge {

// Outcome of one named verification check. `worst` is the largest deviation
// the check observed (an infidelity, an energy gap, a layer-count difference;
// the name says which) and was compared against `tolerance`.
struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Deterministic problem and graph generators for seeded verification runs:
// all-to-all two-body couplings uniform in [-1, 1], and a graph that keeps
// each of the n(n-1)/2 candidate edges with probability 1/2.
ProblemHamiltonian random_all_to_all_problem(int n, std::uint64_t seed);
GraphSpec random_graph(int n, std::uint64_t seed);

// Runs `trials` random product-state inputs through the triangular-layout
// deformations and reports three checks: every enumerated branch of the
// measurement-based encode matches the CNOT encode, the measurement-based
// decode returns the logical input on every branch, and all cell parities
// are +1 right after the encode corrections. Enumeration densifies the
// whole register, so 2 <= n <= 4.
std::vector<CheckResult> verify_encode_protocols(int n, int trials, std::uint64_t seed,
                                                 double tol);

// Compares the compiled transform against a dense reference built here, on
// `inputs` random product states. Branches are enumerated when the circuit's
// fork count fits the enumeration cap; otherwise each input runs under
// `samples` random outcome seeds. Also checks the cell parities at every
// block's encode marker and the scheduled depth against the closed formula.
std::vector<CheckResult> verify_qft(int n, int inputs, int samples, std::uint64_t seed,
                                    double tol);

CheckResult verify_qft_depth(int n);

struct LandscapePoint {
  double beta = 0.0;
  double gamma = 0.0;
  double parity_energy = 0.0;
  double logical_energy = 0.0;
};

// Energy agreement between the compiled pipeline and the dense logical
// reference over a grid x grid sweep (beta in (0, pi), gamma in (0, 2 pi),
// shared across the p layers). Points come back row-major in beta, then
// gamma, so they can be dumped straight into a table. The batched ancilla
// fan-in keeps n(n+1) - n qubits dense at the encode peak, so n <= 4.
struct LandscapeResult {
  std::vector<LandscapePoint> points;
  CheckResult check;
};

LandscapeResult verify_qaoa_landscape(const ProblemHamiltonian& problem, int p, int grid,
                                      double tol);

// Runs the compiled graph-state pipeline under `samples` random outcome
// seeds and compares the data-qubit state against the closed-form graph
// state (amplitudes 2^{-n/2} (-1)^{edges inside the bitstring}). Also checks
// the cell parities at the encode marker. The encode peak holds n + 2E
// qubits dense, so graphs with n + 2E > 26 are rejected.
std::vector<CheckResult> verify_graph_state(const GraphSpec& graph, int samples,
                                            std::uint64_t seed, double tol);

// Random Clifford preparation + measurement-based encode + random Clifford
// mixing + measurement-based decode, run on the statevector engine with
// random outcomes and replayed on the stabilizer tableau with the recorded
// bits forced. Outcome names, bits, deterministic flags and probabilities
// must agree, and every stabilizer row of the final tableau must have dense
// expectation equal to its sign. The replay check densifies the full
// register, so sizes cycle over 2..min(n, 4).
CheckResult verify_cross_engine(int n, int circuits, std::uint64_t seed);

// The consolidated battery behind the `verify` subcommand: encode protocols,
// transform, landscape, graph state and cross-engine checks, all seeded from
// `seed`. The transform check runs at n itself; the dense checks clamp
// their size to the bounds above (4 for protocols, landscape and replay,
// 5 for the graph).
std::vector<CheckResult> verify_battery(int n, std::uint64_t seed, double tol);

}  // namespace parityforge

#endif
