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

#ifndef PARITYFORGE_ALGORITHMS_HPP
#define PARITYFORGE_ALGORITHMS_HPP

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "parityforge/circuit_ir.hpp"
#include "parityforge/code_model.hpp"
#include "parityforge/codec.hpp"

namespace parityforge {

// One Ising-type interaction: coupling J times the Z product over the listed
// logical indices. Any interaction order is allowed.
struct ProblemTerm {
  std::vector<int> indices;  // sorted, unique, within [0, n)
  double coupling = 0.0;
};

struct ProblemHamiltonian {
  int n = 0;
  std::vector<ProblemTerm> terms;
};

// Throws on empty or out-of-range index sets and duplicate sets.
void validate_problem(const ProblemHamiltonian& problem);

struct QaoaParams {
  std::vector<double> betas;
  std::vector<double> gammas;  // same length as betas, >= 1
};

struct GraphSpec {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // simple, no self-loops
};

// Greedy lowest-weight set of qubits whose labels span all logical indices.
// Measuring these in the Z basis determines every logical Z value. Throws
// when the code's labels do not span the logical space.
std::vector<int> choose_readout_basis(const ParityCode& code);

// One optimization layer per parameter pair: measurement-based encode of all
// qubits outside the readout basis, RZ(2*gamma*J) on each term's qubit,
// measurement-based decode back to the readout basis, and RX(2*beta) mixers
// on the basis qubits. The basis is the data row when it is complete and
// choose_readout_basis otherwise. Markers "encoded:e<j>" and "decoded:d<j>"
// bracket each layer's encoded section.
Circuit build_qaoa_circuit(const ProblemHamiltonian& problem, const QaoaParams& params,
                           const ParityCode& code);

// <H_P> of the compiled circuit's output state; measurement branches agree,
// so a single run with the seeded outcome policy suffices.
double parity_qaoa_energy(const ProblemHamiltonian& problem, const ParityCode& code,
                          const QaoaParams& params, std::uint64_t seed = 1);

// Dense unencoded QAOA expectation value on up to 12 logical qubits:
// applies exp(-i gamma_j H_P) and exp(-i beta_j sum X) to |+...+> per layer
// and returns <H_P>.
double reference_logical_qaoa(const ProblemHamiltonian& problem, const QaoaParams& params);

struct OptimizeResult {
  QaoaParams params;
  double energy = 0.0;
  std::vector<double> trace;  // best energy so far after each evaluation
};

// Derivative-free simplex search over the 2p parameters, seeded from a fixed
// grid of starting points; spends at most `budget` energy evaluations.
OptimizeResult optimize_params(const ProblemHamiltonian& problem, const ParityCode& code, int p,
                               int budget);

// Quantum Fourier transform on a width-3 strip: data qubits in the middle
// row and two parity rows that are encoded and decoded per two-column block.
// Register layout: data 0..n-1, then the top parity row, the bottom parity
// row, and one measurement ancilla per cell of each row.
Circuit build_qft(int n);

struct QftDepth {
  int measure = 0;
  int cnot = 0;
};

// Scheduled layer counts of build_qft(n): n-2 measure and 3n-4 CNOT layers
// for even n, n-1 and 3n-3 for odd n.
QftDepth qft_depth_formula(int n);

// Single-qubit realization of a logical controlled-phase gate between
// logical i and j: RZ(phi/2) on data (i) and (j), RZ(-phi/2) on parity
// (i,j), and a global phase of e^{i phi/4}.
struct LogicalCpDecomposition {
  int data_i = -1;
  int data_j = -1;
  int parity = -1;  // qubit indices in the code
  double data_angle = 0.0;
  double parity_angle = 0.0;
  std::complex<double> global_phase{1.0, 0.0};
};

LogicalCpDecomposition logical_cp_decomposition(const ParityCode& code, int i, int j, double phi);

// Data row plus one parity qubit and one triangle cell per edge.
ParityCode graph_state_layout(const GraphSpec& graph);

// Prepares the graph state of `graph` on the data qubits: |+> preparation,
// measurement-based encode of the edge parity qubits, one merged RZ layer
// realizing every logical CZ, and a decode back to the data row.
Circuit build_graph_state(const GraphSpec& graph);

enum class PauliBasis { X, Y, Z };

struct DiagonalTerm {
  PauliBasis kind = PauliBasis::Z;
  std::vector<int> indices;  // sorted, unique logical indices
  double alpha = 0.0;        // exp(i alpha * product of Paulis)
};

// Compiles prod_k exp(i alpha_k prod_j sigma_j) for terms sharing one Pauli
// basis: a basis-change layer on the data qubits, measurement-based encode
// of the term qubits, one merged RZ layer, decode, and the inverse basis
// change.
Circuit compile_diagonal_block(const std::vector<DiagonalTerm>& terms, PauliBasis basis,
                               const ParityCode& code);

}  // namespace parityforge

#endif
