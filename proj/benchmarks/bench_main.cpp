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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "parityforge/algorithms.hpp"
#include "parityforge/code_model.hpp"
#include "parityforge/codec.hpp"
#include "parityforge/simulate.hpp"
#include "parityforge/tableau.hpp"

namespace {

using namespace parityforge;

// Dense single- and two-qubit kernel throughput on a fully active register.
void bm_statevector_layer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Circuit circuit(n);
  for (int q = 0; q < n; ++q) circuit.h(q);
  for (int q = 0; q + 1 < n; ++q) circuit.cnot(q, q + 1);
  for (int q = 0; q < n; ++q) circuit.rz(q, 0.37);
  for (auto _ : state) {
    RunResult run = run_statevector(circuit, StateVector(n), OutcomePolicy::random(1));
    benchmark::DoNotOptimize(run.state.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circuit.gates().size()));
}
BENCHMARK(bm_statevector_layer)->Arg(10)->Arg(14)->Arg(18);

// Clifford throughput of the tableau engine on wide registers where the
// statevector engine could not follow.
void bm_tableau_cliffords(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, n - 1);
  Circuit circuit(n);
  for (int g = 0; g < 4 * n; ++g) {
    const int q0 = pick(rng);
    switch (rng() % 3) {
      case 0:
        circuit.h(q0);
        break;
      case 1:
        circuit.s(q0);
        break;
      default: {
        int q1 = q0;
        while (q1 == q0) q1 = pick(rng);
        circuit.cnot(q0, q1);
        break;
      }
    }
  }
  for (int q = 0; q < n; ++q) circuit.measure_z(q, "m" + std::to_string(q));
  for (auto _ : state) {
    TableauRunResult run = run_stabilizer(circuit, OutcomePolicy::random(3));
    benchmark::DoNotOptimize(run.outcomes.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circuit.gates().size()));
}
BENCHMARK(bm_tableau_cliffords)->Arg(64)->Arg(256)->Arg(1024);

// Greedy layer scheduling on the largest compiled pipeline.
void bm_schedule_depth(benchmark::State& state) {
  const Circuit circuit = build_qft(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(schedule_depth(circuit));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(circuit.gates().size()));
}
BENCHMARK(bm_schedule_depth)->Arg(6)->Arg(12)->Arg(24);

// Classical correction propagation for the full triangular encode.
void bm_resolve_corrections(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DeformationSpec spec = full_encode_spec(n);
  std::mt19937_64 rng(11);
  std::map<std::string, int> outcomes;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      outcomes["mz" + QubitLabel::pair(i, j).str()] = static_cast<int>(rng() & 1);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolve_corrections(spec, outcomes));
  }
}
BENCHMARK(bm_resolve_corrections)->Arg(4)->Arg(6)->Arg(8);

// Full branch enumeration of the measurement encode, the hot path of the
// protocol-equivalence checks.
void bm_enumerate_encode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MeasurementCompilation ms = compile_encode_measurement(full_encode_spec(n));
  StateVector init(ms.circuit.num_qubits());
  for (int q = 0; q < n; ++q) init.apply(Gate(GateKind::RX, q, -1, 0.7 + 0.1 * q));
  for (auto _ : state) {
    auto branches = enumerate_branches(ms.circuit, init);
    benchmark::DoNotOptimize(branches.data());
  }
}
BENCHMARK(bm_enumerate_encode)->Arg(2)->Arg(3);

// One full energy evaluation of the compiled optimization layer, the unit
// of work the parameter optimizer spends its budget on.
void bm_qaoa_energy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ParityCode code = lhz_layout(n);
  ProblemHamiltonian problem;
  problem.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) problem.terms.push_back({{i, j}, 0.5 + 0.1 * (i + j)});
  }
  QaoaParams params;
  params.betas = {0.4};
  params.gammas = {0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(parity_qaoa_energy(problem, code, params));
  }
}
BENCHMARK(bm_qaoa_energy)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
