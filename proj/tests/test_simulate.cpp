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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <sstream>

#include "parityforge/simulate.hpp"
#include "support/dense_sim.hpp"

using namespace parityforge;
using testing::DenseState;

namespace {

std::vector<int> all_qubits(int n) {
  std::vector<int> q(n);
  for (int i = 0; i < n; ++i) q[i] = i;
  return q;
}

void check_matches_dense(const StateVector& sv, const DenseState& dense, double tol = 1e-9) {
  const auto got = sv.reduced_dense(all_qubits(sv.num_qubits()));
  const auto& want = dense.vec();
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

Gate random_unitary_gate(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> kind_pick(0, 8);
  std::uniform_int_distribution<int> qubit_pick(0, n - 1);
  std::uniform_real_distribution<double> angle_pick(-3.1, 3.1);
  const int q0 = qubit_pick(rng);
  int q1 = qubit_pick(rng);
  while (q1 == q0) q1 = qubit_pick(rng);
  switch (kind_pick(rng)) {
    case 0: return Gate{GateKind::H, q0};
    case 1: return Gate{GateKind::X, q0};
    case 2: return Gate{GateKind::Z, q0};
    case 3: return Gate{GateKind::S, q0};
    case 4: return Gate{GateKind::RZ, q0, -1, angle_pick(rng)};
    case 5: return Gate{GateKind::RX, q0, -1, angle_pick(rng)};
    case 6: return Gate{GateKind::CNOT, q0, q1};
    case 7: return Gate{GateKind::CZ, q0, q1};
    default: return Gate{GateKind::CP, q0, q1, angle_pick(rng)};
  }
}

}  // namespace

TEST_SUITE("dense oracle sanity") {
  TEST_CASE("hadamard and phase behave as expected") {
    DenseState d(1);
    d.apply(Gate{GateKind::H, 0});
    CHECK(std::abs(d.vec()[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(d.vec()[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
    d.apply(Gate{GateKind::S, 0});
    d.apply(Gate{GateKind::S, 0});  // S^2 = Z
    d.apply(Gate{GateKind::H, 0});  // HZH = X, so the net map sends |0> to |1>
    CHECK(std::abs(d.vec()[0]) < 1e-12);
    CHECK(std::abs(d.vec()[1] - 1.0) < 1e-12);
  }

  TEST_CASE("cnot entangles into a bell pair") {
    DenseState d(2);
    d.apply(Gate{GateKind::H, 0});
    d.apply(Gate{GateKind::CNOT, 0, 1});
    CHECK(std::abs(d.vec()[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(d.vec()[3] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(d.vec()[1]) < 1e-12);
    CHECK(std::abs(d.vec()[2]) < 1e-12);
    CHECK(d.pauli_z_expectation(0b11) == doctest::Approx(1.0));
    CHECK(d.pauli_z_expectation(0b01) == doctest::Approx(0.0));
  }

  TEST_CASE("x-basis collapse leaves a physical plus state") {
    DenseState d(1);
    const double p = d.collapse(0, true, 0);
    CHECK(p == doctest::Approx(0.5));
    CHECK(std::abs(d.vec()[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(d.vec()[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
  }
}

TEST_SUITE("statevector gates") {
  TEST_CASE("matches the dense oracle on random unitary circuits") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
      CAPTURE(trial);
      const int n = 5;
      StateVector sv(n);
      DenseState dense(n);
      for (int step = 0; step < 30; ++step) {
        const Gate g = random_unitary_gate(rng, n);
        sv.apply(g);
        dense.apply(g);
      }
      check_matches_dense(sv, dense);
    }
  }

  TEST_CASE("single-qubit stabilizer flows never activate") {
    StateVector sv(3);
    for (const auto& g : {Gate{GateKind::H, 0}, Gate{GateKind::Z, 0}, Gate{GateKind::H, 0},
                          Gate{GateKind::X, 1}, Gate{GateKind::Z, 1}, Gate{GateKind::X, 2},
                          Gate{GateKind::RZ, 2, -1, 0.7}}) {
      sv.apply(g);
    }
    CHECK(sv.num_active() == 0);
    // H Z H = X on qubit 0.
    CHECK(sv.status(0).bit == 1);
    CHECK_FALSE(sv.status(0).x_basis);
    CHECK(sv.status(1).bit == 1);
    CHECK(sv.status(2).bit == 1);

    DenseState dense(3);
    for (const auto& g : {Gate{GateKind::H, 0}, Gate{GateKind::Z, 0}, Gate{GateKind::H, 0},
                          Gate{GateKind::X, 1}, Gate{GateKind::Z, 1}, Gate{GateKind::X, 2},
                          Gate{GateKind::RZ, 2, -1, 0.7}}) {
      dense.apply(g);
    }
    check_matches_dense(sv, dense);
  }

  TEST_CASE("two-qubit gates stay classical when one side is diagonal-safe") {
    SUBCASE("cnot with a classical control copies the bit") {
      StateVector sv(2);
      sv.apply(Gate{GateKind::X, 0});
      sv.apply(Gate{GateKind::CNOT, 0, 1});
      CHECK(sv.num_active() == 0);
      CHECK(sv.status(1).bit == 1);
    }
    SUBCASE("cnot onto an x-basis target kicks phase back") {
      StateVector sv(2);
      sv.apply(Gate{GateKind::X, 0});
      sv.apply(Gate{GateKind::H, 1});
      sv.apply(Gate{GateKind::Z, 1});  // target now |->
      sv.apply(Gate{GateKind::CNOT, 0, 1});
      CHECK(sv.num_active() == 0);
      DenseState dense(2);
      dense.apply(Gate{GateKind::X, 0});
      dense.apply(Gate{GateKind::H, 1});
      dense.apply(Gate{GateKind::Z, 1});
      dense.apply(Gate{GateKind::CNOT, 0, 1});
      check_matches_dense(sv, dense);
    }
    SUBCASE("controlled phases between classical z-basis qubits") {
      StateVector sv(2);
      sv.apply(Gate{GateKind::X, 0});
      sv.apply(Gate{GateKind::X, 1});
      sv.apply(Gate{GateKind::CP, 0, 1, 0.9});
      sv.apply(Gate{GateKind::CZ, 0, 1});
      CHECK(sv.num_active() == 0);
      DenseState dense(2);
      dense.apply(Gate{GateKind::X, 0});
      dense.apply(Gate{GateKind::X, 1});
      dense.apply(Gate{GateKind::CP, 0, 1, 0.9});
      dense.apply(Gate{GateKind::CZ, 0, 1});
      check_matches_dense(sv, dense);
    }
  }

  TEST_CASE("activation honors the active-qubit cap") {
    SimOptions opts;
    opts.max_active_qubits = 3;
    StateVector sv(4, opts);
    sv.apply(Gate{GateKind::H, 0});
    sv.apply(Gate{GateKind::CNOT, 0, 1});
    sv.apply(Gate{GateKind::CNOT, 1, 2});
    CHECK(sv.num_active() == 3);
    CHECK_THROWS_AS(sv.apply(Gate{GateKind::CNOT, 2, 3}), Error);
  }

  TEST_CASE("apply rejects non-unitary gates and bad operands") {
    StateVector sv(2);
    Gate mz{GateKind::MeasureZ, 0};
    mz.outcome = "m";
    CHECK_THROWS_AS(sv.apply(mz), Error);
    CHECK_THROWS_AS(sv.apply(Gate{GateKind::H, 5}), Error);
    CHECK_THROWS_AS(sv.apply(Gate{GateKind::CNOT, 0, 7}), Error);
  }
}

TEST_SUITE("measurement and reset") {
  TEST_CASE("bell pair measurement correlates and deactivates") {
    StateVector sv(2);
    sv.apply(Gate{GateKind::H, 0});
    sv.apply(Gate{GateKind::CNOT, 0, 1});
    CHECK(sv.num_active() == 2);
    auto [p0, p1] = sv.measure_probabilities(0, false);
    CHECK(p0 == doctest::Approx(0.5));
    CHECK(p1 == doctest::Approx(0.5));

    const double p = sv.collapse(0, false, 1);
    CHECK(p == doctest::Approx(0.5));
    CHECK_FALSE(sv.status(0).active);
    CHECK(sv.status(0).bit == 1);

    auto [q0, q1] = sv.measure_probabilities(1, false);
    CHECK(q0 == doctest::Approx(0.0));
    CHECK(q1 == doctest::Approx(1.0));
    CHECK(sv.collapse(1, false, 1) == doctest::Approx(1.0));
    CHECK(sv.num_active() == 0);
  }

  TEST_CASE("x-basis collapse of a bell pair leaves plus states") {
    StateVector sv(2);
    sv.apply(Gate{GateKind::H, 0});
    sv.apply(Gate{GateKind::CNOT, 0, 1});
    const double p = sv.collapse(0, true, 0);
    CHECK(p == doctest::Approx(0.5));
    CHECK_FALSE(sv.status(0).active);
    CHECK(sv.status(0).x_basis);
    CHECK(sv.status(0).bit == 0);
    auto [pplus, pminus] = sv.measure_probabilities(1, true);
    CHECK(pplus == doctest::Approx(1.0));
    CHECK(pminus == doctest::Approx(0.0));
  }

  TEST_CASE("inactive qubits answer measurement queries symbolically") {
    StateVector sv(1);
    sv.apply(Gate{GateKind::H, 0});
    CHECK(sv.num_active() == 0);
    auto [px0, px1] = sv.measure_probabilities(0, true);
    CHECK(px0 == doctest::Approx(1.0));
    CHECK(px1 == doctest::Approx(0.0));
    auto [pz0, pz1] = sv.measure_probabilities(0, false);
    CHECK(pz0 == doctest::Approx(0.5));
    CHECK(pz1 == doctest::Approx(0.5));
    CHECK(sv.collapse(0, false, 1) == doctest::Approx(0.5));
    CHECK(sv.status(0).bit == 1);
    CHECK_FALSE(sv.status(0).x_basis);
  }

  TEST_CASE("collapse onto an impossible outcome throws") {
    StateVector sv(2);
    CHECK_THROWS_AS(sv.collapse(0, false, 1), Error);
    sv.apply(Gate{GateKind::H, 0});
    sv.apply(Gate{GateKind::CNOT, 0, 1});
    sv.collapse(0, false, 0);
    CHECK_THROWS_AS(sv.collapse(1, false, 1), Error);
  }

  TEST_CASE("reset succeeds without measurement when unentangled") {
    SUBCASE("inactive qubit") {
      StateVector sv(1);
      sv.apply(Gate{GateKind::X, 0});
      CHECK(sv.try_reset(0, true));
      CHECK(sv.status(0).x_basis);
      CHECK(sv.status(0).bit == 0);
    }
    SUBCASE("active qubit whose slices are parallel") {
      StateVector sv(2);
      sv.apply(Gate{GateKind::H, 0});
      sv.apply(Gate{GateKind::CNOT, 0, 1});
      sv.apply(Gate{GateKind::CNOT, 0, 1});  // undo: q0 back to |+>, both still active
      CHECK(sv.num_active() == 2);
      CHECK(sv.try_reset(1, false));
      CHECK(sv.try_reset(0, false));
      CHECK(sv.num_active() == 0);
      CHECK(sv.amplitudes().size() == 1);
      CHECK(std::abs(std::abs(sv.amplitudes()[0]) - 1.0) < 1e-12);
    }
    SUBCASE("entangled qubit refuses") {
      StateVector sv(2);
      sv.apply(Gate{GateKind::H, 0});
      sv.apply(Gate{GateKind::CNOT, 0, 1});
      CHECK_FALSE(sv.try_reset(0, false));
      CHECK(sv.num_active() == 2);
    }
  }

  TEST_CASE("expectation values agree with the dense oracle") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
      CAPTURE(trial);
      const int n = 4;
      StateVector sv(n);
      DenseState dense(n);
      for (int step = 0; step < 20; ++step) {
        const Gate g = random_unitary_gate(rng, n);
        sv.apply(g);
        dense.apply(g);
      }
      std::uniform_int_distribution<int> subset_pick(1, (1 << n) - 1);
      const int subset = subset_pick(rng);
      std::vector<int> qubits;
      for (int q = 0; q < n; ++q) {
        if (subset >> q & 1) qubits.push_back(q);
      }
      CHECK(sv.pauli_z_expectation(qubits) ==
            doctest::Approx(dense.pauli_z_expectation(subset)).epsilon(1e-9));
    }
  }

  TEST_CASE("z expectation handles symbolic qubits") {
    StateVector sv(3);
    sv.apply(Gate{GateKind::X, 0});
    sv.apply(Gate{GateKind::H, 1});
    CHECK(sv.pauli_z_expectation({0}) == doctest::Approx(-1.0));
    CHECK(sv.pauli_z_expectation({1}) == doctest::Approx(0.0));
    CHECK(sv.pauli_z_expectation({2}) == doctest::Approx(1.0));
    CHECK(sv.pauli_z_expectation({0, 0}) == doctest::Approx(1.0));  // Z*Z = I
  }
}

TEST_SUITE("state comparison") {
  TEST_CASE("global phase is ignored") {
    StateVector a(2);
    StateVector b(2);
    a.apply(Gate{GateKind::H, 0});
    a.apply(Gate{GateKind::CNOT, 0, 1});
    b.apply(Gate{GateKind::H, 0});
    b.apply(Gate{GateKind::CNOT, 0, 1});
    b.apply(Gate{GateKind::RZ, 0, -1, 1.3});
    b.apply(Gate{GateKind::RZ, 0, -1, -1.3});
    CHECK(same_state_up_to_global_phase(a, b, 1e-9));
    b.apply(Gate{GateKind::Z, 0});  // genuinely different state now
    CHECK_FALSE(same_state_up_to_global_phase(a, b, 1e-9));
  }

  TEST_CASE("symbolic configurations compare correctly") {
    StateVector zero(1);
    StateVector one(1);
    one.apply(Gate{GateKind::X, 0});
    StateVector plus(1);
    plus.apply(Gate{GateKind::H, 0});
    CHECK(same_state_up_to_global_phase(zero, zero, 1e-9));
    CHECK_FALSE(same_state_up_to_global_phase(zero, one, 1e-9));
    CHECK_FALSE(same_state_up_to_global_phase(zero, plus, 1e-9));

    // A phase picked up through a classical fast path is still global.
    StateVector scaled(1);
    scaled.apply(Gate{GateKind::X, 0});
    scaled.apply(Gate{GateKind::RZ, 0, -1, 0.4});
    CHECK(same_state_up_to_global_phase(one, scaled, 1e-9));
  }

  TEST_CASE("active and symbolic encodings of the same state match") {
    StateVector symbolic(2);
    symbolic.apply(Gate{GateKind::H, 0});

    StateVector active(2);
    active.apply(Gate{GateKind::H, 0});
    active.apply(Gate{GateKind::CNOT, 0, 1});
    active.apply(Gate{GateKind::CNOT, 0, 1});  // |+>|0> with q0, q1 active
    CHECK(active.num_active() == 2);
    CHECK(same_state_up_to_global_phase(symbolic, active, 1e-9));
  }
}

TEST_SUITE("runner") {
  TEST_CASE("teleportation moves an arbitrary state through conditionals") {
    Circuit c(3);
    c.rx(0, 0.83);
    c.rz(0, -1.1);
    c.h(1);
    c.cnot(1, 2);
    c.cnot(0, 1);
    c.h(0);
    c.measure_z(0, "m0");
    c.measure_z(1, "m1");
    c.cond_x(2, {"m1"});
    c.cond_z(2, {"m0"});

    StateVector expected(3);
    expected.apply(Gate{GateKind::RX, 2, -1, 0.83});
    expected.apply(Gate{GateKind::RZ, 2, -1, -1.1});
    const auto want = expected.reduced_dense({2});

    const auto branches = enumerate_branches(c, StateVector(3));
    REQUIRE(branches.size() == 4);
    double total = 0.0;
    for (const auto& br : branches) {
      CHECK(br.probability == doctest::Approx(0.25));
      total += br.probability;
      const auto got = br.state.reduced_dense({2});
      std::complex<double> inner = 0.0;
      for (std::size_t i = 0; i < got.size(); ++i) inner += std::conj(want[i]) * got[i];
      CHECK(std::abs(inner) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(total == doctest::Approx(1.0));
  }

  TEST_CASE("forced runs agree with the matching enumerated branch") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
      CAPTURE(trial);
      Circuit c(4);
      int measured = 0;
      for (int step = 0; step < 18; ++step) {
        if (step % 6 == 5 && measured < 3) {
          const int q = measured;
          c.measure_z(q, "m" + std::to_string(measured));
          ++measured;
        } else {
          c.append(random_unitary_gate(rng, 4));
        }
      }
      const auto branches = enumerate_branches(c, StateVector(4));
      double total = 0.0;
      for (const auto& br : branches) total += br.probability;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

      for (int pattern = 0; pattern < 8; ++pattern) {
        std::vector<int> bits = {pattern & 1, pattern >> 1 & 1, pattern >> 2 & 1};
        const Branch* match = nullptr;
        for (const auto& br : branches) {
          bool same = br.outcomes.size() == 3;
          for (std::size_t i = 0; same && i < br.outcomes.size(); ++i) {
            same = br.outcomes[i].bit == bits[i];
          }
          if (same) {
            match = &br;
            break;
          }
        }
        if (match == nullptr) {
          CHECK_THROWS_AS(run_statevector(c, StateVector(4), OutcomePolicy::forced(bits)), Error);
          continue;
        }
        const auto result = run_statevector(c, StateVector(4), OutcomePolicy::forced(bits));
        REQUIRE(result.outcomes.size() == 3);
        double prob = 1.0;
        for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
          CHECK(result.outcomes[i].bit == bits[i]);
          prob *= result.outcomes[i].probability;
        }
        CHECK(prob == doctest::Approx(match->probability).epsilon(1e-9));
        CHECK(same_state_up_to_global_phase(result.state, match->state, 1e-9));
      }
    }
  }

  TEST_CASE("random policy is reproducible per seed") {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) c.h(q);
    c.cnot(0, 1);
    c.cnot(1, 2);
    for (int q = 0; q < 3; ++q) c.measure_z(q, "m" + std::to_string(q));

    auto bits_for = [&](std::uint64_t seed) {
      const auto result = run_statevector(c, StateVector(3), OutcomePolicy::random(seed));
      std::vector<int> bits;
      for (const auto& r : result.outcomes) bits.push_back(r.bit);
      return bits;
    };
    CHECK(bits_for(9) == bits_for(9));
    CHECK(bits_for(10) == bits_for(10));
  }

  TEST_CASE("policy errors") {
    Circuit c(1);
    c.h(0);
    c.measure_z(0, "m");
    SUBCASE("forced list too short") {
      CHECK_THROWS_AS(run_statevector(c, StateVector(1), OutcomePolicy::forced({})), Error);
    }
    SUBCASE("forced-named map missing a random outcome") {
      CHECK_THROWS_AS(
          run_statevector(c, StateVector(1), OutcomePolicy::forced_named({{"other", 0}})), Error);
    }
    SUBCASE("forcing an impossible branch") {
      Circuit det(1);
      det.measure_z(0, "m");
      CHECK_THROWS_AS(run_statevector(det, StateVector(1), OutcomePolicy::forced({1})), Error);
      const auto ok = run_statevector(det, StateVector(1), OutcomePolicy::forced({0}));
      REQUIRE(ok.outcomes.size() == 1);
      CHECK(ok.outcomes[0].bit == 0);
      CHECK(ok.outcomes[0].deterministic);
      CHECK(ok.outcomes[0].probability == doctest::Approx(1.0));
    }
    SUBCASE("forced-named may omit deterministic outcomes") {
      Circuit det(1);
      det.measure_z(0, "m");
      const auto ok = run_statevector(det, StateVector(1), OutcomePolicy::forced_named({}));
      CHECK(ok.outcomes.size() == 1);
    }
  }

  TEST_CASE("reset on an entangled qubit records a hidden choice") {
    Circuit c(2);
    c.h(0);
    c.cnot(0, 1);
    c.reset_0(0);

    const auto result = run_statevector(c, StateVector(2), OutcomePolicy::random(3));
    REQUIRE(result.outcomes.size() == 1);
    CHECK(result.outcomes[0].name == "reset(q0)@2");
    CHECK(result.outcomes[0].probability == doctest::Approx(0.5));
    CHECK_FALSE(result.outcomes[0].deterministic);
    CHECK_FALSE(result.state.status(0).active);
    CHECK(result.state.status(0).bit == 0);
    CHECK(result.state.status(1).bit == result.outcomes[0].bit);

    // Unentangled resets are silent.
    Circuit quiet(2);
    quiet.x(0);
    quiet.reset_plus(0);
    const auto silent = run_statevector(quiet, StateVector(2), OutcomePolicy::random(3));
    CHECK(silent.outcomes.empty());
    CHECK(silent.state.status(0).x_basis);

    // Named qubits show up in the hidden record.
    Circuit named(2, {"alpha", "beta"});
    named.h(0);
    named.cnot(0, 1);
    named.reset_0(1);
    const auto r2 = run_statevector(named, StateVector(2), OutcomePolicy::random(5));
    REQUIRE(r2.outcomes.size() == 1);
    CHECK(r2.outcomes[0].name == "reset(beta)@2");
  }

  TEST_CASE("markers fire before their gate and once per branch crossing") {
    Circuit c(1);
    c.mark("start");
    c.h(0);
    c.measure_z(0, "m");
    c.mark("end");

    std::vector<std::string> seen;
    auto hook = [&](const std::string& label, const StateVector&) { seen.push_back(label); };
    run_statevector(c, StateVector(1), OutcomePolicy::random(1), hook);
    CHECK(seen == std::vector<std::string>{"start", "end"});

    seen.clear();
    enumerate_branches(c, StateVector(1), hook);
    // "start" precedes the fork and fires once; "end" fires per branch.
    CHECK(std::count(seen.begin(), seen.end(), "start") == 1);
    CHECK(std::count(seen.begin(), seen.end(), "end") == 2);
  }
}

TEST_SUITE("branch enumeration") {
  TEST_CASE("uniform three-qubit fan-out") {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) {
      c.h(q);
      c.measure_z(q, "m" + std::to_string(q));
    }
    const auto branches = enumerate_branches(c, StateVector(3));
    REQUIRE(branches.size() == 8);
    double total = 0.0;
    for (const auto& br : branches) {
      CHECK(br.probability == doctest::Approx(0.125));
      total += br.probability;
    }
    CHECK(total == doctest::Approx(1.0));
  }

  TEST_CASE("deterministic measurements do not fork") {
    Circuit c(2);
    c.h(0);
    c.measure_z(0, "random");
    c.measure_z(1, "fixed");
    const auto branches = enumerate_branches(c, StateVector(2));
    REQUIRE(branches.size() == 2);
    for (const auto& br : branches) {
      REQUIRE(br.outcomes.size() == 2);
      CHECK(br.outcomes[1].name == "fixed");
      CHECK(br.outcomes[1].bit == 0);
      CHECK(br.outcomes[1].deterministic);
    }
  }

  TEST_CASE("entangled resets fork with renormalized continuations") {
    Circuit c(2);
    c.h(0);
    c.cnot(0, 1);
    c.reset_0(0);
    c.measure_z(1, "m1");
    const auto branches = enumerate_branches(c, StateVector(2));
    REQUIRE(branches.size() == 2);
    for (const auto& br : branches) {
      REQUIRE(br.outcomes.size() == 2);
      CHECK(br.outcomes[0].name == "reset(q0)@2");
      CHECK(br.probability == doctest::Approx(0.5));
      // After the reset collapse the data qubit is definite.
      CHECK(br.outcomes[1].bit == br.outcomes[0].bit);
      CHECK(br.outcomes[1].deterministic);
    }
  }

  TEST_CASE("measurement count cap") {
    SimOptions opts;
    opts.max_enumerated_measurements = 4;
    Circuit c(1);
    for (int i = 0; i < 5; ++i) c.measure_z(0, "m" + std::to_string(i));
    CHECK_THROWS_AS(enumerate_branches(c, StateVector(1, opts)), Error);
  }
}

TEST_SUITE("options") {
  TEST_CASE("environment override for the active-qubit cap") {
    ::setenv("PARITY_FORGE_MAX_QUBITS", "7", 1);
    CHECK(default_sim_options().max_active_qubits == 7);
    ::setenv("PARITY_FORGE_MAX_QUBITS", "not-a-number", 1);
    CHECK(default_sim_options().max_active_qubits == 20);
    ::unsetenv("PARITY_FORGE_MAX_QUBITS");
    CHECK(default_sim_options().max_active_qubits == 20);
  }
}
