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

#include "parityforge/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <future>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "parityforge/errors.hpp"
#include "parityforge/gf2.hpp"
#include "parityforge/simulate.hpp"

namespace parityforge {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("algorithms", message); }

std::string index_set_str(const std::vector<int>& indices) {
  std::string out = "(";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(indices[i]);
  }
  return out + ")";
}

void check_layer_counts(const QaoaParams& params) {
  if (params.betas.empty()) fail("needs at least one layer");
  if (params.betas.size() != params.gammas.size()) {
    fail("betas and gammas must have the same length");
  }
}

ParityCode data_row_code(int n) {
  std::vector<QubitLabel> qubits;
  qubits.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) qubits.push_back(QubitLabel::single(i));
  return ParityCode(n, std::move(qubits), {});
}

// A readout frame: the chosen basis qubits and, per logical index, the row
// selecting which basis bits XOR to that logical Z value.
struct ReadoutFrame {
  std::vector<int> basis;        // code qubit indices, ascending
  std::vector<Gf2Word> rows;     // bit j of row i selects basis[j]
};

ReadoutFrame make_frame(const ParityCode& code) {
  std::vector<int> basis;
  bool all_data = true;
  for (int i = 0; i < code.n(); ++i) {
    auto q = code.find(QubitLabel::single(i));
    if (!q) {
      all_data = false;
      break;
    }
    basis.push_back(*q);
  }
  if (!all_data) basis = choose_readout_basis(code);
  std::sort(basis.begin(), basis.end());
  ReadoutCheck check = is_valid_readout_basis(code, basis);
  if (!check.basis) fail("internal: chosen readout basis lost rank");
  return ReadoutFrame{check.basis->chosen, check.basis->transform};
}

// Basis qubits whose labels XOR to `mask`, ascending.
std::vector<int> frame_decompose(const ReadoutFrame& frame, Gf2Word mask) {
  Gf2Word selected = 0;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) selected ^= frame.rows[static_cast<std::size_t>(i)];
  }
  std::vector<int> out;
  for (std::size_t j = 0; j < frame.basis.size(); ++j) {
    if ((selected >> j) & 1) out.push_back(frame.basis[j]);
  }
  return out;
}

std::vector<int> outside_basis(const ParityCode& code, const ReadoutFrame& frame) {
  std::set<int> in_basis(frame.basis.begin(), frame.basis.end());
  std::vector<int> out;
  for (int q = 0; q < code.num_qubits(); ++q) {
    if (!in_basis.contains(q)) out.push_back(q);
  }
  return out;
}

std::vector<QubitLabel> star_constraint(const ParityCode& code, const ReadoutFrame& frame,
                                        int qubit) {
  std::vector<QubitLabel> members{code.label(qubit)};
  for (int b : frame_decompose(frame, code.label(qubit).mask())) {
    members.push_back(code.label(b));
  }
  return members;
}

// Encode choices for growing the readout basis into the full code. The code's
// own cells are matched greedily (each fixes its longest-range unfixed added
// member); anything left over falls back to the constraint against the basis
// qubits that decompose its label.
std::vector<DeformationChoice> frame_encode_choices(const ParityCode& code,
                                                    const ReadoutFrame& frame) {
  std::set<int> in_basis(frame.basis.begin(), frame.basis.end());
  std::map<int, std::vector<QubitLabel>> fixed;
  for (const Constraint& cell : code.constraints()) {
    int best = -1;
    int best_spread = -1;
    for (int m : cell.members) {
      if (in_basis.contains(m) || fixed.contains(m)) continue;
      const QubitLabel& label = code.label(m);
      int spread = label.max_index() - label.indices().front();
      if (best < 0 || spread > best_spread ||
          (spread == best_spread && label > code.label(best))) {
        best = m;
        best_spread = spread;
      }
    }
    if (best < 0) continue;
    std::vector<QubitLabel> members;
    members.reserve(cell.members.size());
    for (int m : cell.members) members.push_back(code.label(m));
    fixed.emplace(best, std::move(members));
  }
  std::vector<DeformationChoice> choices;
  for (int q : outside_basis(code, frame)) {
    auto hit = fixed.find(q);
    if (hit != fixed.end()) {
      choices.push_back({code.label(q), hit->second});
    } else {
      choices.push_back({code.label(q), star_constraint(code, frame, q)});
    }
  }
  return choices;
}

std::vector<DeformationChoice> frame_decode_choices(const ParityCode& code,
                                                    const ReadoutFrame& frame) {
  std::vector<DeformationChoice> choices;
  for (int q : outside_basis(code, frame)) {
    choices.push_back({code.label(q), star_constraint(code, frame, q)});
  }
  return choices;
}

ParityCode basis_subcode(const ParityCode& code, const ReadoutFrame& frame) {
  std::vector<QubitLabel> qubits;
  qubits.reserve(frame.basis.size());
  for (int q : frame.basis) qubits.push_back(code.label(q));
  return ParityCode(code.n(), std::move(qubits), {});
}

struct TermSite {
  int qubit = -1;       // code qubit carrying the term's parity
  double coupling = 0.0;
  Gf2Word mask = 0;
};

std::vector<TermSite> locate_terms(const ProblemHamiltonian& problem, const ParityCode& code) {
  std::vector<TermSite> sites;
  sites.reserve(problem.terms.size());
  for (const ProblemTerm& term : problem.terms) {
    QubitLabel label(term.indices);
    auto q = code.find(label);
    if (!q) fail("code has no qubit for term " + label.str());
    sites.push_back({*q, term.coupling, label.mask()});
  }
  return sites;
}

void append_identity_mapped(Circuit& host, const Circuit& part) {
  std::vector<int> map(static_cast<std::size_t>(part.num_qubits()));
  std::iota(map.begin(), map.end(), 0);
  host.append_circuit(part, map);
}

double problem_energy(const ProblemHamiltonian& problem, const ParityCode& code,
                      const ReadoutFrame& frame, const StateVector& state) {
  double energy = 0.0;
  for (const TermSite& site : locate_terms(problem, code)) {
    energy += site.coupling * state.pauli_z_expectation(frame_decompose(frame, site.mask));
  }
  return energy;
}

}  // namespace

void validate_problem(const ProblemHamiltonian& problem) {
  if (problem.n < 1) fail("problem needs at least one logical qubit");
  std::set<std::vector<int>> seen;
  for (std::size_t t = 0; t < problem.terms.size(); ++t) {
    const std::vector<int>& idx = problem.terms[t].indices;
    if (idx.empty()) fail("term " + std::to_string(t) + " has no indices");
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 0 || idx[i] >= problem.n) {
        fail("term " + std::to_string(t) + " index " + std::to_string(idx[i]) +
             " is out of range");
      }
      if (i > 0 && idx[i] <= idx[i - 1]) {
        fail("term " + std::to_string(t) + " indices must be strictly increasing");
      }
    }
    if (!seen.insert(idx).second) {
      fail("two terms address the same index set " + index_set_str(idx));
    }
  }
}

std::vector<int> choose_readout_basis(const ParityCode& code) {
  std::vector<int> order(static_cast<std::size_t>(code.num_qubits()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&code](int a, int b) {
    const QubitLabel& la = code.label(a);
    const QubitLabel& lb = code.label(b);
    if (la.weight() != lb.weight()) return la.weight() < lb.weight();
    return la < lb;
  });
  std::map<int, Gf2Word> pivots;
  std::vector<int> chosen;
  for (int q : order) {
    if (static_cast<int>(chosen.size()) == code.n()) break;
    Gf2Word w = code.label(q).mask();
    while (w != 0) {
      auto hit = pivots.find(std::countr_zero(w));
      if (hit == pivots.end()) break;
      w ^= hit->second;
    }
    if (w == 0) continue;
    pivots.emplace(std::countr_zero(w), w);
    chosen.push_back(q);
  }
  if (static_cast<int>(chosen.size()) < code.n()) {
    fail("code labels span only rank " + std::to_string(chosen.size()) + " of " +
         std::to_string(code.n()) + " logical qubits; no readout basis exists");
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Circuit build_qaoa_circuit(const ProblemHamiltonian& problem, const QaoaParams& params,
                           const ParityCode& code) {
  validate_problem(problem);
  check_layer_counts(params);
  if (problem.n != code.n()) {
    fail("problem has " + std::to_string(problem.n) + " logical qubits but the code has " +
         std::to_string(code.n()));
  }
  ReadoutFrame frame = make_frame(code);
  std::vector<TermSite> sites = locate_terms(problem, code);
  ParityCode basis_code = basis_subcode(code, frame);
  DeformationSpec enc = encode_spec(basis_code, code, frame_encode_choices(code, frame));
  DeformationSpec dec = decode_spec(code, basis_code, frame_decode_choices(code, frame));

  int data_count = code.num_qubits();
  int ancillas = static_cast<int>(enc.choices.size());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(data_count + ancillas));
  for (const QubitLabel& label : code.qubits()) names.push_back(label.str());
  for (const DeformationChoice& choice : enc.choices) names.push_back("anc" + choice.qubit.str());
  Circuit circuit(data_count + ancillas, std::move(names));

  for (int q : frame.basis) circuit.reset_plus(q);
  int p = static_cast<int>(params.betas.size());
  for (int layer = 0; layer < p; ++layer) {
    std::string id = std::to_string(layer);
    MeasurementCompilation grown = compile_encode_measurement(enc, "e" + id);
    circuit.append_circuit(grown.circuit);
    circuit.mark("encoded:e" + id);
    for (const TermSite& site : sites) {
      circuit.rz(site.qubit, 2.0 * params.gammas[static_cast<std::size_t>(layer)] * site.coupling);
    }
    MeasurementCompilation shrunk = compile_decode_measurement(dec, "d" + id);
    append_identity_mapped(circuit, shrunk.circuit);
    circuit.mark("decoded:d" + id);
    for (int q : frame.basis) {
      circuit.rx(q, 2.0 * params.betas[static_cast<std::size_t>(layer)]);
    }
  }
  return circuit;
}

double parity_qaoa_energy(const ProblemHamiltonian& problem, const ParityCode& code,
                          const QaoaParams& params, std::uint64_t seed) {
  Circuit circuit = build_qaoa_circuit(problem, params, code);
  SimOptions opts = default_sim_options();
  opts.max_active_qubits = std::max(opts.max_active_qubits, circuit.num_qubits());
  RunResult result =
      run_statevector(circuit, StateVector(circuit.num_qubits(), opts), OutcomePolicy::random(seed));
  return problem_energy(problem, code, make_frame(code), result.state);
}

double reference_logical_qaoa(const ProblemHamiltonian& problem, const QaoaParams& params) {
  validate_problem(problem);
  check_layer_counts(params);
  if (problem.n > 12) fail("reference evaluator supports at most 12 logical qubits");

  std::size_t dim = std::size_t{1} << problem.n;
  std::vector<double> energy_of(dim, 0.0);
  for (const ProblemTerm& term : problem.terms) {
    Gf2Word mask = QubitLabel(term.indices).mask();
    for (std::size_t b = 0; b < dim; ++b) {
      energy_of[b] += (std::popcount(b & mask) & 1) ? -term.coupling : term.coupling;
    }
  }

  const std::complex<double> minus_i(0.0, -1.0);
  std::vector<std::complex<double>> amp(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (std::size_t layer = 0; layer < params.betas.size(); ++layer) {
    double gamma = params.gammas[layer];
    for (std::size_t b = 0; b < dim; ++b) {
      amp[b] *= std::exp(minus_i * (gamma * energy_of[b]));
    }
    double c = std::cos(params.betas[layer]);
    std::complex<double> s = minus_i * std::sin(params.betas[layer]);
    for (int q = 0; q < problem.n; ++q) {
      std::size_t bit = std::size_t{1} << q;
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & bit) continue;
        std::complex<double> a0 = amp[b];
        std::complex<double> a1 = amp[b | bit];
        amp[b] = c * a0 + s * a1;
        amp[b | bit] = c * a1 + s * a0;
      }
    }
  }

  double energy = 0.0;
  for (std::size_t b = 0; b < dim; ++b) energy += std::norm(amp[b]) * energy_of[b];
  return energy;
}

OptimizeResult optimize_params(const ProblemHamiltonian& problem, const ParityCode& code, int p,
                               int budget) {
  validate_problem(problem);
  if (p < 1) fail("needs at least one layer");
  if (budget < 1) fail("needs a positive evaluation budget");

  const int dim = 2 * p;
  auto unpack = [p](const std::vector<double>& x) {
    QaoaParams prm;
    prm.betas.assign(x.begin(), x.begin() + p);
    prm.gammas.assign(x.begin() + p, x.end());
    return prm;
  };
  auto energy_at = [&](const std::vector<double>& x) {
    return parity_qaoa_energy(problem, code, unpack(x), 1);
  };

  OptimizeResult result;
  result.energy = 0.0;
  int used = 0;
  std::vector<double> best_x;
  double best_f = 0.0;
  auto record = [&](const std::vector<double>& x, double f) {
    if (best_x.empty() || f < best_f) {
      best_f = f;
      best_x = x;
    }
    ++used;
    result.trace.push_back(best_f);
  };
  auto try_eval = [&](const std::vector<double>& x) -> std::optional<double> {
    if (used >= budget) return std::nullopt;
    double f = energy_at(x);
    record(x, f);
    return f;
  };

  // Deterministic grid of starting points, evaluated concurrently; the
  // landscape is pi-periodic in gamma for integer couplings, so a coarse
  // sweep of one period locates the right basin.
  const double pi = std::numbers::pi;
  std::vector<std::vector<double>> starts;
  for (double beta : {pi / 8, 3 * pi / 8}) {
    for (double gamma : {pi / 8, 3 * pi / 8, 5 * pi / 8, 7 * pi / 8}) {
      std::vector<double> x(static_cast<std::size_t>(dim));
      std::fill(x.begin(), x.begin() + p, beta);
      std::fill(x.begin() + p, x.end(), gamma);
      starts.push_back(std::move(x));
    }
  }
  std::size_t grid_count = std::min(starts.size(), static_cast<std::size_t>(budget));
  std::vector<std::future<double>> futures;
  futures.reserve(grid_count);
  for (std::size_t g = 0; g < grid_count; ++g) {
    futures.push_back(std::async(std::launch::async, energy_at, starts[g]));
  }
  for (std::size_t g = 0; g < grid_count; ++g) record(starts[g], futures[g].get());

  // Nelder-Mead from the best grid point.
  std::vector<std::vector<double>> verts{best_x};
  std::vector<double> f_of{best_f};
  for (int d = 0; d < dim && used < budget; ++d) {
    std::vector<double> v = verts[0];
    v[static_cast<std::size_t>(d)] += pi / 16;
    auto fv = try_eval(v);
    if (!fv) break;
    verts.push_back(std::move(v));
    f_of.push_back(*fv);
  }
  if (static_cast<int>(verts.size()) == dim + 1) {
    auto centroid_excluding = [&](std::size_t skip) {
      std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
      for (std::size_t v = 0; v < verts.size(); ++v) {
        if (v == skip) continue;
        for (int d = 0; d < dim; ++d) c[static_cast<std::size_t>(d)] += verts[v][static_cast<std::size_t>(d)];
      }
      for (double& x : c) x /= dim;
      return c;
    };
    auto blend = [dim](const std::vector<double>& a, const std::vector<double>& b, double t) {
      // a + t * (a - b)
      std::vector<double> out(static_cast<std::size_t>(dim));
      for (int d = 0; d < dim; ++d) {
        std::size_t k = static_cast<std::size_t>(d);
        out[k] = a[k] + t * (a[k] - b[k]);
      }
      return out;
    };
    while (used < budget) {
      std::vector<std::size_t> rank(verts.size());
      std::iota(rank.begin(), rank.end(), std::size_t{0});
      std::sort(rank.begin(), rank.end(),
                [&f_of](std::size_t a, std::size_t b) { return f_of[a] < f_of[b]; });
      std::size_t lo = rank.front();
      std::size_t hi = rank.back();
      std::size_t next_hi = rank[rank.size() - 2];
      double span = 0.0;
      for (std::size_t v = 0; v < verts.size(); ++v) {
        for (int d = 0; d < dim; ++d) {
          span = std::max(span, std::abs(verts[v][static_cast<std::size_t>(d)] -
                                         verts[lo][static_cast<std::size_t>(d)]));
        }
      }
      if (f_of[hi] - f_of[lo] < 1e-10 && span < 1e-8) break;

      std::vector<double> centroid = centroid_excluding(hi);
      auto reflected = blend(centroid, verts[hi], 1.0);
      auto fr = try_eval(reflected);
      if (!fr) break;
      if (*fr < f_of[lo]) {
        auto expanded = blend(centroid, verts[hi], 2.0);
        auto fe = try_eval(expanded);
        if (fe && *fe < *fr) {
          verts[hi] = std::move(expanded);
          f_of[hi] = *fe;
        } else {
          verts[hi] = std::move(reflected);
          f_of[hi] = *fr;
        }
      } else if (*fr < f_of[next_hi]) {
        verts[hi] = std::move(reflected);
        f_of[hi] = *fr;
      } else {
        auto contracted = blend(centroid, verts[hi], -0.5);
        auto fc = try_eval(contracted);
        if (!fc) break;
        if (*fc < f_of[hi]) {
          verts[hi] = std::move(contracted);
          f_of[hi] = *fc;
        } else {
          bool out_of_budget = false;
          for (std::size_t v = 0; v < verts.size() && !out_of_budget; ++v) {
            if (v == lo) continue;
            for (int d = 0; d < dim; ++d) {
              std::size_t k = static_cast<std::size_t>(d);
              verts[v][k] = verts[lo][k] + 0.5 * (verts[v][k] - verts[lo][k]);
            }
            auto fv = try_eval(verts[v]);
            if (!fv) {
              out_of_budget = true;
              break;
            }
            f_of[v] = *fv;
          }
          if (out_of_budget) break;
        }
      }
    }
  }

  result.params = unpack(best_x);
  result.energy = best_f;
  return result;
}

Circuit build_qft(int n) {
  if (n < 2) fail("needs at least two logical qubits");
  const double pi = std::numbers::pi;
  // Register: data row, top parity row, bottom parity row, then one
  // measurement ancilla per cell of each row.
  auto top = [n](int k) { return n + (k - 1); };
  auto bottom = [n](int l) { return (2 * n - 1) + (l - 2); };
  auto top_anc = [n](int k) { return (3 * n - 3) + (k - 1); };
  auto bottom_anc = [n](int l) { return (4 * n - 4) + (l - 2); };
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(QubitLabel::single(i).str());
  for (int k = 1; k < n; ++k) names.push_back("t" + std::to_string(k));
  for (int l = 2; l < n; ++l) names.push_back("b" + std::to_string(l));
  for (int k = 1; k < n; ++k) names.push_back("ta" + std::to_string(k));
  for (int l = 2; l < n; ++l) names.push_back("ba" + std::to_string(l));
  Circuit circuit(5 * n - 6, std::move(names));

  ParityCode bare = data_row_code(n);
  for (int i = 0; i + 3 <= n; i += 2) {
    circuit.h(i);
    circuit.cp(i, i + 1, pi / 2);
    circuit.h(i + 1);

    // Block code: both parity rows of columns i+1..n-1, chained so that each
    // cell closes against the previous column and two data qubits.
    std::vector<QubitLabel> labels = bare.qubits();
    std::vector<Constraint> cells;
    std::vector<DeformationChoice> choices;
    std::vector<int> map;
    for (int q = 0; q < n; ++q) map.push_back(q);
    int top_base = n;
    int bottom_base = n + (n - 1 - i);
    for (int k = i + 1; k < n; ++k) {
      labels.push_back(QubitLabel::pair(i, k));
      map.push_back(top(k));
      std::vector<int> members;
      std::vector<QubitLabel> member_labels;
      if (k == i + 1) {
        members = {i, i + 1, top_base};
        member_labels = {QubitLabel::pair(i, k), QubitLabel::single(i), QubitLabel::single(i + 1)};
      } else {
        members = {k - 1, k, top_base + (k - i - 2), top_base + (k - i - 1)};
        member_labels = {QubitLabel::pair(i, k), QubitLabel::pair(i, k - 1),
                         QubitLabel::single(k - 1), QubitLabel::single(k)};
      }
      std::sort(members.begin(), members.end());
      cells.push_back({members});
      choices.push_back({QubitLabel::pair(i, k), member_labels});
    }
    for (int l = i + 2; l < n; ++l) {
      labels.push_back(QubitLabel::pair(i + 1, l));
      map.push_back(bottom(l));
      std::vector<int> members;
      std::vector<QubitLabel> member_labels;
      if (l == i + 2) {
        members = {i + 1, i + 2, bottom_base};
        member_labels = {QubitLabel::pair(i + 1, l), QubitLabel::single(i + 1),
                         QubitLabel::single(i + 2)};
      } else {
        members = {l - 1, l, bottom_base + (l - i - 3), bottom_base + (l - i - 2)};
        member_labels = {QubitLabel::pair(i + 1, l), QubitLabel::pair(i + 1, l - 1),
                         QubitLabel::single(l - 1), QubitLabel::single(l)};
      }
      std::sort(members.begin(), members.end());
      cells.push_back({members});
      choices.push_back({QubitLabel::pair(i + 1, l), member_labels});
    }
    ParityCode block(n, labels, cells);
    int block_width = block.num_qubits();
    for (const DeformationChoice& choice : choices) {
      int c = choice.qubit.indices().back();
      map.push_back(choice.qubit.contains(i) ? top_anc(c) : bottom_anc(c));
    }

    std::string tag = "b" + std::to_string(i);
    MeasurementCompilation enc =
        compile_encode_measurement(encode_spec(bare, block, choices), tag);
    circuit.append_circuit(enc.circuit, map);
    circuit.mark("encoded:" + tag);

    // One merged rotation layer realizes every remaining controlled phase of
    // the two columns: CP(a, b, phi) splits into RZ(phi/2) on both data
    // qubits and RZ(-phi/2) on parity (a, b).
    std::map<int, double> angle;
    for (int k = i + 2; k < n; ++k) {
      double phi = std::ldexp(pi, i - k);  // pi / 2^(k-i)
      angle[i] += phi / 2;
      angle[k] += phi / 2;
      angle[top(k)] -= phi / 2;
    }
    for (int l = i + 2; l < n; ++l) {
      double phi = std::ldexp(pi, i + 1 - l);
      angle[i + 1] += phi / 2;
      angle[l] += phi / 2;
      angle[bottom(l)] -= phi / 2;
    }
    for (const auto& [q, theta] : angle) circuit.rz(q, theta);

    MeasurementCompilation dec = compile_decode_measurement(decode_spec(block, bare), tag);
    circuit.append_circuit(dec.circuit,
                           std::vector<int>(map.begin(), map.begin() + block_width));
    circuit.mark("decoded:" + tag);
  }

  if (n % 2 == 0) {
    circuit.h(n - 2);
    circuit.cp(n - 2, n - 1, pi / 2);
    circuit.h(n - 1);
  } else {
    circuit.h(n - 1);
  }
  return circuit;
}

QftDepth qft_depth_formula(int n) {
  if (n < 2) fail("needs at least two logical qubits");
  if (n % 2 == 0) return {n - 2, 3 * n - 4};
  return {n - 1, 3 * n - 3};
}

LogicalCpDecomposition logical_cp_decomposition(const ParityCode& code, int i, int j, double phi) {
  if (i == j || i < 0 || j < 0 || i >= code.n() || j >= code.n()) {
    fail("logical CP needs two distinct logical indices in range");
  }
  int a = std::min(i, j);
  int b = std::max(i, j);
  auto data_a = code.find(QubitLabel::single(a));
  auto data_b = code.find(QubitLabel::single(b));
  auto parity = code.find(QubitLabel::pair(a, b));
  if (!data_a) fail("code has no data qubit " + QubitLabel::single(a).str());
  if (!data_b) fail("code has no data qubit " + QubitLabel::single(b).str());
  if (!parity) fail("code has no parity qubit " + QubitLabel::pair(a, b).str());
  LogicalCpDecomposition out;
  out.data_i = *data_a;
  out.data_j = *data_b;
  out.parity = *parity;
  out.data_angle = phi / 2;
  out.parity_angle = -phi / 2;
  out.global_phase = std::exp(std::complex<double>(0.0, phi / 4));
  return out;
}

ParityCode graph_state_layout(const GraphSpec& graph) {
  if (graph.n < 1) fail("graph needs at least one vertex");
  std::vector<QubitLabel> qubits;
  for (int i = 0; i < graph.n; ++i) qubits.push_back(QubitLabel::single(i));
  std::vector<Constraint> cells;
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    auto [u, v] = graph.edges[e];
    if (u < 0 || v < 0 || u >= graph.n || v >= graph.n) {
      fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is out of range");
    }
    if (u == v) fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is a self-loop");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") listed twice");
    }
    qubits.push_back(QubitLabel::pair(u, v));
    std::vector<int> members{u, v, graph.n + static_cast<int>(e)};
    cells.push_back({members});
  }
  return ParityCode(graph.n, std::move(qubits), std::move(cells));
}

Circuit build_graph_state(const GraphSpec& graph) {
  ParityCode layout = graph_state_layout(graph);
  ParityCode bare = data_row_code(graph.n);
  std::vector<DeformationChoice> choices;
  for (int q : layout.parity_qubits()) {
    const QubitLabel& label = layout.label(q);
    choices.push_back({label,
                       {label, QubitLabel::single(label.indices()[0]),
                        QubitLabel::single(label.indices()[1])}});
  }
  DeformationSpec enc = encode_spec(bare, layout, choices);
  DeformationSpec dec = decode_spec(layout, bare);

  std::vector<std::string> names;
  for (const QubitLabel& label : layout.qubits()) names.push_back(label.str());
  for (const DeformationChoice& choice : choices) names.push_back("anc" + choice.qubit.str());
  Circuit circuit(layout.num_qubits() + static_cast<int>(choices.size()), std::move(names));

  for (int i = 0; i < graph.n; ++i) circuit.reset_plus(i);
  circuit.append_circuit(compile_encode_measurement(enc, "gs").circuit);
  circuit.mark("encoded:gs");

  // Every logical CZ is a CP(pi); merged, each vertex turns by pi/2 per
  // incident edge and each edge qubit by -pi/2.
  const double half_pi = std::numbers::pi / 2;
  std::map<int, double> angle;
  for (int q : layout.parity_qubits()) {
    const QubitLabel& label = layout.label(q);
    angle[layout.require(QubitLabel::single(label.indices()[0]))] += half_pi;
    angle[layout.require(QubitLabel::single(label.indices()[1]))] += half_pi;
    angle[q] -= half_pi;
  }
  for (const auto& [q, theta] : angle) circuit.rz(q, theta);

  append_identity_mapped(circuit, compile_decode_measurement(dec, "gs").circuit);
  circuit.mark("decoded:gs");
  return circuit;
}

Circuit compile_diagonal_block(const std::vector<DiagonalTerm>& terms, PauliBasis basis,
                               const ParityCode& code) {
  if (terms.empty()) fail("needs at least one term");
  for (int i = 0; i < code.n(); ++i) {
    if (!code.find(QubitLabel::single(i))) {
      fail("code is missing data qubit " + QubitLabel::single(i).str());
    }
  }
  std::map<int, double> angle;  // code qubit -> RZ angle
  std::set<int> used_parity;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const DiagonalTerm& term = terms[t];
    if (term.kind != basis) fail("term " + std::to_string(t) + " basis differs from block basis");
    if (term.indices.empty()) fail("term " + std::to_string(t) + " has no indices");
    for (std::size_t i = 0; i < term.indices.size(); ++i) {
      if (term.indices[i] < 0 || term.indices[i] >= code.n()) {
        fail("term " + std::to_string(t) + " index " + std::to_string(term.indices[i]) +
             " is out of range");
      }
      if (i > 0 && term.indices[i] <= term.indices[i - 1]) {
        fail("term " + std::to_string(t) + " indices must be strictly increasing");
      }
    }
    QubitLabel label(term.indices);
    auto q = code.find(label);
    if (!q) fail("code has no qubit for term " + label.str());
    // exp(i alpha Z...Z) phases the term qubit by RZ(-2 alpha).
    angle[*q] += -2.0 * term.alpha;
    if (!label.is_data()) used_parity.insert(*q);
  }

  // Minimal deformation: only the term qubits leave the data row.
  ParityCode bare = data_row_code(code.n());
  std::vector<QubitLabel> sub_labels = bare.qubits();
  std::vector<Constraint> sub_cells;
  std::vector<DeformationChoice> choices;
  for (int q : used_parity) {
    const QubitLabel& label = code.label(q);
    std::vector<int> members{static_cast<int>(sub_labels.size())};
    std::vector<QubitLabel> member_labels{label};
    for (int i : label.indices()) {
      members.push_back(i);
      member_labels.push_back(QubitLabel::single(i));
    }
    std::sort(members.begin(), members.end());
    sub_labels.push_back(label);
    sub_cells.push_back({members});
    choices.push_back({label, member_labels});
  }
  ParityCode sub(code.n(), sub_labels, sub_cells);
  DeformationSpec enc = encode_spec(bare, sub, choices);
  DeformationSpec dec = decode_spec(sub, bare);

  std::vector<int> map;
  for (const QubitLabel& label : sub.qubits()) map.push_back(code.require(label));
  int sub_width = sub.num_qubits();
  for (std::size_t a = 0; a < choices.size(); ++a) {
    map.push_back(code.num_qubits() + static_cast<int>(a));
  }
  std::vector<std::string> names;
  for (const QubitLabel& label : code.qubits()) names.push_back(label.str());
  for (const DeformationChoice& choice : choices) names.push_back("anc" + choice.qubit.str());
  Circuit circuit(code.num_qubits() + static_cast<int>(choices.size()), std::move(names));

  // Data qubits touched by any term, for the basis-change layers.
  std::set<int> touched;
  for (const DiagonalTerm& term : terms) {
    for (int i : term.indices) touched.insert(code.require(QubitLabel::single(i)));
  }
  // Basis change W with W sigma W^dagger = Z: H for X; H S^dagger for Y,
  // emitted as Z, S, H since S Z = S^dagger.
  for (int q : touched) {
    if (basis == PauliBasis::X) {
      circuit.h(q);
    } else if (basis == PauliBasis::Y) {
      circuit.z(q);
      circuit.s(q);
      circuit.h(q);
    }
  }

  circuit.append_circuit(compile_encode_measurement(enc, "diag").circuit, map);
  circuit.mark("encoded:diag");
  for (const auto& [q, theta] : angle) circuit.rz(q, theta);
  circuit.append_circuit(compile_decode_measurement(dec, "diag").circuit,
                         std::vector<int>(map.begin(), map.begin() + sub_width));
  circuit.mark("decoded:diag");

  for (int q : touched) {
    if (basis == PauliBasis::X) {
      circuit.h(q);
    } else if (basis == PauliBasis::Y) {
      circuit.h(q);
      circuit.s(q);
    }
  }
  return circuit;
}

}  // namespace parityforge
