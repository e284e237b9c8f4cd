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

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "parityforge/algorithms.hpp"
#include "parityforge/code_model.hpp"
#include "parityforge/codec.hpp"
#include "parityforge/errors.hpp"
#include "parityforge/json_io.hpp"
#include "parityforge/simulate.hpp"
#include "parityforge/verify.hpp"

namespace {

using namespace parityforge;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitSchemaViolation = 2;

[[noreturn]] void fail(const std::string& message) { throw Error("cli", message); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open input file '" + path + "'");
  return Json::parse(in);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail("cannot open output file '" + out_path + "'");
  out << text;
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

Json check_to_json(const CheckResult& r) {
  return Json{{"name", r.name},
              {"pass", r.pass},
              {"worst", r.worst},
              {"tolerance", r.tolerance},
              {"detail", r.detail}};
}

Json checks_to_json(const std::vector<CheckResult>& results, bool& all_pass) {
  Json arr = Json::array();
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    arr.push_back(check_to_json(r));
  }
  return arr;
}

std::vector<int> all_qubits(const Circuit& circuit) {
  std::vector<int> out(circuit.num_qubits());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Executes the compiled circuit under the requested outcome policy and
// packages records (and, for narrow registers, the final state) as JSON.
Json run_payload(const Circuit& circuit, const std::string& policy, std::uint64_t seed) {
  const bool dump_state = circuit.num_qubits() <= 16;
  const auto state_or_note = [&](const StateVector& state) -> Json {
    if (dump_state) return state_dump(state, all_qubits(circuit));
    return "omitted: register wider than 16 qubits";
  };

  if (policy == "enumerate") {
    const auto branches = enumerate_branches(circuit, StateVector(circuit.num_qubits()));
    Json arr = Json::array();
    for (const Branch& branch : branches) {
      arr.push_back(Json{{"probability", branch.probability},
                         {"outcomes", outcomes_to_json(branch.outcomes)},
                         {"state", state_or_note(branch.state)}});
    }
    return Json{{"policy", policy}, {"branches", std::move(arr)}};
  }

  OutcomePolicy outcome_policy = OutcomePolicy::random(seed);
  if (policy.rfind("forced:", 0) == 0) {
    std::vector<int> bits;
    for (char c : policy.substr(7)) {
      if (c != '0' && c != '1') fail("forced policy bits must be 0 or 1");
      bits.push_back(c - '0');
    }
    outcome_policy = OutcomePolicy::forced(std::move(bits));
  } else if (policy != "random") {
    fail("unknown outcome policy '" + policy + "' (random, enumerate, forced:<bits>)");
  }
  const auto run = run_statevector(circuit, StateVector(circuit.num_qubits()), outcome_policy);
  return Json{{"policy", policy},
              {"outcomes", outcomes_to_json(run.outcomes)},
              {"state", state_or_note(run.state)}};
}

struct QaoaLayerRow {
  std::string constituent;
  DepthReport depth;
};

// Scheduled depth of each constituent of one measurement-based QAOA layer,
// plus the full compiled layer.
std::vector<QaoaLayerRow> qaoa_layer_rows(int n) {
  std::vector<QaoaLayerRow> rows;
  const ParityCode code = lhz_layout(n);
  const int k = code.num_qubits();

  const Circuit encode = compile_encode_measurement(full_encode_spec(n)).circuit;
  rows.push_back({"encoding", schedule_depth(encode)});

  Circuit phase(k);
  for (int q = 0; q < k; ++q) phase.append(Gate(GateKind::RZ, q, -1, 0.5));
  rows.push_back({"phase separator", schedule_depth(phase)});

  const Circuit decode = compile_decode_measurement(full_decode_spec(n)).circuit;
  rows.push_back({"decoding", schedule_depth(decode)});

  Circuit mixer(n);
  for (int q = 0; q < n; ++q) mixer.append(Gate(GateKind::RX, q, -1, 0.5));
  rows.push_back({"mixer", schedule_depth(mixer)});

  ProblemHamiltonian problem;
  problem.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) problem.terms.push_back(ProblemTerm{{i, j}, 1.0});
  }
  QaoaParams params;
  params.betas = {0.3};
  params.gammas = {0.5};
  rows.push_back({"total", schedule_depth(build_qaoa_circuit(problem, params, code))});
  return rows;
}

std::string depth_row_text(const std::string& label, const DepthReport& d) {
  return label + " " + std::to_string(d.measure) + "/" + std::to_string(d.cnot) + "/" +
         std::to_string(d.single);
}

struct LayoutArgs {
  int n = 0;
  bool no_data = false;
  std::string out;
};

struct ValidateArgs {
  std::string in;
  std::string out;
};

struct CodecArgs {
  int n = 0;
  std::string method = "measure";
  std::string tag;
  bool run = false;
  std::string policy = "random";
  std::uint64_t seed = 0;
  std::string out;
};

struct QaoaArgs {
  int n = 0;
  int p = 1;
  std::uint64_t seed = 0;
  std::string in;
  int grid = 0;
  int budget = 60;
  double tol = 1e-9;
  std::string format = "json";
  bool verify = false;
  std::string out;
};

struct QftArgs {
  int n = 0;
  bool verify = false;
  int inputs = 5;
  int samples = 3;
  bool run = false;
  std::string policy = "random";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string out;
};

struct GraphArgs {
  int n = 0;
  std::string in;
  std::uint64_t seed = 0;
  bool verify = false;
  int samples = 3;
  bool run = false;
  std::string policy = "random";
  double tol = 1e-9;
  std::string out;
};

struct VerifyArgs {
  int n = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string out;
};

struct ReportArgs {
  int n = 4;
  bool qaoa = false;
  bool qft = false;
  std::string format = "json";
  std::string out;
};

int run_layout(const LayoutArgs& args) {
  emit_json(code_to_json(lhz_layout(args.n, !args.no_data)), args.out);
  return kExitOk;
}

int run_validate(const ValidateArgs& args) {
  const ParityCode code = code_from_json(load_json(args.in));
  const ValidationReport report = validate_code(code);
  emit_json(validation_to_json(report), args.out);
  return report.valid() ? kExitOk : kExitVerificationFailed;
}

int run_codec(const CodecArgs& args, bool encode) {
  Json result{{"n", args.n}};
  Circuit circuit(0);
  if (encode) {
    const DeformationSpec spec = full_encode_spec(args.n);
    if (args.method == "cnot") {
      circuit = compile_encode_cnot(spec);
    } else if (args.method == "measure") {
      auto compiled = compile_encode_measurement(spec, args.tag);
      circuit = std::move(compiled.circuit);
      result["plan"] = plan_to_json(compiled.plan);
    } else {
      fail("unknown encode method '" + args.method + "' (measure, cnot)");
    }
    result["method"] = args.method;
  } else {
    auto compiled = compile_decode_measurement(full_decode_spec(args.n), args.tag);
    circuit = std::move(compiled.circuit);
    result["plan"] = plan_to_json(compiled.plan);
  }
  result["depth"] = depth_to_json(schedule_depth(circuit));
  if (args.run) result["run"] = run_payload(circuit, args.policy, args.seed);
  result["circuit"] = circuit_to_json(circuit);
  emit_json(result, args.out);
  return kExitOk;
}

int run_qaoa(const QaoaArgs& args) {
  ProblemHamiltonian problem;
  if (!args.in.empty()) {
    problem = problem_from_json(load_json(args.in));
    if (args.n != 0 && args.n != problem.n) {
      fail("--n disagrees with the problem file (" + std::to_string(problem.n) + " logical qubits)");
    }
  } else {
    if (args.n < 2) fail("qaoa needs --n >= 2 or a problem file");
    problem = random_all_to_all_problem(args.n, args.seed);
  }
  const ParityCode code = lhz_layout(problem.n);

  QaoaParams shape;
  shape.betas.assign(args.p, 0.3);
  shape.gammas.assign(args.p, 0.5);
  const DepthReport depth = schedule_depth(build_qaoa_circuit(problem, shape, code));

  if (args.grid > 0) {
    const LandscapeResult landscape = verify_qaoa_landscape(problem, args.p, args.grid, args.tol);
    if (args.format == "csv") {
      std::string text = "# measure=" + std::to_string(depth.measure) +
                         ",cnot=" + std::to_string(depth.cnot) +
                         ",single=" + std::to_string(depth.single) + "\n";
      text += "beta,gamma,parity_energy,logical_energy,abs_diff\n";
      for (const LandscapePoint& point : landscape.points) {
        text += format_double(point.beta) + "," + format_double(point.gamma) + "," +
                format_double(point.parity_energy) + "," + format_double(point.logical_energy) +
                "," + format_double(std::abs(point.parity_energy - point.logical_energy)) + "\n";
      }
      emit(text, args.out);
    } else {
      Json points = Json::array();
      for (const LandscapePoint& point : landscape.points) {
        points.push_back(Json{{"beta", point.beta},
                              {"gamma", point.gamma},
                              {"parity_energy", point.parity_energy},
                              {"logical_energy", point.logical_energy}});
      }
      emit_json(Json{{"problem", problem_to_json(problem)},
                     {"depth", depth_to_json(depth)},
                     {"points", std::move(points)},
                     {"check", check_to_json(landscape.check)}},
                args.out);
    }
    if (args.verify && !landscape.check.pass) return kExitVerificationFailed;
    return kExitOk;
  }

  if (args.format == "csv") fail("csv output applies to --grid landscape sweeps");
  const OptimizeResult optimum = optimize_params(problem, code, args.p, args.budget);
  emit_json(Json{{"problem", problem_to_json(problem)},
                 {"depth", depth_to_json(depth)},
                 {"params",
                  Json{{"betas", optimum.params.betas}, {"gammas", optimum.params.gammas}}},
                 {"energy", optimum.energy},
                 {"trace", optimum.trace}},
            args.out);
  return kExitOk;
}

int run_qft(const QftArgs& args) {
  const Circuit circuit = build_qft(args.n);
  const QftDepth formula = qft_depth_formula(args.n);
  Json result{{"n", args.n},
              {"depth", depth_to_json(schedule_depth(circuit))},
              {"formula", Json{{"measure", formula.measure}, {"cnot", formula.cnot}}}};

  bool pass = true;
  if (args.verify) {
    const auto checks = verify_qft(args.n, args.inputs, args.samples, args.seed, args.tol);
    result["checks"] = checks_to_json(checks, pass);
    result["pass"] = pass;
  }
  if (args.run) result["run"] = run_payload(circuit, args.policy, args.seed);
  result["circuit"] = circuit_to_json(circuit);
  emit_json(result, args.out);
  return pass ? kExitOk : kExitVerificationFailed;
}

int run_graphstate(const GraphArgs& args) {
  GraphSpec graph;
  if (!args.in.empty()) {
    graph = graph_from_json(load_json(args.in));
  } else {
    if (args.n < 1) fail("graphstate needs --n >= 1 or a graph file");
    graph = random_graph(args.n, args.seed);
  }
  const Circuit circuit = build_graph_state(graph);
  Json result{{"graph", graph_to_json(graph)},
              {"layout", code_to_json(graph_state_layout(graph))},
              {"depth", depth_to_json(schedule_depth(circuit))}};

  bool pass = true;
  if (args.verify) {
    const auto checks = verify_graph_state(graph, args.samples, args.seed, args.tol);
    result["checks"] = checks_to_json(checks, pass);
    result["pass"] = pass;
  }
  if (args.run) result["run"] = run_payload(circuit, args.policy, args.seed);
  result["circuit"] = circuit_to_json(circuit);
  emit_json(result, args.out);
  return pass ? kExitOk : kExitVerificationFailed;
}

int run_verify(const VerifyArgs& args) {
  bool pass = true;
  const Json checks = checks_to_json(verify_battery(args.n, args.seed, args.tol), pass);
  emit_json(Json{{"n", args.n}, {"checks", checks}, {"pass", pass}}, args.out);
  return pass ? kExitOk : kExitVerificationFailed;
}

int run_report(const ReportArgs& args) {
  const bool want_qaoa = args.qaoa || !args.qft;
  const bool want_qft = args.qft || !args.qaoa;

  if (args.format == "csv") {
    std::string text;
    if (want_qaoa) {
      text += "# qaoa layer constituents (n=" + std::to_string(args.n) + ")\n";
      text += "constituent,measure,cnot,single\n";
      for (const auto& row : qaoa_layer_rows(args.n)) {
        text += row.constituent + "," + std::to_string(row.depth.measure) + "," +
                std::to_string(row.depth.cnot) + "," + std::to_string(row.depth.single) + "\n";
      }
    }
    if (want_qft) {
      text += "# transform depth (formula and scheduled)\n";
      text += "n,measure,cnot,scheduled_measure,scheduled_cnot\n";
      for (int n = 2; n <= 8; ++n) {
        const QftDepth formula = qft_depth_formula(n);
        const DepthReport depth = schedule_depth(build_qft(n));
        text += std::to_string(n) + "," + std::to_string(formula.measure) + "," +
                std::to_string(formula.cnot) + "," + std::to_string(depth.measure) + "," +
                std::to_string(depth.cnot) + "\n";
      }
    }
    emit(text, args.out);
    return kExitOk;
  }

  Json result;
  if (want_qaoa) {
    Json rows = Json::array();
    Json text = Json::array();
    for (const auto& row : qaoa_layer_rows(args.n)) {
      rows.push_back(Json{{"constituent", row.constituent},
                          {"measure", row.depth.measure},
                          {"cnot", row.depth.cnot},
                          {"single", row.depth.single}});
      text.push_back(depth_row_text(row.constituent, row.depth));
    }
    result["qaoa"] = Json{{"n", args.n}, {"rows", std::move(rows)}, {"text", std::move(text)}};
  }
  if (want_qft) {
    Json rows = Json::array();
    for (int n = 2; n <= 8; ++n) {
      const QftDepth formula = qft_depth_formula(n);
      const DepthReport depth = schedule_depth(build_qft(n));
      rows.push_back(Json{{"n", n},
                          {"measure", formula.measure},
                          {"cnot", formula.cnot},
                          {"scheduled_measure", depth.measure},
                          {"scheduled_cnot", depth.cnot}});
    }
    result["qft"] = Json{{"rows", std::move(rows)}};
  }
  emit_json(result, args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "parityforge: compile parity-code deformations and algorithms, run the\n"
      "verification simulators, and emit depth and resource reports.\n"
      "The PARITY_FORGE_MAX_QUBITS environment variable overrides the\n"
      "simulator's active-qubit cap (1..28)."};
  app.require_subcommand(1);

  LayoutArgs layout_args;
  auto* layout_cmd = app.add_subcommand("layout", "Emit a triangular-layout parity code");
  layout_cmd->add_option("--n", layout_args.n, "logical qubits")->required();
  layout_cmd->add_flag("--no-data", layout_args.no_data, "drop the data-qubit row");
  layout_cmd->add_option("--out", layout_args.out, "output path (default stdout)");

  ValidateArgs validate_args;
  auto* validate_cmd = app.add_subcommand("validate", "Validate a parity code JSON file");
  validate_cmd->add_option("--in", validate_args.in, "code JSON path")->required();
  validate_cmd->add_option("--out", validate_args.out, "output path (default stdout)");

  CodecArgs encode_args;
  auto* encode_cmd =
      app.add_subcommand("encode", "Compile the full triangular-layout encode step");
  encode_cmd->add_option("--n", encode_args.n, "logical qubits")->required();
  encode_cmd->add_option("--method", encode_args.method, "measure (default) or cnot");
  encode_cmd->add_option("--tag", encode_args.tag, "outcome-name suffix");
  encode_cmd->add_flag("--run", encode_args.run, "execute and include outcomes");
  encode_cmd->add_option("--policy", encode_args.policy, "random, enumerate, forced:<bits>");
  encode_cmd->add_option("--seed", encode_args.seed, "outcome seed (default 0)");
  encode_cmd->add_option("--out", encode_args.out, "output path (default stdout)");

  CodecArgs decode_args;
  auto* decode_cmd =
      app.add_subcommand("decode", "Compile the full triangular-layout decode step");
  decode_cmd->add_option("--n", decode_args.n, "logical qubits")->required();
  decode_cmd->add_option("--tag", decode_args.tag, "outcome-name suffix");
  decode_cmd->add_flag("--run", decode_args.run, "execute and include outcomes");
  decode_cmd->add_option("--policy", decode_args.policy, "random, enumerate, forced:<bits>");
  decode_cmd->add_option("--seed", decode_args.seed, "outcome seed (default 0)");
  decode_cmd->add_option("--out", decode_args.out, "output path (default stdout)");

  QaoaArgs qaoa_args;
  auto* qaoa_cmd = app.add_subcommand(
      "qaoa", "Optimize parameters or sweep a landscape on the parity code");
  qaoa_cmd->add_option("--n", qaoa_args.n, "logical qubits (random couplings from --seed)");
  qaoa_cmd->add_option("--p", qaoa_args.p, "layers (default 1)");
  qaoa_cmd->add_option("--seed", qaoa_args.seed, "seed for random couplings (default 0)");
  qaoa_cmd->add_option("--in", qaoa_args.in, "problem JSON path");
  qaoa_cmd->add_option("--grid", qaoa_args.grid, "grid size: sweep instead of optimizing");
  qaoa_cmd->add_option("--budget", qaoa_args.budget, "optimizer evaluations (default 60)");
  qaoa_cmd->add_option("--tol", qaoa_args.tol, "verification tolerance (default 1e-9)");
  qaoa_cmd->add_option("--format", qaoa_args.format, "json (default) or csv");
  qaoa_cmd->add_flag("--verify", qaoa_args.verify, "exit 1 when the landscape check fails");
  qaoa_cmd->add_option("--out", qaoa_args.out, "output path (default stdout)");

  QftArgs qft_args;
  auto* qft_cmd = app.add_subcommand("qft", "Compile the 3xn-strip transform");
  qft_cmd->add_option("--n", qft_args.n, "logical qubits")->required();
  qft_cmd->add_flag("--verify", qft_args.verify, "check against the dense reference");
  qft_cmd->add_option("--inputs", qft_args.inputs, "verification inputs (default 5)");
  qft_cmd->add_option("--samples", qft_args.samples, "sampled branches per input (default 3)");
  qft_cmd->add_flag("--run", qft_args.run, "execute and include outcomes");
  qft_cmd->add_option("--policy", qft_args.policy, "random, enumerate, forced:<bits>");
  qft_cmd->add_option("--seed", qft_args.seed, "outcome/input seed (default 0)");
  qft_cmd->add_option("--tol", qft_args.tol, "verification tolerance (default 1e-9)");
  qft_cmd->add_option("--out", qft_args.out, "output path (default stdout)");

  GraphArgs graph_args;
  auto* graph_cmd = app.add_subcommand("graphstate", "Compile a parity-encoded graph state");
  graph_cmd->add_option("--n", graph_args.n, "vertices (random edges from --seed)");
  graph_cmd->add_option("--in", graph_args.in, "graph JSON path");
  graph_cmd->add_option("--seed", graph_args.seed, "seed (default 0)");
  graph_cmd->add_flag("--verify", graph_args.verify, "check against the closed-form state");
  graph_cmd->add_option("--samples", graph_args.samples, "sampled runs (default 3)");
  graph_cmd->add_flag("--run", graph_args.run, "execute and include outcomes");
  graph_cmd->add_option("--policy", graph_args.policy, "random, enumerate, forced:<bits>");
  graph_cmd->add_option("--tol", graph_args.tol, "verification tolerance (default 1e-9)");
  graph_cmd->add_option("--out", graph_args.out, "output path (default stdout)");

  VerifyArgs verify_args;
  auto* verify_cmd =
      app.add_subcommand("verify", "Run the consolidated verification battery");
  verify_cmd->add_option("--n", verify_args.n, "logical qubits")->required();
  verify_cmd->add_option("--seed", verify_args.seed, "seed (default 0)");
  verify_cmd->add_option("--tol", verify_args.tol, "tolerance (default 1e-9)");
  verify_cmd->add_option("--out", verify_args.out, "output path (default stdout)");

  ReportArgs report_args;
  auto* report_cmd =
      app.add_subcommand("report", "Depth and resource tables for the compiled pipelines");
  report_cmd->add_option("--n", report_args.n, "size for the qaoa layer table (default 4)");
  report_cmd->add_flag("--qaoa", report_args.qaoa, "only the qaoa layer table");
  report_cmd->add_flag("--qft", report_args.qft, "only the transform depth table");
  report_cmd->add_option("--format", report_args.format, "json (default) or csv");
  report_cmd->add_option("--out", report_args.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);
    }
    std::cerr << Json{{"error", e.what()}, {"module", "cli"}}.dump() << "\n";
    return kExitSchemaViolation;
  }

  try {
    if (*layout_cmd) return run_layout(layout_args);
    if (*validate_cmd) return run_validate(validate_args);
    if (*encode_cmd) return run_codec(encode_args, true);
    if (*decode_cmd) return run_codec(decode_args, false);
    if (*qaoa_cmd) return run_qaoa(qaoa_args);
    if (*qft_cmd) return run_qft(qft_args);
    if (*graph_cmd) return run_graphstate(graph_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*report_cmd) return run_report(report_args);
    fail("no subcommand selected");
  } catch (const Error& e) {
    std::cerr << Json{{"error", e.what()}, {"module", e.module()}}.dump() << "\n";
    return kExitSchemaViolation;
  } catch (const Json::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"module", "json_io"}}.dump() << "\n";
    return kExitSchemaViolation;
  }
}
