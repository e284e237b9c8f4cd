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

#include <set>
#include <string>
#include <vector>

#include "parityforge/errors.hpp"
#include "parityforge/verify.hpp"

namespace {

using namespace parityforge;

void check_consistency(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(!r.name.empty());
    CHECK(!r.detail.empty());
    CHECK(r.worst >= 0.0);
    if (r.pass) CHECK(r.worst <= r.tolerance);
  }
}

}  // namespace

TEST_CASE("the battery passes at n=3 and nothing exceeds its tolerance") {
  const auto results = verify_battery(3, 11, 1e-9);
  REQUIRE(results.size() >= 8);
  check_consistency(results);
  for (const auto& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("the transform check enumerates at n=4 and samples at n=5") {
  const auto enumerated = verify_qft(4, 1, 1, 5, 1e-9);
  REQUIRE(enumerated.size() == 3);
  check_consistency(enumerated);
  for (const auto& r : enumerated) CHECK(r.pass);
  CHECK(enumerated[0].detail.find("all branches") != std::string::npos);

  const auto sampled = verify_qft(5, 1, 2, 5, 1e-9);
  REQUIRE(sampled.size() == 3);
  check_consistency(sampled);
  for (const auto& r : sampled) CHECK(r.pass);
  CHECK(sampled[0].detail.find("sampled branches") != std::string::npos);
}

TEST_CASE("cross-engine replay passes with four-body cells in play") {
  const CheckResult r = verify_cross_engine(4, 9, 17);
  CAPTURE(r.detail);
  CHECK(r.pass);
  CHECK(r.worst <= r.tolerance);
}

TEST_CASE("dense checks reject sizes past their densification bounds") {
  CHECK_THROWS_AS(verify_encode_protocols(5, 1, 0, 1e-9), Error);
  CHECK_THROWS_AS(verify_qaoa_landscape(random_all_to_all_problem(5, 0), 1, 2, 1e-9), Error);
  GraphSpec complete6{6, {}};
  for (int u = 0; u < 6; ++u) {
    for (int v = u + 1; v < 6; ++v) complete6.edges.emplace_back(u, v);
  }
  CHECK_THROWS_WITH_AS(verify_graph_state(complete6, 1, 0, 1e-9),
                       doctest::Contains("dense"), Error);
}

TEST_CASE("seeded generators are deterministic and properly sized") {
  const auto p1 = random_all_to_all_problem(4, 9);
  const auto p2 = random_all_to_all_problem(4, 9);
  REQUIRE(p1.terms.size() == 6);
  for (std::size_t i = 0; i < p1.terms.size(); ++i) {
    CHECK(p1.terms[i].indices == p2.terms[i].indices);
    CHECK(p1.terms[i].coupling == p2.terms[i].coupling);
    CHECK(p1.terms[i].coupling >= -1.0);
    CHECK(p1.terms[i].coupling <= 1.0);
  }
  CHECK(random_all_to_all_problem(4, 10).terms[0].coupling != p1.terms[0].coupling);

  const auto g1 = random_graph(5, 3);
  const auto g2 = random_graph(5, 3);
  CHECK(g1.edges == g2.edges);
  std::set<std::pair<int, int>> unique(g1.edges.begin(), g1.edges.end());
  CHECK(unique.size() == g1.edges.size());
  for (const auto& [u, v] : g1.edges) {
    CHECK(u < v);
    CHECK(v < 5);
  }
}

TEST_CASE("landscape points carry both energies for the table") {
  const auto problem = random_all_to_all_problem(2, 21);
  const auto result = verify_qaoa_landscape(problem, 1, 2, 1e-9);
  REQUIRE(result.points.size() == 4);
  CHECK(result.check.pass);
  for (const auto& point : result.points) {
    CHECK(point.beta > 0.0);
    CHECK(point.beta < 3.15);
    CHECK(point.gamma > 0.0);
    CHECK(point.gamma < 6.3);
    CHECK(std::abs(point.parity_energy - point.logical_energy) <= 1e-9);
  }
}

TEST_CASE("empty graphs verify with a single run") {
  const GraphSpec empty{3, {}};
  const auto results = verify_graph_state(empty, 4, 1, 1e-9);
  check_consistency(results);
  for (const auto& r : results) CHECK(r.pass);
  CHECK(results[0].detail.find("1 sampled") != std::string::npos);
}
