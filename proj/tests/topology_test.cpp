// Copyright 2026 The qnnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <fstream>
#include <map>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "qnnlab/circuits.hpp"
#include "qnnlab/error.hpp"
#include "qnnlab/topology.hpp"

namespace qnnlab {
namespace {

// All-pairs shortest paths by Floyd-Warshall over the edge list; independent
// of the BFS in the library.
std::vector<std::vector<int>> floyd_warshall(const CouplingGraph& g) {
  const int n = g.num_qubits();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& [a, b] : g.edges()) d[a][b] = d[b][a] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

AnsatzSpec fixed_spec(int n, int l, bool restricted) {
  AnsatzSpec s;
  s.family = AnsatzFamily::Fixed;
  s.num_qubits = n;
  s.depth = l;
  s.restricted = restricted;
  return s;
}

TEST(Guadalupe, Shape) {
  const auto g = guadalupe();
  EXPECT_EQ(g.num_qubits(), 16);
  EXPECT_EQ(g.edges().size(), 16u);
  EXPECT_TRUE(g.connected(0, 1));
  EXPECT_TRUE(g.connected(1, 0));
  EXPECT_FALSE(g.connected(0, 2));
  EXPECT_EQ(g.degree(0), 1);
}

TEST(Distance, Examples) {
  const auto g = guadalupe();
  EXPECT_EQ(distance(g, 0, 1), 1);
  EXPECT_EQ(distance(g, 0, 2), 2);
  EXPECT_EQ(distance(g, 0, 6), 4);
  EXPECT_THROW(distance(g, 0, 16), ConfigError);
  EXPECT_THROW(distance(g, 3, 3), ConfigError);
}

TEST(Distance, AgreesWithFloydWarshall) {
  const auto g = guadalupe();
  const auto oracle = floyd_warshall(g);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      if (a != b) EXPECT_EQ(distance(g, a, b), oracle[a][b]) << a << "," << b;
}

TEST(Distance, SymmetricAndTriangle) {
  const auto g = guadalupe();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> q(0, 15);
  for (int i = 0; i < 500; ++i) {
    const int a = q(rng), b = q(rng), c = q(rng);
    if (a == b || b == c || a == c) continue;
    EXPECT_EQ(distance(g, a, b), distance(g, b, a));
    EXPECT_LE(distance(g, a, c), distance(g, a, b) + distance(g, b, c));
  }
}

TEST(RoutingCost, Examples) {
  const auto g = guadalupe();
  EXPECT_EQ(routing_cost(g, 0, 2), (RoutingReport{2, 7}));
  EXPECT_EQ(routing_cost(g, 0, 6), (RoutingReport{6, 19}));
  for (const auto& [a, b] : g.edges()) EXPECT_EQ(routing_cost(g, a, b), (RoutingReport{0, 1}));
}

TEST(RoutingCost, StrictlyIncreasingWithDistance) {
  const auto g = guadalupe();
  std::map<int, int> cost_at;
  for (int a = 0; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b) {
      const int d = distance(g, a, b);
      const int c = routing_cost(g, a, b).physical_cnots;
      if (cost_at.count(d)) EXPECT_EQ(cost_at[d], c);
      cost_at[d] = c;
    }
  int prev = 0;
  for (const auto& [d, c] : cost_at) {
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(TranspileOverhead, RestrictedFixedAnsatzHasNoOverhead) {
  const auto g = guadalupe();
  for (int n = 2; n <= 16; ++n) {
    for (int l : {1, 2, 6}) {
      const auto c = build_fixed_ansatz(fixed_spec(n, l, true), g);
      const auto r = transpile_overhead(c, g);
      EXPECT_EQ(r.physical_cnots, r.logical_two_qubit);
      EXPECT_EQ(r.swaps, 0);
    }
  }
}

TEST(TranspileOverhead, FreeChainOnFiveQubits) {
  const auto g = guadalupe();
  const auto oracle = floyd_warshall(g);
  const auto c = build_fixed_ansatz(fixed_spec(5, 1, false), g);
  int expected = 0;
  for (int i = 0; i < 4; ++i) expected += 3 * 2 * (oracle[i][i + 1] - 1) + 1;
  // (0,1), (1,2), (2,3) are couplings; 3 and 4 are three hops apart (3-2-1-4).
  EXPECT_EQ(oracle[3][4], 3);
  EXPECT_EQ(expected, 16);
  EXPECT_EQ(transpile_overhead(c, g), (OverheadReport{4, 16, 4}));
}

TEST(TranspileOverhead, EmptyEntanglerIsZero) {
  AnsatzSpec meta;
  const ParametrizedCircuit c(2, {Layer{{Gate::rotation(GateKind::RX, 0, 0), Gate::rotation(GateKind::RY, 1, 1)}}}, meta);
  EXPECT_EQ(transpile_overhead(c, guadalupe()), (OverheadReport{}));
}

TEST(TranspileOverhead, SizeMismatch) {
  const CouplingGraph line("line3", 3, {{0, 1}, {1, 2}});
  const auto c = build_fixed_ansatz(fixed_spec(4, 1, false), guadalupe());
  EXPECT_THROW(transpile_overhead(c, line), ConfigError);
}

TEST(TranspileOverhead, RestrictedRandomHasNoOverhead) {
  const auto g = guadalupe();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    AnsatzSpec s;
    s.family = AnsatzFamily::Random;
    s.num_qubits = 10;
    s.depth = 2;
    s.restricted = true;
    s.rng_seed = seed;
    const auto r = transpile_overhead(build_random_ansatz(s, g), g);
    EXPECT_EQ(r.physical_cnots, r.logical_two_qubit);
  }
}

TEST(CouplingGraph, Validation) {
  EXPECT_THROW(CouplingGraph("loop", 2, {{0, 0}}), ConfigError);
  EXPECT_THROW(CouplingGraph("range", 2, {{0, 2}}), ConfigError);
  EXPECT_THROW(CouplingGraph("split", 4, {{0, 1}, {2, 3}}), ConfigError);
  EXPECT_THROW(CouplingGraph("dup", 2, {{0, 1}, {1, 0}}), ConfigError);
  const CouplingGraph g("ok", 3, {{2, 1}, {1, 0}});
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(CouplingGraph, JsonFile) {
  const auto path = std::filesystem::temp_directory_path() / "qnnlab_topology_test.json";
  {
    std::ofstream out(path);
    out << R"({"name": "ring4", "num_qubits": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]})";
  }
  const auto g = resolve_topology(path.string());
  EXPECT_EQ(g.name(), "ring4");
  EXPECT_EQ(distance(g, 0, 2), 2);
  EXPECT_EQ(CouplingGraph::from_json(g.to_json()).edges(), g.edges());
  EXPECT_EQ(CouplingGraph::from_json(guadalupe().to_json()).edges(), guadalupe().edges());
  std::filesystem::remove(path);
  EXPECT_THROW(resolve_topology("/nonexistent/graph.json"), ConfigError);
  EXPECT_THROW(CouplingGraph::from_json(nlohmann::json{{"name", "x"}}), ConfigError);
}

}  // namespace
}  // namespace qnnlab
