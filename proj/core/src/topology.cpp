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
#include "qnnlab/topology.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

#include "qnnlab/circuits.hpp"
#include "qnnlab/error.hpp"

namespace qnnlab {

CouplingGraph::CouplingGraph(std::string name, int num_qubits, std::vector<Edge> edges)
    : name_(std::move(name)), num_qubits_(num_qubits), adjacency_(num_qubits > 0 ? num_qubits : 0) {
  if (num_qubits < 1) throw ConfigError("coupling graph needs at least one qubit");
  for (auto& [a, b] : edges) {
    check_index(a);
    check_index(b);
    if (a == b) throw ConfigError("self-loop on qubit " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw ConfigError("duplicate coupling edge");
  edges_ = std::move(edges);
  for (const auto& [a, b] : edges_) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& n : adjacency_) std::sort(n.begin(), n.end());

  std::vector<bool> seen(static_cast<std::size_t>(num_qubits_), false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int n : adjacency_[static_cast<std::size_t>(q)]) {
      if (!seen[static_cast<std::size_t>(n)]) {
        seen[static_cast<std::size_t>(n)] = true;
        ++reached;
        queue.push_back(n);
      }
    }
  }
  if (reached != num_qubits_) throw ConfigError("coupling graph '" + name_ + "' is not connected");
}

void CouplingGraph::check_index(int q) const {
  if (q < 0 || q >= num_qubits_) {
    throw ConfigError("qubit " + std::to_string(q) + " out of range for '" + name_ + "' (" +
                      std::to_string(num_qubits_) + " qubits)");
  }
}

CouplingGraph CouplingGraph::from_json(const nlohmann::json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("edge entries must be [int, int] pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return CouplingGraph(j.at("name").get<std::string>(), j.at("num_qubits").get<int>(), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed coupling graph: ") + e.what());
  }
}

CouplingGraph CouplingGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coupling graph file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json CouplingGraph::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : edges_) edges.push_back({a, b});
  return {{"name", name_}, {"num_qubits", num_qubits_}, {"edges", edges}};
}

const std::vector<int>& CouplingGraph::neighbors(int q) const {
  check_index(q);
  return adjacency_[static_cast<std::size_t>(q)];
}

bool CouplingGraph::connected(int a, int b) const {
  const auto& n = neighbors(a);
  check_index(b);
  return std::binary_search(n.begin(), n.end(), b);
}

int CouplingGraph::degree(int q) const { return static_cast<int>(neighbors(q).size()); }

std::vector<Edge> CouplingGraph::edges_within(int n) const {
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (e.second < n) out.push_back(e);
  }
  return out;
}

CouplingGraph guadalupe() {
  return CouplingGraph("guadalupe", 16,
                       {{0, 1}, {1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 7}, {5, 8}, {6, 7},
                        {7, 10}, {8, 9}, {8, 11}, {10, 12}, {11, 14}, {12, 13}, {12, 15}, {13, 14}});
}

CouplingGraph resolve_topology(std::string_view name_or_path) {
  if (name_or_path == "guadalupe") return guadalupe();
  return CouplingGraph::load(std::filesystem::path(name_or_path));
}

int distance(const CouplingGraph& g, int a, int b) {
  g.neighbors(a);
  g.neighbors(b);
  if (a == b) throw ConfigError("distance needs two distinct qubits");
  std::vector<int> dist(static_cast<std::size_t>(g.num_qubits()), -1);
  std::deque<int> queue{a};
  dist[static_cast<std::size_t>(a)] = 0;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    for (int n : g.neighbors(q)) {
      auto& dn = dist[static_cast<std::size_t>(n)];
      if (dn < 0) {
        dn = dist[static_cast<std::size_t>(q)] + 1;
        if (n == b) return dn;
        queue.push_back(n);
      }
    }
  }
  throw ConfigError("qubits are not connected");  // unreachable for validated graphs
}

RoutingReport routing_cost(const CouplingGraph& g, int a, int b) {
  const int swaps = 2 * (distance(g, a, b) - 1);
  return {swaps, 3 * swaps + 1};
}

OverheadReport transpile_overhead(const ParametrizedCircuit& circuit, const CouplingGraph& g) {
  if (circuit.num_qubits() > g.num_qubits()) {
    throw ConfigError("circuit uses " + std::to_string(circuit.num_qubits()) + " qubits but '" + g.name() +
                      "' has " + std::to_string(g.num_qubits()));
  }
  OverheadReport report;
  for (const Gate& gate : circuit.two_qubit_gates()) {
    const RoutingReport r = routing_cost(g, gate.target(0), gate.target(1));
    ++report.logical_two_qubit;
    report.swaps += r.swaps;
    report.physical_cnots += r.physical_cnots;
  }
  return report;
}

nlohmann::json to_json(const OverheadReport& r) {
  return {{"logical_two_qubit", r.logical_two_qubit}, {"swaps", r.swaps}, {"physical_cnots", r.physical_cnots}};
}

}  // namespace qnnlab
