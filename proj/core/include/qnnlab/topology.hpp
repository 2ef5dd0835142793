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
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qnnlab {

class ParametrizedCircuit;

using Edge = std::pair<int, int>;

/// Undirected qubit connectivity of a chip. Edges are stored normalized
/// (lower index first) and sorted lexicographically. Construction rejects
/// self-loops, out-of-range indices, duplicate edges and disconnected graphs.
class CouplingGraph {
 public:
  CouplingGraph(std::string name, int num_qubits, std::vector<Edge> edges);

  static CouplingGraph from_json(const nlohmann::json& j);
  static CouplingGraph load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  const std::string& name() const noexcept { return name_; }
  int num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& neighbors(int q) const;

  bool connected(int a, int b) const;
  int degree(int q) const;

  /// Edges with both endpoints in [0, n), in lexicographic order.
  std::vector<Edge> edges_within(int n) const;

 private:
  void check_index(int q) const;

  std::string name_;
  int num_qubits_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// IBM Guadalupe, 16 qubits.
CouplingGraph guadalupe();

/// Built-in graph by name ("guadalupe"), otherwise a JSON file path.
CouplingGraph resolve_topology(std::string_view name_or_path);

/// Breadth-first shortest-path edge count between distinct qubits.
int distance(const CouplingGraph& g, int a, int b);

struct RoutingReport {
  int swaps = 0;
  int physical_cnots = 0;
  bool operator==(const RoutingReport&) const = default;
};

/// Cost of one logical CNOT between a and b when the control is swapped
/// along a shortest path next to the target, the gate applied, and the
/// swaps undone. Each SWAP is three CNOTs.
RoutingReport routing_cost(const CouplingGraph& g, int a, int b);

struct OverheadReport {
  int logical_two_qubit = 0;
  int physical_cnots = 0;
  int swaps = 0;
  bool operator==(const OverheadReport&) const = default;
};

/// Sums routing_cost over every non-identity two-qubit gate. CY, CZ and SWAP
/// are each counted as one CNOT-equivalent logical gate.
OverheadReport transpile_overhead(const ParametrizedCircuit& circuit, const CouplingGraph& g);

nlohmann::json to_json(const OverheadReport& r);

}  // namespace qnnlab
