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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnlab/simulator.hpp"
#include "qnnlab/topology.hpp"

namespace qnnlab {

enum class AnsatzFamily { Random, Fixed };

std::string_view to_string(AnsatzFamily family) noexcept;

struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::Fixed;
  int depth = 1;
  int num_qubits = 2;
  bool restricted = false;
  std::string topology_name = "guadalupe";
  std::uint64_t rng_seed = 0;

  void validate() const;
  bool operator==(const AnsatzSpec&) const = default;
};

/// One U_l W_l block: exactly num_qubits rotations (one per qubit, in qubit
/// order) followed by zero or more two-qubit gates.
struct Layer {
  std::vector<Gate> gates;
  bool operator==(const Layer&) const = default;
};

class ParametrizedCircuit {
 public:
  ParametrizedCircuit(int num_qubits, std::vector<Layer> layers, AnsatzSpec metadata);

  static ParametrizedCircuit from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int num_qubits() const noexcept { return num_qubits_; }
  int depth() const noexcept { return static_cast<int>(layers_.size()); }
  int num_params() const noexcept { return num_params_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  const AnsatzSpec& metadata() const noexcept { return metadata_; }

  /// Layers flattened into application order.
  std::vector<Gate> gates() const;
  std::vector<Gate> two_qubit_gates() const;

  bool operator==(const ParametrizedCircuit&) const = default;

 private:
  int num_qubits_;
  int num_params_;
  std::vector<Layer> layers_;
  AnsatzSpec metadata_;
};

/// Draws one layer template and repeats it depth times. Rotation axes are
/// uniform over {X, Y, Z}; each candidate pair gets a gate uniform over
/// {I, CNOT, CY, CZ} with a uniformly drawn orientation. Unrestricted circuits
/// consider every pair i < j in lexicographic order; restricted circuits only
/// the coupling edges among qubits [0, N).
ParametrizedCircuit build_random_ansatz(const AnsatzSpec& spec, const CouplingGraph& topology);

/// RY on every qubit, then CNOTs with the lower index as control: on the
/// chain (i, i+1) when unrestricted, on the coupling edges among [0, N) when
/// restricted.
ParametrizedCircuit build_fixed_ansatz(const AnsatzSpec& spec, const CouplingGraph& topology);

ParametrizedCircuit build_ansatz(const AnsatzSpec& spec, const CouplingGraph& topology);

/// Applies every layer of circuit to state in place.
void apply_circuit(const ParametrizedCircuit& circuit, std::span<const double> params, StateVector& state);

/// f = <input| U(params)^dagger H U(params) |input>.
double evaluate(const ParametrizedCircuit& circuit, std::span<const double> params, const StateVector& input,
                const Observable& obs);

}  // namespace qnnlab
