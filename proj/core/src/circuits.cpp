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
#include "qnnlab/circuits.hpp"

#include <random>

#include "qnnlab/error.hpp"

namespace qnnlab {

std::string_view to_string(AnsatzFamily family) noexcept {
  return family == AnsatzFamily::Random ? "random" : "fixed";
}

void AnsatzSpec::validate() const {
  if (depth < 1) throw ConfigError("ansatz depth must be >= 1");
  if (num_qubits < 2) throw ConfigError("ansatz needs at least 2 qubits");
  if (num_qubits > kMaxQubits) throw ConfigError("ansatz qubit count exceeds simulator limit");
}

ParametrizedCircuit::ParametrizedCircuit(int num_qubits, std::vector<Layer> layers, AnsatzSpec metadata)
    : num_qubits_(num_qubits),
      num_params_(num_qubits * static_cast<int>(layers.size())),
      layers_(std::move(layers)),
      metadata_(std::move(metadata)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) throw ConfigError("circuit qubit count out of range");
  metadata_.num_qubits = num_qubits_;
  metadata_.depth = depth();
  std::vector<int> seen(static_cast<std::size_t>(num_params_), 0);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& gates = layers_[l].gates;
    if (gates.size() < static_cast<std::size_t>(num_qubits_)) throw ConfigError("layer has fewer rotations than qubits");
    std::vector<bool> rotated(static_cast<std::size_t>(num_qubits_), false);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      const Gate& g = gates[i];
      for (int t : g.targets()) {
        if (t >= num_qubits_) throw ConfigError("gate target " + std::to_string(t) + " outside circuit");
      }
      const bool rotation_slot = i < static_cast<std::size_t>(num_qubits_);
      if (rotation_slot) {
        if (!is_rotation(g.kind()) || !g.is_trainable()) {
          throw ConfigError("layer " + std::to_string(l) + " must open with one trainable rotation per qubit");
        }
        const auto q = static_cast<std::size_t>(g.target(0));
        if (rotated[q]) throw ConfigError("qubit rotated twice within a layer");
        rotated[q] = true;
        const int p = *g.param_index();
        if (p >= num_params_) throw ConfigError("parameter index " + std::to_string(p) + " out of range");
        ++seen[static_cast<std::size_t>(p)];
      } else if (g.arity() != 2) {
        throw ConfigError("only two-qubit gates may follow the rotation block");
      }
    }
  }
  for (int count : seen) {
    if (count != 1) throw ConfigError("every parameter index must appear exactly once");
  }
}

std::vector<Gate> ParametrizedCircuit::gates() const {
  std::vector<Gate> out;
  for (const auto& layer : layers_) out.insert(out.end(), layer.gates.begin(), layer.gates.end());
  return out;
}

std::vector<Gate> ParametrizedCircuit::two_qubit_gates() const {
  std::vector<Gate> out;
  for (const auto& layer : layers_) {
    for (const auto& g : layer.gates) {
      if (g.arity() == 2 && g.kind() != GateKind::Identity) out.push_back(g);
    }
  }
  return out;
}

nlohmann::json ParametrizedCircuit::to_json() const {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : layers_) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : layer.gates) {
      nlohmann::json jg{{"kind", to_string(g.kind())},
                        {"targets", std::vector<int>(g.targets().begin(), g.targets().end())}};
      if (g.param_index()) jg["param"] = *g.param_index();
      gates.push_back(std::move(jg));
    }
    layers.push_back(std::move(gates));
  }
  return {{"num_qubits", num_qubits_},
          {"num_params", num_params_},
          {"family", to_string(metadata_.family)},
          {"restricted", metadata_.restricted},
          {"topology", metadata_.topology_name},
          {"seed", metadata_.rng_seed},
          {"layers", std::move(layers)}};
}

ParametrizedCircuit ParametrizedCircuit::from_json(const nlohmann::json& j) {
  try {
    AnsatzSpec meta;
    const auto family = j.value("family", std::string("fixed"));
    if (family != "random" && family != "fixed") throw ConfigError("unknown ansatz family '" + family + "'");
    meta.family = family == "random" ? AnsatzFamily::Random : AnsatzFamily::Fixed;
    meta.restricted = j.value("restricted", false);
    meta.topology_name = j.value("topology", std::string("guadalupe"));
    meta.rng_seed = j.value("seed", std::uint64_t{0});
    std::vector<Layer> layers;
    for (const auto& jl : j.at("layers")) {
      Layer layer;
      for (const auto& jg : jl) {
        const GateKind kind = gate_kind_from_string(jg.at("kind").get<std::string>());
        const auto targets = jg.at("targets").get<std::vector<int>>();
        if (is_rotation(kind)) {
          if (targets.size() != 1) throw ConfigError("rotation gates take exactly one target");
          if (jg.contains("param")) {
            layer.gates.push_back(Gate::rotation(kind, targets[0], jg.at("param").get<int>()));
          } else {
            layer.gates.push_back(Gate::fixed_rotation(kind, targets[0], jg.at("angle").get<double>()));
          }
        } else if (targets.size() == 2) {
          layer.gates.push_back(Gate::two_qubit(kind, targets[0], targets[1]));
        } else if (kind == GateKind::Identity && targets.size() == 1) {
          layer.gates.push_back(Gate::identity(targets[0]));
        } else {
          throw ConfigError("gate " + std::string(to_string(kind)) + " takes two targets");
        }
      }
      layers.push_back(std::move(layer));
    }
    return ParametrizedCircuit(j.at("num_qubits").get<int>(), std::move(layers), std::move(meta));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed circuit document: ") + e.what());
  }
}

namespace {

void check_fits(const AnsatzSpec& spec, const CouplingGraph& topology) {
  if (spec.restricted && spec.num_qubits > topology.num_qubits()) {
    throw ConfigError("restricted ansatz on " + std::to_string(spec.num_qubits) + " qubits exceeds '" +
                      topology.name() + "' (" + std::to_string(topology.num_qubits()) + " qubits)");
  }
}

std::vector<Edge> candidate_pairs(const AnsatzSpec& spec, const CouplingGraph& topology) {
  if (spec.restricted) return topology.edges_within(spec.num_qubits);
  std::vector<Edge> pairs;
  for (int i = 0; i < spec.num_qubits; ++i) {
    for (int j = i + 1; j < spec.num_qubits; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<Layer> repeat_template(const std::vector<GateKind>& axes, const std::vector<Gate>& entangler, int depth) {
  const int n = static_cast<int>(axes.size());
  std::vector<Layer> layers;
  layers.reserve(static_cast<std::size_t>(depth));
  for (int l = 0; l < depth; ++l) {
    Layer layer;
    for (int q = 0; q < n; ++q) layer.gates.push_back(Gate::rotation(axes[static_cast<std::size_t>(q)], q, l * n + q));
    layer.gates.insert(layer.gates.end(), entangler.begin(), entangler.end());
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace

ParametrizedCircuit build_random_ansatz(const AnsatzSpec& spec, const CouplingGraph& topology) {
  spec.validate();
  if (spec.family != AnsatzFamily::Random) throw ConfigError("build_random_ansatz needs the random family");
  check_fits(spec, topology);

  static constexpr std::array kAxes{GateKind::RX, GateKind::RY, GateKind::RZ};
  static constexpr std::array kPairGates{GateKind::Identity, GateKind::CNOT, GateKind::CY, GateKind::CZ};

  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_int_distribution<int> pick_axis(0, 2);
  std::uniform_int_distribution<int> pick_gate(0, 3);
  std::uniform_int_distribution<int> pick_orientation(0, 1);

  std::vector<GateKind> axes;
  for (int q = 0; q < spec.num_qubits; ++q) axes.push_back(kAxes[static_cast<std::size_t>(pick_axis(rng))]);

  std::vector<Gate> entangler;
  for (const auto& [a, b] : candidate_pairs(spec, topology)) {
    const GateKind kind = kPairGates[static_cast<std::size_t>(pick_gate(rng))];
    if (kind == GateKind::Identity) continue;
    if (pick_orientation(rng) == 0) {
      entangler.push_back(Gate::two_qubit(kind, a, b));
    } else {
      entangler.push_back(Gate::two_qubit(kind, b, a));
    }
  }
  return ParametrizedCircuit(spec.num_qubits, repeat_template(axes, entangler, spec.depth), spec);
}

ParametrizedCircuit build_fixed_ansatz(const AnsatzSpec& spec, const CouplingGraph& topology) {
  spec.validate();
  if (spec.family != AnsatzFamily::Fixed) throw ConfigError("build_fixed_ansatz needs the fixed family");
  check_fits(spec, topology);

  std::vector<Gate> entangler;
  if (spec.restricted) {
    for (const auto& [a, b] : topology.edges_within(spec.num_qubits)) entangler.push_back(Gate::two_qubit(GateKind::CNOT, a, b));
  } else {
    for (int i = 0; i + 1 < spec.num_qubits; ++i) entangler.push_back(Gate::two_qubit(GateKind::CNOT, i, i + 1));
  }
  const std::vector<GateKind> axes(static_cast<std::size_t>(spec.num_qubits), GateKind::RY);
  return ParametrizedCircuit(spec.num_qubits, repeat_template(axes, entangler, spec.depth), spec);
}

ParametrizedCircuit build_ansatz(const AnsatzSpec& spec, const CouplingGraph& topology) {
  return spec.family == AnsatzFamily::Random ? build_random_ansatz(spec, topology) : build_fixed_ansatz(spec, topology);
}

void apply_circuit(const ParametrizedCircuit& circuit, std::span<const double> params, StateVector& state) {
  if (static_cast<int>(params.size()) != circuit.num_params()) {
    throw ConfigError("expected " + std::to_string(circuit.num_params()) + " parameters, got " +
                      std::to_string(params.size()));
  }
  if (state.num_qubits() != circuit.num_qubits()) throw ConfigError("state and circuit qubit counts differ");
  for (const auto& layer : circuit.layers()) {
    for (const auto& g : layer.gates) apply_gate(state, g, params);
  }
}

double evaluate(const ParametrizedCircuit& circuit, std::span<const double> params, const StateVector& input,
                const Observable& obs) {
  StateVector state = input;
  apply_circuit(circuit, params, state);
  return expectation(state, obs);
}

}  // namespace qnnlab
