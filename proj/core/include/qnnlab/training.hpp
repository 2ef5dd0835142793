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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnlab/circuits.hpp"
#include "qnnlab/dataset.hpp"
#include "qnnlab/simulator.hpp"

namespace qnnlab {

/// Regression target for a {0,1} class label: the label itself for the
/// last-qubit projector, 2 * label - 1 for Pauli observables.
double label_target(const Observable& obs, int label);

/// Encoded inputs and targets, prepared once per (dataset, qubit count).
struct EncodedDataset {
  std::vector<StateVector> inputs;
  std::vector<double> targets;

  std::size_t size() const noexcept { return inputs.size(); }
};

/// Applies experiment_encode to every sample. Features are used as given;
/// scale them beforehand.
EncodedDataset encode_dataset(const Dataset& dataset, int num_qubits, const Observable& obs);

/// C = (1/D) sum_i (f(x_i) - y_i)^2.
double cost(const ParametrizedCircuit& circuit, std::span<const double> params, const EncodedDataset& data,
            const Observable& obs);
double cost(const ParametrizedCircuit& circuit, std::span<const double> params, const Dataset& dataset,
            const Observable& obs);

struct CostAndGradient {
  double cost = 0.0;
  std::vector<double> gradient;
};

/// Cost and its gradient, with df/dtheta_k = [f(theta_k + pi/2) - f(theta_k - pi/2)] / 2
/// for every trainable rotation. Shifted evaluations reuse the state prefix
/// up to the shifted gate.
CostAndGradient cost_and_gradient(const ParametrizedCircuit& circuit, std::span<const double> params,
                                  const EncodedDataset& data, const Observable& obs);

std::vector<double> parameter_shift_gradient(const ParametrizedCircuit& circuit, std::span<const double> params,
                                             const EncodedDataset& data, const Observable& obs);
std::vector<double> parameter_shift_gradient(const ParametrizedCircuit& circuit, std::span<const double> params,
                                             const Dataset& dataset, const Observable& obs);

/// params - eta * grad.
std::vector<double> gd_step(std::span<const double> params, std::span<const double> grad, double eta);

struct AdamState {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step = 0;
  std::vector<double> m;
  std::vector<double> v;

  static AdamState zeros(std::size_t dim, double learning_rate = 0.001, double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8);
};

/// One bias-corrected Adam update of params in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad);

enum class OptimizerKind { GD, Adam };

struct InitSpec {
  enum class Distribution { Uniform, Normal };
  Distribution distribution = Distribution::Uniform;
  // Uniform: [a, b). Normal: mean a, standard deviation b.
  double a = 0.0;
  double b = 2 * std::numbers::pi;
  std::uint64_t seed = 0;
};

std::vector<double> initial_params(std::size_t count, const InitSpec& init);

struct TrainConfig {
  int epochs = 20;
  double learning_rate = 0.001;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  InitSpec init;

  void validate() const;
};

nlohmann::json to_json(const TrainConfig& c);
TrainConfig train_config_from_json(const nlohmann::json& j);

struct TrialRecord {
  int trial_id = 0;
  std::uint64_t seed = 0;
  AnsatzSpec ansatz;
  std::string observable;
  std::vector<double> loss_per_epoch;
  std::vector<double> final_params;

  bool operator==(const TrialRecord&) const = default;
};

nlohmann::json to_json(const TrialRecord& r);

/// Full-batch training. loss_per_epoch[0] is the loss at the initial
/// parameters and loss_per_epoch[t] the loss after t updates.
TrialRecord train(const ParametrizedCircuit& circuit, const EncodedDataset& data, const Observable& obs,
                  const TrainConfig& config, int trial_id = 0);
TrialRecord train(const ParametrizedCircuit& circuit, const Dataset& dataset, const Observable& obs,
                  const TrainConfig& config, int trial_id = 0);

}  // namespace qnnlab
