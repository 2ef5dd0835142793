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
#include "qnnlab/training.hpp"

#include <cmath>
#include <random>

#include "qnnlab/encoding.hpp"
#include "qnnlab/error.hpp"

namespace qnnlab {

namespace {

constexpr double kShift = std::numbers::pi / 2;

void check_params(const ParametrizedCircuit& circuit, std::span<const double> params) {
  if (static_cast<int>(params.size()) != circuit.num_params()) {
    throw ConfigError("expected " + std::to_string(circuit.num_params()) + " parameters, got " +
                      std::to_string(params.size()));
  }
}

void check_data(const ParametrizedCircuit& circuit, const EncodedDataset& data) {
  if (data.size() == 0) throw ConfigError("cost needs a non-empty dataset");
  if (data.targets.size() != data.inputs.size()) throw ConfigError("inputs and targets differ in length");
  if (data.inputs.front().num_qubits() != circuit.num_qubits()) throw ConfigError("encoded inputs do not match circuit size");
}

std::string optimizer_name(OptimizerKind k) { return k == OptimizerKind::GD ? "gd" : "adam"; }

}  // namespace

double label_target(const Observable& obs, int label) {
  if (label != 0 && label != 1) throw ConfigError("labels must be 0 or 1");
  return obs.kind() == Observable::Kind::Proj0Last ? label : 2.0 * label - 1.0;
}

EncodedDataset encode_dataset(const Dataset& dataset, int num_qubits, const Observable& obs) {
  EncodedDataset out;
  out.inputs.reserve(dataset.size());
  out.targets.reserve(dataset.size());
  for (const auto& s : dataset.samples) {
    out.inputs.push_back(experiment_encode(s.x, num_qubits));
    out.targets.push_back(label_target(obs, s.y));
  }
  return out;
}

double cost(const ParametrizedCircuit& circuit, std::span<const double> params, const EncodedDataset& data,
            const Observable& obs) {
  check_params(circuit, params);
  check_data(circuit, data);
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double diff = evaluate(circuit, params, data.inputs[i], obs) - data.targets[i];
    acc += diff * diff;
  }
  return acc / static_cast<double>(data.size());
}

double cost(const ParametrizedCircuit& circuit, std::span<const double> params, const Dataset& dataset,
            const Observable& obs) {
  if (dataset.empty()) throw ConfigError("cost needs a non-empty dataset");
  return cost(circuit, params, encode_dataset(dataset, circuit.num_qubits(), obs), obs);
}

CostAndGradient cost_and_gradient(const ParametrizedCircuit& circuit, std::span<const double> params,
                                  const EncodedDataset& data, const Observable& obs) {
  check_params(circuit, params);
  check_data(circuit, data);
  const std::vector<Gate> gates = circuit.gates();
  const std::size_t num_params = params.size();
  const double inv_d = 1.0 / static_cast<double>(data.size());

  CostAndGradient out;
  out.gradient.assign(num_params, 0.0);
  std::vector<double> df(num_params);

  for (std::size_t i = 0; i < data.size(); ++i) {
    std::fill(df.begin(), df.end(), 0.0);
    StateVector state = data.inputs[i];
    for (std::size_t k = 0; k < gates.size(); ++k) {
      const Gate& g = gates[k];
      if (g.is_trainable()) {
        if (!is_rotation(g.kind())) throw ConfigError("parameter shift needs Pauli-rotation generators");
        const auto p = static_cast<std::size_t>(*g.param_index());
        double shifted[2];
        for (int side = 0; side < 2; ++side) {
          StateVector branch = state;
          apply_rotation(branch, g.kind(), g.target(0), params[p] + (side == 0 ? kShift : -kShift));
          for (std::size_t r = k + 1; r < gates.size(); ++r) apply_gate(branch, gates[r], params);
          shifted[side] = expectation(branch, obs);
        }
        df[p] += (shifted[0] - shifted[1]) / 2;
      }
      apply_gate(state, g, params);
    }
    const double residual = expectation(state, obs) - data.targets[i];
    out.cost += residual * residual * inv_d;
    for (std::size_t p = 0; p < num_params; ++p) out.gradient[p] += 2.0 * residual * df[p] * inv_d;
  }
  return out;
}

std::vector<double> parameter_shift_gradient(const ParametrizedCircuit& circuit, std::span<const double> params,
                                             const EncodedDataset& data, const Observable& obs) {
  return cost_and_gradient(circuit, params, data, obs).gradient;
}

std::vector<double> parameter_shift_gradient(const ParametrizedCircuit& circuit, std::span<const double> params,
                                             const Dataset& dataset, const Observable& obs) {
  if (dataset.empty()) throw ConfigError("gradient needs a non-empty dataset");
  return parameter_shift_gradient(circuit, params, encode_dataset(dataset, circuit.num_qubits(), obs), obs);
}

std::vector<double> gd_step(std::span<const double> params, std::span<const double> grad, double eta) {
  if (params.size() != grad.size()) throw ConfigError("parameter and gradient lengths differ");
  std::vector<double> out(params.begin(), params.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= eta * grad[i];
  return out;
}

AdamState AdamState::zeros(std::size_t dim, double learning_rate, double beta1, double beta2, double eps) {
  AdamState s;
  s.learning_rate = learning_rate;
  s.beta1 = beta1;
  s.beta2 = beta2;
  s.eps = eps;
  s.m.assign(dim, 0.0);
  s.v.assign(dim, 0.0);
  return s;
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad) {
  if (params.size() != grad.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ConfigError("Adam state, parameter and gradient dimensions differ");
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

std::vector<double> initial_params(std::size_t count, const InitSpec& init) {
  std::mt19937_64 rng(init.seed);
  std::vector<double> out(count);
  if (init.distribution == InitSpec::Distribution::Uniform) {
    std::uniform_real_distribution<double> dist(init.a, init.b);
    for (auto& v : out) v = dist(rng);
  } else {
    std::normal_distribution<double> dist(init.a, init.b);
    for (auto& v : out) v = dist(rng);
  }
  return out;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("Adam betas must lie in [0, 1)");
  if (!(adam_eps > 0.0)) throw ConfigError("Adam epsilon must be > 0");
  if (init.distribution == InitSpec::Distribution::Uniform && !(init.b > init.a)) {
    throw ConfigError("uniform initialization needs b > a");
  }
  if (init.distribution == InitSpec::Distribution::Normal && !(init.b > 0.0)) {
    throw ConfigError("normal initialization needs a positive standard deviation");
  }
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"epochs", c.epochs},
          {"learning_rate", c.learning_rate},
          {"optimizer", optimizer_name(c.optimizer)},
          {"adam_betas", {c.beta1, c.beta2}},
          {"adam_eps", c.adam_eps},
          {"init",
           {{"distribution", c.init.distribution == InitSpec::Distribution::Uniform ? "uniform" : "normal"},
            {"a", c.init.a},
            {"b", c.init.b}}}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  try {
    c.epochs = j.value("epochs", c.epochs);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    const std::string opt = j.value("optimizer", std::string("adam"));
    if (opt == "adam") {
      c.optimizer = OptimizerKind::Adam;
    } else if (opt == "gd") {
      c.optimizer = OptimizerKind::GD;
    } else {
      throw ConfigError("unknown optimizer '" + opt + "'");
    }
    if (j.contains("adam_betas")) {
      const auto betas = j.at("adam_betas").get<std::vector<double>>();
      if (betas.size() != 2) throw ConfigError("adam_betas must have two entries");
      c.beta1 = betas[0];
      c.beta2 = betas[1];
    }
    c.adam_eps = j.value("adam_eps", c.adam_eps);
    if (j.contains("init")) {
      const auto& ji = j.at("init");
      const std::string dist = ji.value("distribution", std::string("uniform"));
      if (dist == "uniform") {
        c.init.distribution = InitSpec::Distribution::Uniform;
      } else if (dist == "normal") {
        c.init.distribution = InitSpec::Distribution::Normal;
        c.init.a = 0.0;
        c.init.b = 1.0;
      } else {
        throw ConfigError("unknown init distribution '" + dist + "'");
      }
      c.init.a = ji.value("a", c.init.a);
      c.init.b = ji.value("b", c.init.b);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed train config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const TrialRecord& r) {
  return {{"trial_id", r.trial_id},
          {"seed", r.seed},
          {"ansatz",
           {{"family", to_string(r.ansatz.family)},
            {"depth", r.ansatz.depth},
            {"num_qubits", r.ansatz.num_qubits},
            {"restricted", r.ansatz.restricted},
            {"topology", r.ansatz.topology_name},
            {"seed", r.ansatz.rng_seed}}},
          {"observable", r.observable},
          {"loss_per_epoch", r.loss_per_epoch},
          {"final_params", r.final_params}};
}

TrialRecord train(const ParametrizedCircuit& circuit, const EncodedDataset& data, const Observable& obs,
                  const TrainConfig& config, int trial_id) {
  config.validate();
  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.seed = config.init.seed;
  rec.ansatz = circuit.metadata();
  rec.observable = obs.name();

  std::vector<double> params = initial_params(static_cast<std::size_t>(circuit.num_params()), config.init);
  AdamState adam = AdamState::zeros(params.size(), config.learning_rate, config.beta1, config.beta2, config.adam_eps);
  rec.loss_per_epoch.reserve(static_cast<std::size_t>(config.epochs) + 1);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const CostAndGradient cg = cost_and_gradient(circuit, params, data, obs);
    rec.loss_per_epoch.push_back(cg.cost);
    if (config.optimizer == OptimizerKind::Adam) {
      adam_step(adam, params, cg.gradient);
    } else {
      params = gd_step(params, cg.gradient, config.learning_rate);
    }
  }
  rec.loss_per_epoch.push_back(cost(circuit, params, data, obs));
  rec.final_params = std::move(params);
  return rec;
}

TrialRecord train(const ParametrizedCircuit& circuit, const Dataset& dataset, const Observable& obs,
                  const TrainConfig& config, int trial_id) {
  if (dataset.empty()) throw ConfigError("training needs a non-empty dataset");
  return train(circuit, encode_dataset(dataset, circuit.num_qubits(), obs), obs, config, trial_id);
}

}  // namespace qnnlab
