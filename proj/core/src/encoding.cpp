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
#include "qnnlab/encoding.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qnnlab/error.hpp"

namespace qnnlab {

StateVector product_state(std::span<const std::array<Complex, 2>> qubits) {
  if (qubits.empty() || qubits.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ConfigError("product state needs between 1 and " + std::to_string(kMaxQubits) + " qubits");
  }
  std::vector<Complex> amps{1.0};
  for (const auto& q : qubits) {
    std::vector<Complex> next;
    next.reserve(amps.size() * 2);
    for (const auto& a : amps) {
      next.push_back(a * q[0]);
      next.push_back(a * q[1]);
    }
    amps = std::move(next);
  }
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector wavefunction_encode(std::span<const double> x, int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw ConfigError("qubit count out of range");
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (x.size() > dim) throw ConfigError("feature vector longer than 2^N");
  double sq = 0.0;
  for (double v : x) sq += v * v;
  if (!(sq > 0.0) || !std::isfinite(sq)) throw ConfigError("cannot normalize an all-zero or non-finite feature vector");
  const double inv = 1.0 / std::sqrt(sq);
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) amps[i] = x[i] * inv;
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector dense_angle_encode(std::span<const double> x) {
  if (x.empty() || x.size() % 2 != 0) throw ConfigError("dense angle encoding needs an even, non-zero feature count");
  using std::numbers::pi;
  std::vector<std::array<Complex, 2>> qubits;
  for (std::size_t i = 0; i < x.size(); i += 2) {
    qubits.push_back({Complex{std::cos(pi * x[i]), 0.0}, std::polar(1.0, 2 * pi * x[i + 1]) * std::sin(pi * x[i])});
  }
  return product_state(qubits);
}

StateVector qubit_encode(std::span<const double> x) {
  std::vector<std::array<Complex, 2>> qubits;
  for (double v : x) qubits.push_back({Complex{std::cos(v), 0.0}, Complex{std::sin(v), 0.0}});
  return product_state(qubits);
}

StateVector experiment_encode(std::span<const double> x, int num_qubits) {
  if (x.size() != 2) throw ConfigError("experiment encoder takes exactly 2 features, got " + std::to_string(x.size()));
  StateVector state = StateVector::zero(num_qubits);
  for (int q = 0; q < num_qubits; ++q) {
    apply_rotation(state, GateKind::RY, q, x[0]);
    apply_rotation(state, GateKind::RZ, q, x[1]);
  }
  return state;
}

}  // namespace qnnlab
