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

#include <span>

#include "qnnlab/simulator.hpp"

namespace qnnlab {

/// Amplitudes x_i / ||x||_2 over num_qubits qubits; x is zero-padded to 2^N.
/// Throws ConfigError for an all-zero x or more than 2^N entries.
StateVector wavefunction_encode(std::span<const double> x, int num_qubits);

/// One qubit per feature pair (a, b): cos(pi a)|0> + e^{2 pi i b} sin(pi a)|1>.
/// Requires an even, non-zero feature count.
StateVector dense_angle_encode(std::span<const double> x);

/// One qubit per feature: cos(x_i)|0> + sin(x_i)|1>.
StateVector qubit_encode(std::span<const double> x);

/// Encoder used by the experiments: RY(x0) then RZ(x1) on every qubit of |0...0>.
StateVector experiment_encode(std::span<const double> x, int num_qubits);

/// Tensor product of single-qubit states, qubit 0 first.
StateVector product_state(std::span<const std::array<Complex, 2>> qubits);

}  // namespace qnnlab
