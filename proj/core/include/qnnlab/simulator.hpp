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

// Dense statevector simulation.
//
// Basis ordering: qubit 0 is the most significant bit of the basis index, so
// for N qubits the amplitude of |q0 q1 ... q_{N-1}> lives at
// index sum_q q_k * 2^(N-1-k). Gates update the amplitude array in place by
// stride iteration; no 2^N x 2^N matrix is ever formed.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnnlab {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 24;

class StateVector {
 public:
  /// |0...0> on num_qubits qubits. Throws ConfigError outside [1, kMaxQubits].
  static StateVector zero(int num_qubits);

  /// Wraps explicit amplitudes. The length must be 2^N with N in
  /// [1, kMaxQubits] and the Euclidean norm must be 1 within 1e-9.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

  double norm() const noexcept;

  /// Bit mask of qubit q inside a basis index.
  std::size_t mask(int q) const noexcept { return std::size_t{1} << (num_qubits_ - 1 - q); }

 private:
  StateVector(int n, std::vector<Complex> amps) : num_qubits_(n), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<Complex> amps_;
};

StateVector init_zero_state(int num_qubits);

enum class GateKind { RX, RY, RZ, CNOT, CY, CZ, SWAP, Identity };

std::string_view to_string(GateKind kind) noexcept;
GateKind gate_kind_from_string(std::string_view name);
bool is_rotation(GateKind kind) noexcept;

/// A single gate. Rotations act on one qubit and carry either a fixed angle
/// or the index of a trainable parameter; two-qubit kinds carry two distinct
/// targets (control first for CNOT/CY/CZ) and no angle. Identity may act on
/// one or two qubits and is a no-op.
class Gate {
 public:
  static Gate rotation(GateKind kind, int qubit, int param_index);
  static Gate fixed_rotation(GateKind kind, int qubit, double angle);
  static Gate two_qubit(GateKind kind, int first, int second);
  static Gate identity(int qubit);

  GateKind kind() const noexcept { return kind_; }
  int arity() const noexcept { return arity_; }
  std::span<const int> targets() const noexcept { return {targets_.data(), static_cast<std::size_t>(arity_)}; }
  int target(int i) const noexcept { return targets_[static_cast<std::size_t>(i)]; }

  bool is_trainable() const noexcept { return param_index_.has_value(); }
  std::optional<int> param_index() const noexcept { return param_index_; }
  std::optional<double> fixed_angle() const noexcept { return fixed_angle_; }

  /// Angle used when applying the gate with the given parameter vector.
  double angle(std::span<const double> params) const;

  bool operator==(const Gate&) const = default;

 private:
  Gate() = default;

  GateKind kind_ = GateKind::Identity;
  int arity_ = 1;
  std::array<int, 2> targets_{0, 0};
  std::optional<int> param_index_;
  std::optional<double> fixed_angle_;
};

/// Applies exp(-i angle sigma / 2) with sigma the Pauli of kind on qubit q.
void apply_rotation(StateVector& state, GateKind kind, int qubit, double angle);

/// Applies gate to state in place, resolving its angle against params.
/// Throws ConfigError when a target is out of range or the parameter index
/// is not covered by params.
void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params);

/// Value-returning form of apply_gate.
StateVector applied(StateVector state, const Gate& gate, std::span<const double> params);

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

class Observable {
 public:
  enum class Kind { PauliZLast, Proj0Last, TensorPauli };

  /// I x ... x I x sigma_z on the last qubit.
  static Observable pauli_z_last() { return Observable(Kind::PauliZLast, {}); }
  /// I x ... x I x |0><0| on the last qubit.
  static Observable proj0_last() { return Observable(Kind::Proj0Last, {}); }
  /// Tensor product of single-qubit Paulis, one per qubit (qubit 0 first).
  static Observable tensor_pauli(std::vector<Pauli> factors);
  /// Accepts "z_last", "proj0_last" or a Pauli string such as "IXZ".
  static Observable parse(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  std::span<const Pauli> factors() const noexcept { return factors_; }
  std::string name() const;

  bool operator==(const Observable&) const = default;

 private:
  Observable(Kind kind, std::vector<Pauli> factors) : kind_(kind), factors_(std::move(factors)) {}

  Kind kind_;
  std::vector<Pauli> factors_;
};

/// <psi|H|psi>. Throws ConfigError when a TensorPauli observable does not
/// cover exactly the qubits of the state.
double expectation(const StateVector& state, const Observable& obs);

/// Tr[H] and Tr[H^2] for Hilbert dimension d (a power of two, d >= 2).
double trace(const Observable& obs, std::size_t d);
double trace_sq(const Observable& obs, std::size_t d);

}  // namespace qnnlab
