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
#include "qnnlab/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>

#include "qnnlab/error.hpp"

namespace qnnlab {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw ConfigError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

void check_target(const StateVector& state, int q) {
  if (q < 0 || q >= state.num_qubits()) {
    throw ConfigError("gate target " + std::to_string(q) + " out of range for " +
                      std::to_string(state.num_qubits()) + " qubits");
  }
}

// Spreads k over all indices whose bits at positions lo_mask and hi_mask are
// zero (lo_mask < hi_mask, both single bits).
inline std::size_t insert_two_zeros(std::size_t k, std::size_t lo_mask, std::size_t hi_mask) noexcept {
  std::size_t low = k & (lo_mask - 1);
  k = ((k & ~(lo_mask - 1)) << 1) | low;
  low = k & (hi_mask - 1);
  return ((k & ~(hi_mask - 1)) << 1) | low;
}

template <typename Kernel>
void for_each_pair(std::span<Complex> amps, std::size_t m, Kernel&& kernel) {
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * m) {
    for (std::size_t i = base; i < base + m; ++i) kernel(amps[i], amps[i + m]);
  }
}

// Calls kernel(i) for every basis index with both the a and b bits cleared.
template <typename Kernel>
void for_each_quad(std::size_t dim, std::size_t ma, std::size_t mb, Kernel&& kernel) {
  const std::size_t lo = std::min(ma, mb);
  const std::size_t hi = std::max(ma, mb);
  for (std::size_t k = 0; k < dim / 4; ++k) kernel(insert_two_zeros(k, lo, hi));
}

}  // namespace

StateVector StateVector::zero(int num_qubits) {
  check_qubit_count(num_qubits);
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps[0] = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t len = amplitudes.size();
  if (len < 2 || !std::has_single_bit(len)) {
    throw ConfigError("amplitude count " + std::to_string(len) + " is not a power of two >= 2");
  }
  const int n = std::countr_zero(len);
  check_qubit_count(n);
  double sq = 0.0;
  for (const auto& a : amplitudes) sq += std::norm(a);
  if (std::abs(std::sqrt(sq) - 1.0) > 1e-9) throw ConfigError("amplitudes are not unit-norm");
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const noexcept {
  double sq = 0.0;
  for (const auto& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

StateVector init_zero_state(int num_qubits) { return StateVector::zero(num_qubits); }

std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CY: return "CY";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Identity: return "I";
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  static constexpr std::array kAll{GateKind::RX,   GateKind::RY, GateKind::RZ, GateKind::CNOT,
                                   GateKind::CY,   GateKind::CZ, GateKind::SWAP, GateKind::Identity};
  for (GateKind k : kAll) {
    if (to_string(k) == name) return k;
  }
  if (name == "IDENTITY") return GateKind::Identity;
  throw ConfigError("unknown gate kind '" + std::string(name) + "'");
}

bool is_rotation(GateKind kind) noexcept {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

Gate Gate::rotation(GateKind kind, int qubit, int param_index) {
  if (!is_rotation(kind)) throw ConfigError("trainable gate must be a rotation, got " + std::string(to_string(kind)));
  if (qubit < 0) throw ConfigError("negative gate target");
  if (param_index < 0) throw ConfigError("negative parameter index");
  Gate g;
  g.kind_ = kind;
  g.arity_ = 1;
  g.targets_ = {qubit, 0};
  g.param_index_ = param_index;
  return g;
}

Gate Gate::fixed_rotation(GateKind kind, int qubit, double angle) {
  if (!is_rotation(kind)) throw ConfigError("fixed-angle gate must be a rotation, got " + std::string(to_string(kind)));
  if (qubit < 0) throw ConfigError("negative gate target");
  Gate g;
  g.kind_ = kind;
  g.arity_ = 1;
  g.targets_ = {qubit, 0};
  g.fixed_angle_ = angle;
  return g;
}

Gate Gate::two_qubit(GateKind kind, int first, int second) {
  if (is_rotation(kind)) throw ConfigError("rotation gates act on a single qubit");
  if (first < 0 || second < 0) throw ConfigError("negative gate target");
  if (first == second) throw ConfigError("two-qubit gate targets must be distinct");
  Gate g;
  g.kind_ = kind;
  g.arity_ = 2;
  g.targets_ = {first, second};
  return g;
}

Gate Gate::identity(int qubit) {
  if (qubit < 0) throw ConfigError("negative gate target");
  Gate g;
  g.targets_ = {qubit, 0};
  return g;
}

double Gate::angle(std::span<const double> params) const {
  if (fixed_angle_) return *fixed_angle_;
  if (param_index_) {
    const auto idx = static_cast<std::size_t>(*param_index_);
    if (idx >= params.size()) {
      throw ConfigError("parameter index " + std::to_string(idx) + " not covered by " +
                        std::to_string(params.size()) + " parameters");
    }
    return params[idx];
  }
  return 0.0;
}

void apply_rotation(StateVector& state, GateKind kind, int qubit, double angle) {
  check_target(state, qubit);
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const std::size_t m = state.mask(qubit);
  auto amps = state.amplitudes();
  switch (kind) {
    case GateKind::RX:
      for_each_pair(amps, m, [c, s](Complex& a0, Complex& a1) {
        const Complex n0 = c * a0 - kI * s * a1;
        a1 = -kI * s * a0 + c * a1;
        a0 = n0;
      });
      break;
    case GateKind::RY:
      for_each_pair(amps, m, [c, s](Complex& a0, Complex& a1) {
        const Complex n0 = c * a0 - s * a1;
        a1 = s * a0 + c * a1;
        a0 = n0;
      });
      break;
    case GateKind::RZ: {
      const Complex p0{c, -s};
      const Complex p1{c, s};
      for_each_pair(amps, m, [p0, p1](Complex& a0, Complex& a1) {
        a0 *= p0;
        a1 *= p1;
      });
      break;
    }
    default:
      throw ConfigError("not a rotation: " + std::string(to_string(kind)));
  }
}

void apply_gate(StateVector& state, const Gate& gate, std::span<const double> params) {
  for (int t : gate.targets()) check_target(state, t);
  if (is_rotation(gate.kind())) {
    apply_rotation(state, gate.kind(), gate.target(0), gate.angle(params));
    return;
  }
  if (gate.kind() == GateKind::Identity) return;

  auto amps = state.amplitudes();
  const std::size_t ma = state.mask(gate.target(0));
  const std::size_t mb = state.mask(gate.target(1));
  const std::size_t dim = state.dim();
  switch (gate.kind()) {
    case GateKind::CNOT:
      for_each_quad(dim, ma, mb, [&](std::size_t i) { std::swap(amps[i | ma], amps[i | ma | mb]); });
      break;
    case GateKind::CY:
      for_each_quad(dim, ma, mb, [&](std::size_t i) {
        const Complex a0 = amps[i | ma];
        const Complex a1 = amps[i | ma | mb];
        amps[i | ma] = -kI * a1;
        amps[i | ma | mb] = kI * a0;
      });
      break;
    case GateKind::CZ:
      for_each_quad(dim, ma, mb, [&](std::size_t i) { amps[i | ma | mb] = -amps[i | ma | mb]; });
      break;
    case GateKind::SWAP:
      for_each_quad(dim, ma, mb, [&](std::size_t i) { std::swap(amps[i | ma], amps[i | mb]); });
      break;
    default:
      break;
  }
}

StateVector applied(StateVector state, const Gate& gate, std::span<const double> params) {
  apply_gate(state, gate, params);
  return state;
}

Observable Observable::tensor_pauli(std::vector<Pauli> factors) {
  if (factors.empty()) throw ConfigError("tensor-Pauli observable needs at least one factor");
  for (Pauli p : factors) {
    if (p != Pauli::I && p != Pauli::X && p != Pauli::Y && p != Pauli::Z) {
      throw ConfigError("invalid Pauli factor");
    }
  }
  return Observable(Kind::TensorPauli, std::move(factors));
}

Observable Observable::parse(std::string_view name) {
  if (name == "z_last" || name == "pauli_z_last") return pauli_z_last();
  if (name == "proj0_last") return proj0_last();
  std::vector<Pauli> factors;
  for (char c : name) {
    switch (c) {
      case 'I': factors.push_back(Pauli::I); break;
      case 'X': factors.push_back(Pauli::X); break;
      case 'Y': factors.push_back(Pauli::Y); break;
      case 'Z': factors.push_back(Pauli::Z); break;
      default: throw ConfigError("unknown observable '" + std::string(name) + "'");
    }
  }
  return tensor_pauli(std::move(factors));
}

std::string Observable::name() const {
  switch (kind_) {
    case Kind::PauliZLast: return "z_last";
    case Kind::Proj0Last: return "proj0_last";
    case Kind::TensorPauli: {
      std::string s;
      for (Pauli p : factors_) s.push_back(static_cast<char>(p));
      return s;
    }
  }
  return {};
}

double expectation(const StateVector& state, const Observable& obs) {
  const auto amps = state.amplitudes();
  switch (obs.kind()) {
    case Observable::Kind::PauliZLast: {
      double acc = 0.0;
      for (std::size_t i = 0; i < amps.size(); i += 2) acc += std::norm(amps[i]) - std::norm(amps[i + 1]);
      return acc;
    }
    case Observable::Kind::Proj0Last: {
      double acc = 0.0;
      for (std::size_t i = 0; i < amps.size(); i += 2) acc += std::norm(amps[i]);
      return acc;
    }
    case Observable::Kind::TensorPauli: {
      if (static_cast<int>(obs.factors().size()) != state.num_qubits()) {
        throw ConfigError("observable covers " + std::to_string(obs.factors().size()) + " qubits, state has " +
                          std::to_string(state.num_qubits()));
      }
      std::vector<Complex> h(amps.begin(), amps.end());
      for (int q = 0; q < state.num_qubits(); ++q) {
        const std::size_t m = state.mask(q);
        switch (obs.factors()[static_cast<std::size_t>(q)]) {
          case Pauli::I: break;
          case Pauli::X: for_each_pair(h, m, [](Complex& a0, Complex& a1) { std::swap(a0, a1); }); break;
          case Pauli::Y:
            for_each_pair(h, m, [](Complex& a0, Complex& a1) {
              const Complex n0 = -kI * a1;
              a1 = kI * a0;
              a0 = n0;
            });
            break;
          case Pauli::Z: for_each_pair(h, m, [](Complex&, Complex& a1) { a1 = -a1; }); break;
        }
      }
      Complex acc{0.0, 0.0};
      for (std::size_t i = 0; i < h.size(); ++i) acc += std::conj(amps[i]) * h[i];
      return acc.real();
    }
  }
  return 0.0;
}

namespace {

void check_dimension(const Observable& obs, std::size_t d) {
  if (d < 2 || !std::has_single_bit(d)) throw ConfigError("dimension " + std::to_string(d) + " is not a power of two >= 2");
  if (obs.kind() == Observable::Kind::TensorPauli && (std::size_t{1} << obs.factors().size()) != d) {
    throw ConfigError("dimension does not match observable qubit count");
  }
}

}  // namespace

double trace(const Observable& obs, std::size_t d) {
  check_dimension(obs, d);
  const auto dd = static_cast<double>(d);
  switch (obs.kind()) {
    case Observable::Kind::PauliZLast: return 0.0;
    case Observable::Kind::Proj0Last: return dd / 2;
    case Observable::Kind::TensorPauli:
      return std::all_of(obs.factors().begin(), obs.factors().end(), [](Pauli p) { return p == Pauli::I; }) ? dd : 0.0;
  }
  return 0.0;
}

double trace_sq(const Observable& obs, std::size_t d) {
  check_dimension(obs, d);
  const auto dd = static_cast<double>(d);
  // Pauli strings square to the identity; the projector is idempotent.
  return obs.kind() == Observable::Kind::Proj0Last ? dd / 2 : dd;
}

}  // namespace qnnlab
