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
// Dense-matrix reference model built from Kronecker products. Shares no code
// with the stride kernels it checks.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qnnlab/circuits.hpp"
#include "qnnlab/simulator.hpp"

namespace qnnlab::testing {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline Mat pauli(char p) {
  const std::complex<double> i{0.0, 1.0};
  Mat m(2, 2);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

inline Mat proj(int bit) {
  Mat m = Mat::Zero(2, 2);
  m(bit, bit) = 1.0;
  return m;
}

/// Operator that places the given single-qubit factors (identity elsewhere)
/// with qubit 0 as the leftmost Kronecker factor.
inline Mat embed(int n, const std::vector<std::pair<int, Mat>>& factors) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    Mat f = Mat::Identity(2, 2);
    for (const auto& [target, m] : factors) {
      if (target == q) f = m;
    }
    out = kron(out, f);
  }
  return out;
}

/// exp(-i theta sigma / 2) via its matrix exponential series identity.
inline Mat rotation(char axis, double theta) {
  const std::complex<double> i{0.0, 1.0};
  return std::cos(theta / 2) * Mat::Identity(2, 2) - i * std::sin(theta / 2) * pauli(axis);
}

inline Mat gate_matrix(int n, const Gate& g, const std::vector<double>& params) {
  switch (g.kind()) {
    case GateKind::RX: return embed(n, {{g.target(0), rotation('X', g.angle(params))}});
    case GateKind::RY: return embed(n, {{g.target(0), rotation('Y', g.angle(params))}});
    case GateKind::RZ: return embed(n, {{g.target(0), rotation('Z', g.angle(params))}});
    case GateKind::CNOT:
    case GateKind::CY:
    case GateKind::CZ: {
      const char p = g.kind() == GateKind::CNOT ? 'X' : g.kind() == GateKind::CY ? 'Y' : 'Z';
      return embed(n, {{g.target(0), proj(0)}}) + embed(n, {{g.target(0), proj(1)}, {g.target(1), pauli(p)}});
    }
    case GateKind::SWAP: {
      Mat m = embed(n, {});
      for (char p : {'X', 'Y', 'Z'}) m += embed(n, {{g.target(0), pauli(p)}, {g.target(1), pauli(p)}});
      return m / 2.0;
    }
    case GateKind::Identity: return embed(n, {});
  }
  return embed(n, {});
}

inline Mat observable_matrix(int n, const Observable& obs) {
  switch (obs.kind()) {
    case Observable::Kind::PauliZLast: return embed(n, {{n - 1, pauli('Z')}});
    case Observable::Kind::Proj0Last: return embed(n, {{n - 1, proj(0)}});
    case Observable::Kind::TensorPauli: {
      std::vector<std::pair<int, Mat>> f;
      for (int q = 0; q < n; ++q) f.emplace_back(q, pauli(static_cast<char>(obs.factors()[static_cast<std::size_t>(q)])));
      return embed(n, f);
    }
  }
  return embed(n, {});
}

inline Vec to_vec(const StateVector& s) {
  Vec v(static_cast<Eigen::Index>(s.dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

inline Mat circuit_matrix(const ParametrizedCircuit& c, const std::vector<double>& params) {
  Mat u = Mat::Identity(Eigen::Index{1} << c.num_qubits(), Eigen::Index{1} << c.num_qubits());
  for (const Gate& g : c.gates()) u = gate_matrix(c.num_qubits(), g, params) * u;
  return u;
}

inline double dense_expectation(const ParametrizedCircuit& c, const std::vector<double>& params,
                                const StateVector& input, const Observable& obs) {
  const Vec psi = circuit_matrix(c, params) * to_vec(input);
  return (psi.adjoint() * observable_matrix(c.num_qubits(), obs) * psi)(0, 0).real();
}

}  // namespace qnnlab::testing
