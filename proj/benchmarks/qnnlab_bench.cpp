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
#include <random>

#include <benchmark/benchmark.h>

#include "qnnlab/circuits.hpp"
#include "qnnlab/dataset.hpp"
#include "qnnlab/theory.hpp"
#include "qnnlab/training.hpp"

namespace {

using namespace qnnlab;

ParametrizedCircuit random_circuit(int n, int l) {
  AnsatzSpec s;
  s.family = AnsatzFamily::Random;
  s.num_qubits = n;
  s.depth = l;
  s.rng_seed = 1;
  return build_random_ansatz(s, guadalupe());
}

void BM_Rotation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = init_zero_state(n);
  const Gate g = Gate::fixed_rotation(GateKind::RY, n / 2, 0.3);
  for (auto _ : state) {
    apply_gate(s, g, {});
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dim()));
}
BENCHMARK(BM_Rotation)->DenseRange(4, 16, 4);

void BM_Cnot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = init_zero_state(n);
  const Gate g = Gate::two_qubit(GateKind::CNOT, 0, n - 1);
  for (auto _ : state) {
    apply_gate(s, g, {});
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dim()));
}
BENCHMARK(BM_Cnot)->DenseRange(4, 16, 4);

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = random_circuit(n, 6);
  const auto p = initial_params(static_cast<std::size_t>(c.num_params()), InitSpec{});
  const auto input = init_zero_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(c, p, input, Observable::proj0_last()));
}
BENCHMARK(BM_Evaluate)->DenseRange(2, 10, 2);

void BM_CostAndGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = random_circuit(n, 6);
  const auto p = initial_params(static_cast<std::size_t>(c.num_params()), InitSpec{});
  const auto obs = Observable::proj0_last();
  const auto data = encode_dataset(scale_features(make_moons(100, 0.1, 0), 0, 3.14159), n, obs);
  for (auto _ : state) benchmark::DoNotOptimize(cost_and_gradient(c, p, data, obs));
}
BENCHMARK(BM_CostAndGradient)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_HaarUnitary(benchmark::State& state) {
  std::mt19937_64 rng(0);
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_haar_unitary(d, rng));
}
BENCHMARK(BM_HaarUnitary)->RangeMultiplier(2)->Range(2, 64);

}  // namespace

BENCHMARK_MAIN();
