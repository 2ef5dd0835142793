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
#include "qnnlab/theory.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>
#include <vector>

#include "qnnlab/error.hpp"
#include "qnnlab/seeding.hpp"
#include "qnnlab/training.hpp"

namespace qnnlab {

double haar_mean(const Observable& obs, std::size_t d) { return trace(obs, d) / static_cast<double>(d); }

double haar_second_moment(const Observable& obs, std::size_t d) {
  const double dd = static_cast<double>(d);
  const double tr = trace(obs, d);
  return (tr * tr + trace_sq(obs, d)) / (dd * dd - 1.0) * (1.0 - 1.0 / dd);
}

double haar_variance(const Observable& obs, std::size_t d) {
  const double dd = static_cast<double>(d);
  const double tr = trace(obs, d);
  const double denom = dd * dd - 1.0;
  return (1.0 - dd) / (dd * dd * denom) * tr * tr + (dd - 1.0) / (dd * denom) * trace_sq(obs, d);
}

HaarMoments haar_moments(const Observable& obs, std::size_t d) {
  return {d, haar_mean(obs, d), haar_second_moment(obs, d), haar_variance(obs, d)};
}

double DeviationBound::bound(double cost_value) const noexcept { return delta + std::abs(cost_value); }

DeviationBound make_deviation_bound(const Observable& obs, std::size_t d, BoundNumerator numerator) {
  const double dd = static_cast<double>(d);
  const double tr = trace(obs, d);
  const double num = numerator == BoundNumerator::DMinus1 ? dd - 1.0 : dd + 1.0;
  const double delta = num / (dd * dd * (dd * dd - 1.0)) * (std::abs(tr * tr) + dd * std::abs(trace_sq(obs, d)));
  return {delta};
}

double deviation_bound(const Observable& obs, std::size_t d, double cost_value, BoundNumerator numerator) {
  if (cost_value < 0.0) throw ConfigError("cost value must be non-negative");
  return make_deviation_bound(obs, d, numerator).bound(cost_value);
}

double theorem1_lower_bound(const Dataset& dataset, const Observable& obs, std::size_t d) {
  if (dataset.empty()) throw ConfigError("theorem-1 bound needs a non-empty dataset");
  // Var_U[f(x_i, U)] does not depend on the pure input, so every term of the
  // dataset average is identical.
  const double v = haar_variance(obs, d);
  double acc = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) acc += v;
  return acc / static_cast<double>(dataset.size());
}

CostDecomposition theorem1_decomposition(const Dataset& dataset, const Observable& obs, std::size_t d) {
  CostDecomposition out;
  out.variance_term = theorem1_lower_bound(dataset, obs, d);
  const double mu = haar_mean(obs, d);
  double bias = 0.0;
  for (const auto& s : dataset.samples) {
    const double diff = mu - label_target(obs, s.y);
    bias += diff * diff;
  }
  out.bias_term = bias / static_cast<double>(dataset.size());
  out.expected_cost = out.variance_term + out.bias_term;
  return out;
}

Eigen::MatrixXcd sample_haar_unitary(std::size_t d, std::mt19937_64& rng) {
  if (d < 1 || d > 64) throw ConfigError("Haar sampler supports 1 <= d <= 64");
  const auto n = static_cast<Eigen::Index>(d);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex{re, im};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex rjj = packed(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : Complex{1.0, 0.0};
  }
  return q;
}

namespace {

struct PowerSums {
  std::size_t n = 0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

  void add(double f) noexcept {
    const double f2 = f * f;
    ++n;
    s1 += f;
    s2 += f2;
    s3 += f2 * f;
    s4 += f2 * f2;
  }
  void merge(const PowerSums& o) noexcept {
    n += o.n;
    s1 += o.s1;
    s2 += o.s2;
    s3 += o.s3;
    s4 += o.s4;
  }
};

void check_mc_args(std::size_t d, std::size_t num_samples) {
  if (num_samples < 2) throw ConfigError("Monte-Carlo estimate needs at least 2 samples");
  if (d < 2 || d > 64 || !std::has_single_bit(d)) throw ConfigError("Monte-Carlo dimension must be a power of two in [2, 64]");
}

PowerSums sample_stream(const Observable& obs, std::size_t d, std::size_t count, std::mt19937_64& rng) {
  PowerSums sums;
  std::vector<Complex> column(d);
  for (std::size_t k = 0; k < count; ++k) {
    const Eigen::MatrixXcd u = sample_haar_unitary(d, rng);
    for (std::size_t r = 0; r < d; ++r) column[r] = u(static_cast<Eigen::Index>(r), 0);
    sums.add(expectation(StateVector::from_amplitudes(column), obs));
  }
  return sums;
}

MonteCarloMoments finish(const PowerSums& s, std::size_t d) {
  const double n = static_cast<double>(s.n);
  const double m = s.s1 / n;
  const double m2 = s.s2 / n - m * m;
  const double m4 = s.s4 / n - 4 * m * s.s3 / n + 6 * m * m * s.s2 / n - 3 * m * m * m * m;
  MonteCarloMoments out;
  out.d = d;
  out.n = s.n;
  out.mean = m;
  out.variance = std::max(0.0, m2 * n / (n - 1.0));
  out.se_mean = std::sqrt(out.variance / n);
  const double var_of_var = (m4 - out.variance * out.variance * (n - 3.0) / (n - 1.0)) / n;
  out.se_var = std::sqrt(std::max(0.0, var_of_var));
  return out;
}

}  // namespace

MonteCarloMoments monte_carlo_moments(const Observable& obs, std::size_t d, std::size_t num_samples,
                                      std::mt19937_64& rng) {
  check_mc_args(d, num_samples);
  return finish(sample_stream(obs, d, num_samples, rng), d);
}

MonteCarloMoments monte_carlo_moments(const Observable& obs, std::size_t d, std::size_t num_samples,
                                      std::uint64_t master_seed, int streams, int workers) {
  check_mc_args(d, num_samples);
  if (streams < 1) throw ConfigError("need at least one stream");
  const auto ns = static_cast<std::size_t>(streams);
  std::vector<PowerSums> partial(ns);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t s = next++; s < ns; s = next++) {
      const std::size_t count = num_samples / ns + (s < num_samples % ns ? 1 : 0);
      std::mt19937_64 rng(derive_seed(master_seed, {d, s}));
      partial[s] = sample_stream(obs, d, count, rng);
    }
  };
  const int nthreads = std::clamp(workers, 1, streams);
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  }
  PowerSums total;
  for (const auto& p : partial) total.merge(p);
  return finish(total, d);
}

nlohmann::json moment_report(const Observable& obs, const HaarMoments& analytic, const MonteCarloMoments& mc) {
  return {{"d", analytic.d},
          {"observable", obs.name()},
          {"analytic", {{"mean", analytic.mean}, {"second", analytic.second_moment}, {"var", analytic.variance}}},
          {"mc",
           {{"mean", mc.mean}, {"var", mc.variance}, {"se_mean", mc.se_mean}, {"se_var", mc.se_var}, {"n", mc.n}}}};
}

}  // namespace qnnlab
