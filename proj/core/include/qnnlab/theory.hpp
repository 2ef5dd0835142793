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

// Haar-average moments of f(U) = Tr[U rho U^dagger H] for a pure input rho,
// the cost-deviation bound built from them, and a Monte-Carlo Haar sampler
// that checks the closed forms numerically.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qnnlab/dataset.hpp"
#include "qnnlab/simulator.hpp"

namespace qnnlab {

struct HaarMoments {
  std::size_t d = 0;
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
};

/// Tr[H] / d.
double haar_mean(const Observable& obs, std::size_t d);

/// (Tr[H]^2 + Tr[H^2]) / (d^2 - 1) * (1 - 1/d).
double haar_second_moment(const Observable& obs, std::size_t d);

/// (1 - d) / (d^2 (d^2 - 1)) Tr[H]^2 + (d - 1) / (d (d^2 - 1)) Tr[H^2].
/// Evaluated from its own closed form, not as second_moment - mean^2, so the
/// two routes can be compared.
double haar_variance(const Observable& obs, std::size_t d);

HaarMoments haar_moments(const Observable& obs, std::size_t d);

/// Which numerator multiplies (|Tr[H]^2| + d |Tr[H^2]|) / (d^2 (d^2 - 1)).
/// DMinus1 follows from the variance formula and is the default; DPlus1 is a
/// looser variant.
enum class BoundNumerator { DMinus1, DPlus1 };

struct DeviationBound {
  double delta = 0.0;
  double bound(double cost_value) const noexcept;
};

DeviationBound make_deviation_bound(const Observable& obs, std::size_t d,
                                    BoundNumerator numerator = BoundNumerator::DMinus1);

/// delta + |cost_value|. Throws ConfigError for a negative cost value.
double deviation_bound(const Observable& obs, std::size_t d, double cost_value,
                       BoundNumerator numerator = BoundNumerator::DMinus1);

/// Lower bound on E_U[C]: the dataset average of Var_U[f(x_i, U)], which for
/// pure encoded inputs is haar_variance for every sample.
double theorem1_lower_bound(const Dataset& dataset, const Observable& obs, std::size_t d);

/// Exact split of E_U[C] = mean_i Var_U[f] + mean_i (mu - y_i)^2 with
/// mu = haar_mean and targets y_i from label_target(obs, label).
struct CostDecomposition {
  double variance_term = 0.0;
  double bias_term = 0.0;
  double expected_cost = 0.0;
};

CostDecomposition theorem1_decomposition(const Dataset& dataset, const Observable& obs, std::size_t d);

/// Haar-random d x d unitary: QR of a complex Ginibre matrix with the
/// diagonal of R rotated onto the positive reals. Requires 1 <= d <= 64.
Eigen::MatrixXcd sample_haar_unitary(std::size_t d, std::mt19937_64& rng);

struct MonteCarloMoments {
  std::size_t d = 0;
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
};

/// Sample mean and unbiased variance of f over Haar draws with rho = |0><0|,
/// with standard errors. Requires num_samples >= 2 and d a power of two <= 64.
MonteCarloMoments monte_carlo_moments(const Observable& obs, std::size_t d, std::size_t num_samples,
                                      std::mt19937_64& rng);

/// Same estimator split over independent streams seeded from master_seed and
/// merged by count-weighted pooling. Each stream runs on its own thread when
/// workers > 1; the result does not depend on workers.
MonteCarloMoments monte_carlo_moments(const Observable& obs, std::size_t d, std::size_t num_samples,
                                      std::uint64_t master_seed, int streams, int workers = 1);

/// {d, observable, analytic: {mean, second, var}, mc: {mean, var, se_mean, se_var, n}}
nlohmann::json moment_report(const Observable& obs, const HaarMoments& analytic, const MonteCarloMoments& mc);

}  // namespace qnnlab
