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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qnnlab/dataset.hpp"
#include "qnnlab/error.hpp"
#include "qnnlab/theory.hpp"

namespace qnnlab {
namespace {

const Observable kZ = Observable::pauli_z_last();
const Observable kP0 = Observable::proj0_last();

TEST(HaarMean, Examples) {
  EXPECT_DOUBLE_EQ(haar_mean(kZ, 8), 0.0);
  EXPECT_DOUBLE_EQ(haar_mean(kP0, 4), 0.5);
  EXPECT_DOUBLE_EQ(haar_mean(kP0, 1024), 0.5);
}

TEST(HaarSecondMoment, Examples) {
  EXPECT_NEAR(haar_second_moment(kZ, 4), 0.2, 1e-15);
  EXPECT_NEAR(haar_second_moment(kP0, 4), 0.3, 1e-15);
  EXPECT_NEAR(haar_second_moment(kP0, 2), 1.0 / 3.0, 1e-15);
}

TEST(HaarVariance, ClosedForms) {
  EXPECT_NEAR(haar_variance(kZ, 4), 0.2, 1e-15);
  EXPECT_NEAR(haar_variance(kP0, 4), 0.05, 1e-15);
  for (std::size_t d = 2; d <= 1024; d *= 2) {
    const double dd = static_cast<double>(d);
    EXPECT_NEAR(haar_variance(kZ, d), 1.0 / (dd + 1.0), 1e-15);
    EXPECT_NEAR(haar_variance(kP0, d), 1.0 / (4.0 * (dd + 1.0)), 1e-15);
  }
}

TEST(HaarVariance, EqualsSecondMomentMinusSquaredMean) {
  for (std::size_t d = 2; d <= 1024; d *= 2) {
    for (const auto& obs : {kZ, kP0}) {
      const double m1 = haar_mean(obs, d);
      EXPECT_NEAR(haar_variance(obs, d), haar_second_moment(obs, d) - m1 * m1, 1e-12) << d;
    }
  }
}

TEST(HaarVariance, DecreasesWithDimension) {
  for (const auto& obs : {kZ, kP0}) {
    double prev = haar_variance(obs, 2);
    for (std::size_t d = 4; d <= 1024; d *= 2) {
      const double v = haar_variance(obs, d);
      EXPECT_LT(v, prev);
      EXPECT_GT(v, 0.0);
      prev = v;
    }
  }
}

TEST(HaarMoments, BadDimension) {
  EXPECT_THROW(haar_variance(kZ, 3), ConfigError);
  EXPECT_THROW(haar_mean(kZ, 1), ConfigError);
}

TEST(DeviationBound, Examples) {
  EXPECT_NEAR(deviation_bound(kZ, 4, 0.0), 0.2, 1e-15);
  for (const auto& obs : {kZ, kP0}) {
    const auto b = make_deviation_bound(obs, 16);
    EXPECT_NEAR(deviation_bound(obs, 16, 0.3), b.delta + 0.3, 1e-15);
  }
  EXPECT_NEAR(deviation_bound(kZ, 1024, 0.0), 1.0 / 1025.0, 1e-15);
  EXPECT_NEAR(deviation_bound(kZ, 1024, 0.0), 9.756e-4, 1e-7);
  EXPECT_THROW(deviation_bound(kZ, 4, -0.1), ConfigError);
}

TEST(DeviationBound, LooseNumeratorIsLarger) {
  for (std::size_t d = 2; d <= 256; d *= 2) {
    const double tight = make_deviation_bound(kP0, d).delta;
    const double loose = make_deviation_bound(kP0, d, BoundNumerator::DPlus1).delta;
    const double dd = static_cast<double>(d);
    EXPECT_NEAR(loose / tight, (dd + 1) / (dd - 1), 1e-12);
  }
}

TEST(Theorem1, LowerBoundIsHaarVariance) {
  const auto ds = make_moons(20, 0.1, 3);
  EXPECT_NEAR(theorem1_lower_bound(ds, kZ, 4), 0.2, 1e-15);
  Dataset one;
  one.samples.push_back({{0.3, 0.4}, 1});
  EXPECT_DOUBLE_EQ(theorem1_lower_bound(one, kP0, 8), haar_variance(kP0, 8));
  EXPECT_THROW(theorem1_lower_bound(Dataset{}, kZ, 4), ConfigError);
}

TEST(Theorem1, DecompositionAddsUp) {
  const auto ds = make_moons(10, 0.0, 0);
  // Half the labels are 0 and half 1, so with proj0 the bias is (0.5-0)^2 = (0.5-1)^2 = 0.25.
  const auto p = theorem1_decomposition(ds, kP0, 8);
  EXPECT_NEAR(p.variance_term, haar_variance(kP0, 8), 1e-15);
  EXPECT_NEAR(p.bias_term, 0.25, 1e-15);
  EXPECT_NEAR(p.expected_cost, p.variance_term + p.bias_term, 1e-15);
  // Targets are +-1 under Pauli Z and the mean is 0, so the bias is 1.
  EXPECT_NEAR(theorem1_decomposition(ds, kZ, 8).bias_term, 1.0, 1e-15);
}

TEST(HaarSampler, Unitary) {
  std::mt19937_64 rng(17);
  for (std::size_t d : {1u, 2u, 3u, 8u, 64u}) {
    const auto u = sample_haar_unitary(d, rng);
    const auto id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    EXPECT_LT((u.adjoint() * u - id).cwiseAbs().maxCoeff(), 1e-10);
    for (Eigen::Index c = 0; c < u.cols(); ++c) EXPECT_NEAR(u.col(c).norm(), 1.0, 1e-10);
  }
  const auto scalar = sample_haar_unitary(1, rng);
  EXPECT_NEAR(std::abs(scalar(0, 0)), 1.0, 1e-12);
  EXPECT_THROW(sample_haar_unitary(0, rng), ConfigError);
  EXPECT_THROW(sample_haar_unitary(65, rng), ConfigError);
}

// |U_{00}|^2 for Haar U has the Beta(1, d-1) distribution, so the first
// column's phase-free statistics give an independent check: E|U_00|^2 = 1/d.
TEST(HaarSampler, FirstEntryMoment) {
  std::mt19937_64 rng(19);
  const std::size_t d = 4;
  const int n = 20000;
  double acc = 0.0, acc2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(sample_haar_unitary(d, rng)(0, 0));
    acc += p;
    acc2 += p * p;
  }
  const double mean = acc / n;
  const double var = acc2 / n - mean * mean;
  EXPECT_NEAR(mean, 0.25, 3.0 * std::sqrt(var / n));
  // Var of Beta(1, 3) = 3 / (16 * 5).
  EXPECT_NEAR(var, 3.0 / 80.0, 0.003);
}

TEST(MonteCarlo, MeanAndVarianceWithinThreeStandardErrors) {
  std::mt19937_64 rng(23);
  const auto z = monte_carlo_moments(kZ, 4, 100000, rng);
  EXPECT_NEAR(z.mean, 0.0, 3.0 * std::sqrt(0.2 / 1e5));
  EXPECT_NEAR(z.variance, 0.2, 3.0 * z.se_var);
  const auto p = monte_carlo_moments(kP0, 4, 100000, rng);
  EXPECT_NEAR(p.mean, 0.5, 3.0 * p.se_mean);
  EXPECT_NEAR(p.variance, 0.05, 3.0 * p.se_var);
  EXPECT_THROW(monte_carlo_moments(kZ, 4, 1, rng), ConfigError);
}

TEST(MonteCarlo, StandardErrorHalvesAtFourTimesSamples) {
  const auto small = monte_carlo_moments(kP0, 8, 20000, 5, 4);
  const auto large = monte_carlo_moments(kP0, 8, 80000, 5, 4);
  EXPECT_NEAR(small.se_mean / large.se_mean, 2.0, 0.1);
  EXPECT_NEAR(small.se_var / large.se_var, 2.0, 0.15);
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  const auto a = monte_carlo_moments(kZ, 8, 4000, 77, 8, 1);
  const auto b = monte_carlo_moments(kZ, 8, 4000, 77, 8, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_EQ(a.se_var, b.se_var);
}

TEST(MomentReport, Shape) {
  std::mt19937_64 rng(2);
  const auto j = moment_report(kZ, haar_moments(kZ, 4), monte_carlo_moments(kZ, 4, 100, rng));
  EXPECT_EQ(j.at("d"), 4);
  EXPECT_EQ(j.at("observable"), "z_last");
  EXPECT_DOUBLE_EQ(j.at("analytic").at("var").get<double>(), 0.2);
  EXPECT_EQ(j.at("mc").at("n"), 100);
}

}  // namespace
}  // namespace qnnlab
