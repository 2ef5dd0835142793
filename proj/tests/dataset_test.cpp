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
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <unistd.h>

#include <gtest/gtest.h>

#include "qnnlab/dataset.hpp"
#include "qnnlab/error.hpp"

namespace qnnlab {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qnnlab_dataset_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path file(const std::string& name) const { return dir_ / name; }
  void write(const fs::path& p, const std::string& text) const { std::ofstream(p) << text; }

  fs::path dir_;
};

TEST(Moons, NoiselessClassZeroOnUnitCircle) {
  const auto ds = make_moons(100, 0.0, 1);
  int zeros = 0;
  for (const auto& s : ds.samples) {
    if (s.y != 0) continue;
    ++zeros;
    EXPECT_NEAR(s.x[0] * s.x[0] + s.x[1] * s.x[1], 1.0, 1e-12);
  }
  EXPECT_EQ(zeros, 50);
}

TEST(Moons, NoiselessClassOneOnShiftedCircle) {
  for (const auto& s : make_moons(40, 0.0, 0).samples) {
    if (s.y == 1) EXPECT_NEAR((1 - s.x[0]) * (1 - s.x[0]) + (0.5 - s.x[1]) * (0.5 - s.x[1]), 1.0, 1e-12);
  }
}

TEST(Moons, Balanced) {
  for (int n : {100, 7, 2}) {
    const auto ds = make_moons(n, 0.1, 5);
    ASSERT_EQ(ds.size(), static_cast<std::size_t>(n));
    const auto ones = std::count_if(ds.samples.begin(), ds.samples.end(), [](const Sample& s) { return s.y == 1; });
    EXPECT_EQ(ones, n - n / 2);
  }
}

TEST(Moons, SeedDeterminism) {
  EXPECT_EQ(make_moons(100, 0.1, 42), make_moons(100, 0.1, 42));
  EXPECT_NE(make_moons(100, 0.1, 42), make_moons(100, 0.1, 43));
}

TEST(Moons, NoiseChangesPointsButNotLabels) {
  const auto clean = make_moons(60, 0.0, 1);
  const auto noisy = make_moons(60, 0.2, 1);
  double moved = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    EXPECT_EQ(clean.samples[i].y, noisy.samples[i].y);
    moved += std::hypot(clean.samples[i].x[0] - noisy.samples[i].x[0], clean.samples[i].x[1] - noisy.samples[i].x[1]);
  }
  EXPECT_GT(moved / 60.0, 0.05);
}

TEST(Moons, BadArguments) {
  EXPECT_THROW(make_moons(1, 0.1, 0), ConfigError);
  EXPECT_THROW(make_moons(10, -0.1, 0), ConfigError);
}

TEST(Scale, AffineMap) {
  Dataset ds;
  ds.samples = {{{0.0, 1.0}, 0}, {{2.0, 3.0}, 1}, {{4.0, 2.0}, 0}};
  const auto out = scale_features(ds, 0.0, std::numbers::pi);
  EXPECT_NEAR(out.samples[0].x[0], 0.0, 1e-15);
  EXPECT_NEAR(out.samples[1].x[0], std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(out.samples[2].x[0], std::numbers::pi, 1e-15);
  EXPECT_NEAR(out.samples[1].x[1], std::numbers::pi, 1e-15);
  EXPECT_EQ(out.samples[1].y, 1);
}

TEST(Scale, AlreadyAtExtremesIsUnchanged) {
  Dataset ds;
  ds.samples = {{{0.0, 0.0}, 0}, {{0.25, 1.0}, 1}, {{1.0, 0.5}, 0}};
  const auto out = scale_features(ds, 0.0, 1.0);
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (int f = 0; f < 2; ++f) EXPECT_NEAR(out.samples[i].x[f], ds.samples[i].x[f], 1e-15);
}

TEST(Scale, Errors) {
  Dataset ds;
  ds.samples = {{{1.0, 0.0}, 0}, {{1.0, 1.0}, 1}};
  EXPECT_THROW(scale_features(ds, 0.0, 1.0), ConfigError);
  ds.samples[1].x[0] = 2.0;
  EXPECT_THROW(scale_features(ds, 1.0, 1.0), ConfigError);
  EXPECT_THROW(scale_features(Dataset{}, 0.0, 1.0), ConfigError);
}

TEST_F(TempDir, CsvRoundTrip) {
  const auto ds = make_moons(100, 0.1, 9);
  save_csv(ds, file("moons.csv"));
  const auto back = load_csv(file("moons.csv"));
  ASSERT_EQ(back.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(back.samples[i], ds.samples[i]);
}

TEST_F(TempDir, CsvRejectsBadLabel) {
  write(file("bad.csv"), "x0,x1,y\n0.1,0.2,0\n0.3,0.4,2\n");
  EXPECT_THROW(load_csv(file("bad.csv")), RuntimeError);
}

TEST_F(TempDir, CsvRejectsEmptyAndMalformed) {
  write(file("empty.csv"), "");
  EXPECT_THROW(load_csv(file("empty.csv")), RuntimeError);
  write(file("header.csv"), "a,b,c\n1,2,0\n");
  EXPECT_THROW(load_csv(file("header.csv")), RuntimeError);
  write(file("short.csv"), "x0,x1,y\n1,0\n");
  EXPECT_THROW(load_csv(file("short.csv")), RuntimeError);
  write(file("text.csv"), "x0,x1,y\nabc,0,1\n");
  EXPECT_THROW(load_csv(file("text.csv")), RuntimeError);
  EXPECT_THROW(load_csv(file("missing.csv")), RuntimeError);
}

TEST(Sidecar, Fields) {
  const auto j = moons_sidecar(MoonsParams{.n = 30, .noise_std = 0.05, .seed = 7}, Split::Test);
  EXPECT_EQ(j.at("n"), 30);
  EXPECT_EQ(j.at("noise_std"), 0.05);
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_EQ(j.at("split"), "test");
}

}  // namespace
}  // namespace qnnlab
