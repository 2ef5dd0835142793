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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qnnlab {

struct Sample {
  std::array<double, 2> x{};
  int y = 0;
  bool operator==(const Sample&) const = default;
};

enum class Split { Train, Test };

std::string_view to_string(Split split) noexcept;

struct Dataset {
  std::vector<Sample> samples;
  Split split = Split::Train;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  bool operator==(const Dataset&) const = default;
};

struct MoonsParams {
  int n = 100;
  double noise_std = 0.1;
  std::uint64_t seed = 0;
};

/// Two interleaved half circles. Class 0: (cos t, sin t); class 1:
/// (1 - cos t, 0.5 - sin t); t evenly spaced on [0, pi]. Class 0 receives
/// n / 2 points, class 1 the rest. Gaussian jitter with standard deviation
/// noise_std is added to every coordinate.
Dataset make_moons(int n, double noise_std, std::uint64_t seed, Split split = Split::Train);
Dataset make_moons(const MoonsParams& params, Split split = Split::Train);

/// Per-feature affine map of the observed [min, max] onto [lo, hi].
Dataset scale_features(const Dataset& ds, double lo, double hi);

/// CSV with header x0,x1,y; doubles are written in shortest round-trip form.
void save_csv(const Dataset& ds, const std::filesystem::path& path);
Dataset load_csv(const std::filesystem::path& path);

/// Generation parameters stored next to a saved dataset.
nlohmann::json moons_sidecar(const MoonsParams& params, Split split);
void save_sidecar(const MoonsParams& params, Split split, const std::filesystem::path& path);

}  // namespace qnnlab
