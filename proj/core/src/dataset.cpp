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
#include "qnnlab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qnnlab/error.hpp"

namespace qnnlab {

namespace {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw RuntimeError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> linspace_0_pi(int count) {
  std::vector<double> t(static_cast<std::size_t>(count), 0.0);
  for (int i = 1; i < count; ++i) t[static_cast<std::size_t>(i)] = std::numbers::pi * i / (count - 1);
  return t;
}

}  // namespace

std::string_view to_string(Split split) noexcept { return split == Split::Train ? "train" : "test"; }

Dataset make_moons(int n, double noise_std, std::uint64_t seed, Split split) {
  if (n < 2) throw ConfigError("make_moons needs n >= 2");
  if (!(noise_std >= 0.0)) throw ConfigError("noise_std must be >= 0");
  const int n_outer = n / 2;
  const int n_inner = n - n_outer;

  Dataset ds;
  ds.split = split;
  ds.seed = seed;
  ds.samples.reserve(static_cast<std::size_t>(n));
  for (double t : linspace_0_pi(n_outer)) ds.samples.push_back({{std::cos(t), std::sin(t)}, 0});
  for (double t : linspace_0_pi(n_inner)) ds.samples.push_back({{1.0 - std::cos(t), 0.5 - std::sin(t)}, 1});

  if (noise_std > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> jitter(0.0, noise_std);
    for (auto& s : ds.samples) {
      s.x[0] += jitter(rng);
      s.x[1] += jitter(rng);
    }
  }
  return ds;
}

Dataset make_moons(const MoonsParams& params, Split split) {
  return make_moons(params.n, params.noise_std, params.seed, split);
}

Dataset scale_features(const Dataset& ds, double lo, double hi) {
  if (!(hi > lo)) throw ConfigError("scale_features needs hi > lo");
  if (ds.empty()) throw ConfigError("cannot scale an empty dataset");
  Dataset out = ds;
  for (std::size_t f = 0; f < 2; ++f) {
    const auto [mn, mx] = std::minmax_element(ds.samples.begin(), ds.samples.end(),
                                              [f](const Sample& a, const Sample& b) { return a.x[f] < b.x[f]; });
    const double vmin = mn->x[f];
    const double vmax = mx->x[f];
    if (!(vmax > vmin)) throw ConfigError("feature " + std::to_string(f) + " is constant");
    const double ratio = (hi - lo) / (vmax - vmin);
    for (auto& s : out.samples) s.x[f] = std::clamp(lo + (s.x[f] - vmin) * ratio, lo, hi);
  }
  return out;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot write " + path.string());
  out << "x0,x1,y\n";
  for (const auto& s : ds.samples) out << format_double(s.x[0]) << ',' << format_double(s.x[1]) << ',' << s.y << '\n';
  if (!out) throw RuntimeError("write failed for " + path.string());
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw RuntimeError(path.string() + " is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x0,x1,y") throw RuntimeError(path.string() + ": expected header 'x0,x1,y', got '" + line + "'");

  Dataset ds;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw RuntimeError("line " + std::to_string(line_no) + ": expected 3 columns");
    Sample s;
    s.x[0] = parse_double(fields[0], line_no);
    s.x[1] = parse_double(fields[1], line_no);
    if (fields[2] == "0") {
      s.y = 0;
    } else if (fields[2] == "1") {
      s.y = 1;
    } else {
      throw RuntimeError("line " + std::to_string(line_no) + ": label must be 0 or 1, got '" + std::string(fields[2]) + "'");
    }
    ds.samples.push_back(s);
  }
  if (ds.empty()) throw RuntimeError(path.string() + " has no data rows");
  return ds;
}

nlohmann::json moons_sidecar(const MoonsParams& params, Split split) {
  return {{"generator", "moons"},
          {"n", params.n},
          {"noise_std", params.noise_std},
          {"seed", params.seed},
          {"split", to_string(split)}};
}

void save_sidecar(const MoonsParams& params, Split split, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw RuntimeError("cannot write " + path.string());
  out << moons_sidecar(params, split).dump(2) << '\n';
}

}  // namespace qnnlab
