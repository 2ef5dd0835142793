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

// Orchestration of the two training experiment sets and the theory check.
//
// Output layout under output_dir:
//   <experiment>/dataset.csv, dataset.json
//   <experiment>/N<n>_L<l>_<arm>/raw.csv, summary.json, summary.csv,
//                                config.json, trials.json
//   <experiment>/index.json            (random_sweep, fixed_compare)
//   <experiment>/comparison.json       (fixed_compare)
//   theory_check/report.json
//
// Every file carries the config hash. Nothing that depends on scheduling
// (worker count, wall time, output location) is written, so identical
// configurations give byte-identical files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnnlab/theory.hpp"
#include "qnnlab/training.hpp"

namespace qnnlab {

enum class ExperimentKind { RandomSweep, FixedCompare, TheoryCheck };

std::string_view to_string(ExperimentKind kind) noexcept;
ExperimentKind experiment_kind_from_string(std::string_view name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::RandomSweep;
  std::vector<int> qubits{2, 4, 6, 8};
  std::vector<int> depths{2, 4, 6};
  int trials = 20;
  std::string observable = "proj0_last";
  std::string topology = "guadalupe";
  // Random sweep only: restrict pair candidates to coupling edges.
  bool restricted = false;
  // Fixed compare only: both arms draw initial parameters from the same
  // per-trial stream instead of independent ones.
  bool paired_seeds = false;
  TrainConfig train;
  std::uint64_t master_seed = 0;
  int dataset_size = 100;
  double noise_std = 0.1;

  // Theory check.
  std::vector<std::size_t> theory_dims{2, 4, 8};
  std::size_t theory_samples = 100000;
  std::vector<std::string> theory_observables{"z_last", "proj0_last"};
  std::string sweep_root;
  bool loose_bound = false;

  // Runtime-only; excluded from the hash and from written configs.
  std::filesystem::path output_dir = "results";
  int workers = 1;

  void validate() const;
};

/// CI-scale trial count for an experiment (20 random, 10 fixed).
int default_trials(ExperimentKind kind);

/// Full-scale sweep: 300 random / 50 fixed trials, qubits 2..10, depths {2, 4, 6}.
void apply_full_scale(ExperimentConfig& config);

/// Missing keys fall back to CI-scale defaults. Throws ConfigError.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Canonical form used for hashing and config.json (no runtime-only keys).
nlohmann::json to_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);
std::string hash_hex(std::uint64_t hash);

/// Stream seed of trial k for the given coordinates.
std::uint64_t trial_seed(std::uint64_t master_seed, ExperimentKind kind, int num_qubits, int depth, int arm, int trial);

struct EpochStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;
  double std_error = 0.0;
};

struct SummaryStats {
  std::size_t trials = 0;
  std::vector<EpochStats> epochs;

  double final_spread() const { return epochs.empty() ? 0.0 : epochs.back().spread; }
  double final_mean() const { return epochs.empty() ? 0.0 : epochs.back().mean; }
};

/// Per-epoch mean, min, max, spread and standard error across traces.
/// Throws ConfigError when traces is empty or lengths differ.
SummaryStats summarize_traces(const std::vector<std::vector<double>>& traces);

nlohmann::json to_json(const SummaryStats& s);

/// Loss traces of a raw CSV (columns trial,epoch,loss) indexed by trial.
struct RawTable {
  std::string config_hash;
  std::vector<std::vector<double>> traces;
};

void write_raw_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records, std::string_view hash);
RawTable read_raw_csv(const std::filesystem::path& path);

struct RunResult {
  std::filesystem::path dir;
  int num_qubits = 0;
  int depth = 0;
  std::string arm;
  SummaryStats summary;
  std::vector<TrialRecord> records;
};

struct FreeRestrictedGap {
  int num_qubits = 0;
  int depth = 0;
  double mean_free = 0.0;
  double mean_restricted = 0.0;
  double gap = 0.0;
};

struct ExperimentResult {
  std::filesystem::path root;
  std::vector<RunResult> runs;
  std::vector<FreeRestrictedGap> gaps;

  const RunResult* find(int num_qubits, int depth, std::string_view arm) const;
};

using ProgressFn = std::function<void(std::string_view)>;

ExperimentResult run_random_sweep(const ExperimentConfig& config, const ProgressFn& progress = {});
ExperimentResult run_fixed_compare(const ExperimentConfig& config, const ProgressFn& progress = {});

struct BoundViolation {
  std::string run;
  int trial = 0;
  int epoch = 0;
  double deviation = 0.0;
  double bound = 0.0;
};

struct Theorem1Check {
  std::string run;
  double epoch0_mean = 0.0;
  double std_error = 0.0;
  double haar_variance = 0.0;
  bool holds = false;
};

struct TheoryReport {
  nlohmann::json moments = nlohmann::json::array();
  int moment_failures = 0;
  std::size_t bound_points = 0;
  std::vector<BoundViolation> violations;
  std::vector<Theorem1Check> theorem1;

  bool ok() const;
  nlohmann::json to_json() const;
};

/// Analytic-versus-Monte-Carlo Haar moments for every (observable, d), plus
/// the deviation-bound and Theorem-1 checks over every raw.csv below
/// config.sweep_root (when set). The trial-ensemble mean stands in for E_U[C].
TheoryReport run_theory_check(const ExperimentConfig& config, const ProgressFn& progress = {});

/// Deviation-bound check of one set of traces measured with obs on
/// num_qubits qubits. Returns the violating (trial, epoch) points.
std::vector<BoundViolation> check_deviation_bound(const std::vector<std::vector<double>>& traces, const Observable& obs,
                                                  int num_qubits, BoundNumerator numerator, std::string_view run = {});

/// Writes summary.json and summary.csv next to each raw CSV; when
/// combined_csv is given, also a long-format CSV over every input.
/// Returns the written summary.json paths.
std::vector<std::filesystem::path> summarize(const std::vector<std::filesystem::path>& raw_csvs,
                                             const std::optional<std::filesystem::path>& combined_csv = {});

}  // namespace qnnlab
