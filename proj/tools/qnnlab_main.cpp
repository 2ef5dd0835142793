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
// qnnlab command-line front end.
//
//   qnnlab run --config <path.json> [--paper-scale] [--workers K] [--out DIR]
//   qnnlab summarize <glob>... [--out combined.csv]
//   qnnlab theory --d 2,4,8 --samples 100000 [--sweep-root DIR]
//   qnnlab route --topology guadalupe (--circuit <file> | --pair a,b)
//   qnnlab circuit --family fixed --qubits 5 --depth 1 [--restricted]
//
// Exit codes: 0 success, 1 config error, 2 runtime error, 3 theory-check
// violation.

#include <glob.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "qnnlab/circuits.hpp"
#include "qnnlab/error.hpp"
#include "qnnlab/experiments.hpp"
#include "qnnlab/topology.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitViolation = 3;

void log_progress(std::string_view msg) { spdlog::info("{}", msg); }

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  ::globfree(&g);
  return out;
}

int report_theory(const qnnlab::TheoryReport& report) {
  std::cout << report.to_json().dump(2) << '\n';
  if (!report.ok()) {
    spdlog::error("theory check found {} moment failures and {} bound violations", report.moment_failures,
                  report.violations.size());
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_run(const std::string& config_path, bool full_scale, std::optional<int> workers,
            std::optional<std::string> out) {
  qnnlab::ExperimentConfig config = qnnlab::load_experiment_config(config_path);
  if (full_scale) qnnlab::apply_full_scale(config);
  if (workers) config.workers = *workers;
  if (out) config.output_dir = *out;
  config.validate();
  spdlog::info("{} config_hash={} workers={}", qnnlab::to_string(config.experiment),
               qnnlab::hash_hex(qnnlab::config_hash(config)), config.workers);

  switch (config.experiment) {
    case qnnlab::ExperimentKind::RandomSweep: {
      const auto result = qnnlab::run_random_sweep(config, log_progress);
      for (const auto& r : result.runs) {
        spdlog::info("N={} L={} final mean={:.6f} spread={:.6f}", r.num_qubits, r.depth, r.summary.final_mean(),
                     r.summary.final_spread());
      }
      spdlog::info("results in {}", result.root.string());
      return kExitOk;
    }
    case qnnlab::ExperimentKind::FixedCompare: {
      const auto result = qnnlab::run_fixed_compare(config, log_progress);
      for (const auto& g : result.gaps) {
        spdlog::info("N={} L={} free={:.6f} restricted={:.6f} gap={:.6f}", g.num_qubits, g.depth, g.mean_free,
                     g.mean_restricted, g.gap);
      }
      spdlog::info("results in {}", result.root.string());
      return kExitOk;
    }
    case qnnlab::ExperimentKind::TheoryCheck:
      return report_theory(qnnlab::run_theory_check(config, log_progress));
  }
  return kExitOk;
}

int cmd_summarize(const std::vector<std::string>& patterns, std::optional<std::string> out) {
  std::vector<std::filesystem::path> files;
  for (const auto& p : patterns) {
    for (auto& f : expand_glob(p)) files.emplace_back(std::move(f));
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  if (files.empty()) throw qnnlab::RuntimeError("no raw CSV matched the given pattern(s)");
  std::optional<std::filesystem::path> combined;
  if (out) combined = *out;
  for (const auto& p : qnnlab::summarize(files, combined)) std::cout << p.string() << '\n';
  return kExitOk;
}

int cmd_theory(const std::vector<std::size_t>& dims, std::size_t samples, const std::vector<std::string>& observables,
               std::uint64_t seed, const std::string& sweep_root, bool loose, int workers, const std::string& out) {
  qnnlab::ExperimentConfig config;
  config.experiment = qnnlab::ExperimentKind::TheoryCheck;
  config.theory_dims = dims;
  config.theory_samples = samples;
  config.theory_observables = observables;
  config.master_seed = seed;
  config.sweep_root = sweep_root;
  config.loose_bound = loose;
  config.workers = workers;
  config.output_dir = out;
  return report_theory(qnnlab::run_theory_check(config, log_progress));
}

int cmd_route(const std::string& topology, const std::string& circuit_path, const std::vector<int>& pair) {
  const qnnlab::CouplingGraph g = qnnlab::resolve_topology(topology);
  if (!pair.empty()) {
    if (pair.size() != 2) throw qnnlab::ConfigError("--pair takes exactly two qubit indices");
    const auto r = qnnlab::routing_cost(g, pair[0], pair[1]);
    nlohmann::json j{{"topology", g.name()},
                     {"pair", pair},
                     {"distance", qnnlab::distance(g, pair[0], pair[1])},
                     {"swaps", r.swaps},
                     {"physical_cnots", r.physical_cnots}};
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  if (circuit_path.empty()) throw qnnlab::ConfigError("route needs --circuit or --pair");
  std::ifstream in(circuit_path);
  if (!in) throw qnnlab::ConfigError("cannot open circuit file " + circuit_path);
  nlohmann::json jc;
  try {
    jc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw qnnlab::ConfigError("invalid JSON in " + circuit_path + ": " + e.what());
  }
  const auto circuit = qnnlab::ParametrizedCircuit::from_json(jc);
  nlohmann::json j = qnnlab::to_json(qnnlab::transpile_overhead(circuit, g));
  j["topology"] = g.name();
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_circuit(const std::string& family, int qubits, int depth, bool restricted, std::uint64_t seed,
                const std::string& topology, const std::string& out) {
  qnnlab::AnsatzSpec spec;
  if (family == "fixed") {
    spec.family = qnnlab::AnsatzFamily::Fixed;
  } else if (family == "random") {
    spec.family = qnnlab::AnsatzFamily::Random;
  } else {
    throw qnnlab::ConfigError("family must be 'fixed' or 'random'");
  }
  spec.num_qubits = qubits;
  spec.depth = depth;
  spec.restricted = restricted;
  spec.rng_seed = seed;
  const qnnlab::CouplingGraph g = qnnlab::resolve_topology(topology);
  spec.topology_name = g.name();
  const std::string text = qnnlab::build_ansatz(spec, g).to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw qnnlab::RuntimeError("cannot write " + out);
    f << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::default_logger()->clone("qnnlab"));
  spdlog::set_pattern("[%H:%M:%S] %v");

  CLI::App app{"Variational-circuit concentration laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  bool full_scale = false;
  std::optional<int> workers;
  std::optional<std::string> out;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_flag("--paper-scale", full_scale, "Use 300/50 trials, qubits 2..10, depths {2,4,6}");
  run->add_option("--workers", workers, "Concurrent trials");
  run->add_option("--out", out, "Output directory");

  std::vector<std::string> patterns;
  std::optional<std::string> combined;
  auto* summ = app.add_subcommand("summarize", "Summarize raw loss CSVs");
  summ->add_option("patterns", patterns, "raw.csv paths or glob patterns")->required();
  summ->add_option("--out", combined, "Also write a long-format CSV over all inputs");

  std::vector<std::size_t> dims{2, 4, 8};
  std::size_t samples = 100000;
  std::vector<std::string> observables{"z_last", "proj0_last"};
  std::uint64_t seed = 20240101;
  std::string sweep_root;
  bool loose = false;
  int theory_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string theory_out = "results";
  auto* theory = app.add_subcommand("theory", "Compare analytic Haar moments with Monte-Carlo estimates");
  theory->add_option("--d", dims, "Hilbert dimensions")->delimiter(',');
  theory->add_option("--samples", samples, "Haar samples per dimension");
  theory->add_option("--observables", observables, "Observables")->delimiter(',');
  theory->add_option("--seed", seed, "Master seed");
  theory->add_option("--sweep-root", sweep_root, "Check the deviation bound over raw.csv files below this directory");
  theory->add_flag("--loose-bound", loose, "Use the (d+1) numerator for the deviation constant");
  theory->add_option("--workers", theory_workers, "Sampling threads");
  theory->add_option("--out", theory_out, "Output directory");

  std::string topology = "guadalupe";
  std::string circuit_path;
  std::vector<int> pair;
  auto* route = app.add_subcommand("route", "Report SWAP-routing overhead on a coupling graph");
  route->add_option("--topology", topology, "Built-in name or coupling-graph JSON");
  route->add_option("--circuit", circuit_path, "Circuit JSON");
  route->add_option("--pair", pair, "Cost of one logical CNOT between two qubits")->delimiter(',');

  std::string family = "fixed";
  int qubits = 2;
  int depth = 1;
  bool restricted = false;
  std::uint64_t circuit_seed = 0;
  std::string circuit_out;
  auto* circ = app.add_subcommand("circuit", "Emit an ansatz circuit as JSON");
  circ->add_option("--family", family, "fixed or random");
  circ->add_option("--qubits", qubits, "Qubit count");
  circ->add_option("--depth", depth, "Layer count");
  circ->add_flag("--restricted", restricted, "Restrict two-qubit gates to coupling edges");
  circ->add_option("--seed", circuit_seed, "Seed for the random family");
  circ->add_option("--topology", topology, "Built-in name or coupling-graph JSON");
  circ->add_option("--out", circuit_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, full_scale, workers, out);
    if (*summ) return cmd_summarize(patterns, combined);
    if (*theory) return cmd_theory(dims, samples, observables, seed, sweep_root, loose, theory_workers, theory_out);
    if (*route) return cmd_route(topology, circuit_path, pair);
    if (*circ) return cmd_circuit(family, qubits, depth, restricted, circuit_seed, topology, circuit_out);
  } catch (const qnnlab::ConfigError& e) {
    spdlog::error("config error: {}", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
