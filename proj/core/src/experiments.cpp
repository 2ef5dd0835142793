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
#include "qnnlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "qnnlab/circuits.hpp"
#include "qnnlab/error.hpp"
#include "qnnlab/seeding.hpp"
#include "qnnlab/topology.hpp"

namespace qnnlab {

namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeError("cannot write " + path.string());
  out << text;
  if (!out) throw RuntimeError("write failed for " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw RuntimeError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw RuntimeError("cannot create " + dir.string() + ": " + ec.message());
}

// Runs fn(k) for k in [0, count) on up to workers threads. The first
// exception thrown by any task is rethrown after all threads finish.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  const int nthreads = std::clamp(workers, 1, std::max(count, 1));
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

int arm_id(std::string_view arm) { return arm == "restricted" ? 1 : 0; }

std::string run_dir_name(int n, int l, std::string_view arm) {
  return "N" + std::to_string(n) + "_L" + std::to_string(l) + "_" + std::string(arm);
}

nlohmann::json run_json(int n, int l, std::string_view arm, std::string_view observable) {
  return {{"num_qubits", n}, {"depth", l}, {"arm", arm}, {"observable", observable}, {"d", std::size_t{1} << n}};
}

std::string summary_csv(const SummaryStats& s) {
  std::string out = "epoch,mean,min,max,spread,std_error\n";
  for (std::size_t e = 0; e < s.epochs.size(); ++e) {
    const auto& st = s.epochs[e];
    out += std::to_string(e) + ',' + fmt_double(st.mean) + ',' + fmt_double(st.min) + ',' + fmt_double(st.max) + ',' +
           fmt_double(st.spread) + ',' + fmt_double(st.std_error) + '\n';
  }
  return out;
}

void write_summary_files(const fs::path& dir, const SummaryStats& s, std::string_view hash, const nlohmann::json& run) {
  nlohmann::json j = to_json(s);
  j["config_hash"] = hash;
  j["run"] = run;
  write_json(dir / "summary.json", j);
  write_text(dir / "summary.csv", summary_csv(s));
}

struct Prepared {
  ExperimentConfig config;
  CouplingGraph topology;
  Observable obs;
  Dataset dataset;
  std::string hash;
  fs::path root;
};

Prepared prepare(const ExperimentConfig& config, ExperimentKind expected) {
  config.validate();
  if (config.experiment != expected) {
    throw ConfigError("config experiment is '" + std::string(to_string(config.experiment)) + "', expected '" +
                      std::string(to_string(expected)) + "'");
  }
  Prepared p{config, resolve_topology(config.topology), Observable::parse(config.observable), {}, hash_hex(config_hash(config)),
             config.output_dir / std::string(to_string(expected))};
  const int max_n = *std::max_element(config.qubits.begin(), config.qubits.end());
  if (max_n > p.topology.num_qubits()) {
    throw ConfigError("qubit count " + std::to_string(max_n) + " exceeds topology '" + p.topology.name() + "' (" +
                      std::to_string(p.topology.num_qubits()) + " qubits)");
  }
  const MoonsParams moons{config.dataset_size, config.noise_std,
                          derive_seed(config.master_seed, {static_cast<std::uint64_t>(expected), 0xda7aULL})};
  p.dataset = scale_features(make_moons(moons), 0.0, std::numbers::pi);

  make_dirs(p.root);
  save_csv(p.dataset, p.root / "dataset.csv");
  nlohmann::json sidecar = moons_sidecar(moons, Split::Train);
  sidecar["scaled_to"] = {0.0, std::numbers::pi};
  sidecar["config_hash"] = p.hash;
  write_json(p.root / "dataset.json", sidecar);
  return p;
}

RunResult finish_run(const Prepared& p, int n, int l, std::string arm, std::vector<TrialRecord> records) {
  RunResult run;
  run.num_qubits = n;
  run.depth = l;
  run.arm = std::move(arm);
  run.dir = p.root / run_dir_name(n, l, run.arm);
  make_dirs(run.dir);

  std::vector<std::vector<double>> traces;
  traces.reserve(records.size());
  for (const auto& r : records) traces.push_back(r.loss_per_epoch);
  run.summary = summarize_traces(traces);

  const nlohmann::json run_meta = run_json(n, l, run.arm, p.config.observable);
  write_raw_csv(run.dir / "raw.csv", records, p.hash);
  write_summary_files(run.dir, run.summary, p.hash, run_meta);
  write_json(run.dir / "config.json", {{"config_hash", p.hash}, {"config", to_json(p.config)}, {"run", run_meta}});
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& r : records) trials.push_back(to_json(r));
  write_json(run.dir / "trials.json", {{"config_hash", p.hash}, {"trials", std::move(trials)}});
  run.records = std::move(records);
  return run;
}

std::vector<TrialRecord> train_trials(const Prepared& p, ExperimentKind kind, int n, int l, bool restricted,
                                      AnsatzFamily family, int seed_arm, const EncodedDataset& data) {
  std::vector<TrialRecord> records(static_cast<std::size_t>(p.config.trials));
  parallel_for(p.config.trials, p.config.workers, [&](int k) {
    const std::uint64_t stream = trial_seed(p.config.master_seed, kind, n, l, seed_arm, k);
    AnsatzSpec spec;
    spec.family = family;
    spec.depth = l;
    spec.num_qubits = n;
    spec.restricted = restricted;
    spec.topology_name = p.topology.name();
    spec.rng_seed = derive_seed(stream, {0});
    const ParametrizedCircuit circuit = build_ansatz(spec, p.topology);
    TrainConfig tc = p.config.train;
    tc.init.seed = derive_seed(stream, {1});
    records[static_cast<std::size_t>(k)] = train(circuit, data, p.obs, tc, k);
  });
  return records;
}

nlohmann::json index_json(const Prepared& p, const std::vector<RunResult>& runs) {
  nlohmann::json jr = nlohmann::json::array();
  for (const auto& r : runs) {
    jr.push_back({{"num_qubits", r.num_qubits},
                  {"depth", r.depth},
                  {"arm", r.arm},
                  {"dir", r.dir.filename().string()},
                  {"final_mean", r.summary.final_mean()},
                  {"final_spread", r.summary.final_spread()}});
  }
  return {{"config_hash", p.hash},
          {"experiment", to_string(p.config.experiment)},
          {"observable", p.config.observable},
          {"runs", std::move(jr)}};
}

void notify(const ProgressFn& progress, const std::string& msg) {
  if (progress) progress(msg);
}

}  // namespace

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::RandomSweep: return "random_sweep";
    case ExperimentKind::FixedCompare: return "fixed_compare";
    case ExperimentKind::TheoryCheck: return "theory_check";
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  if (name == "random_sweep") return ExperimentKind::RandomSweep;
  if (name == "fixed_compare") return ExperimentKind::FixedCompare;
  if (name == "theory_check") return ExperimentKind::TheoryCheck;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

int default_trials(ExperimentKind kind) { return kind == ExperimentKind::FixedCompare ? 10 : 20; }

void apply_full_scale(ExperimentConfig& config) {
  config.trials = config.experiment == ExperimentKind::FixedCompare ? 50 : 300;
  config.qubits = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  config.depths = {2, 4, 6};
}

void ExperimentConfig::validate() const {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (experiment == ExperimentKind::TheoryCheck) {
    if (theory_samples < 2) throw ConfigError("theory samples must be >= 2");
    if (theory_dims.empty()) throw ConfigError("theory check needs at least one dimension");
    for (std::size_t d : theory_dims) {
      if (d < 2 || d > 64 || (d & (d - 1)) != 0) throw ConfigError("theory dimensions must be powers of two in [2, 64]");
    }
    for (const auto& o : theory_observables) Observable::parse(o);
    return;
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (qubits.empty() || depths.empty()) throw ConfigError("qubits and depths must be non-empty");
  for (int n : qubits) {
    if (n < 2) throw ConfigError("every qubit count must be >= 2");
    if (n > kMaxQubits) throw ConfigError("qubit count exceeds simulator limit");
  }
  for (int l : depths) {
    if (l < 1) throw ConfigError("every depth must be >= 1");
  }
  if (observable != "z_last" && observable != "proj0_last") {
    throw ConfigError("observable must be 'z_last' or 'proj0_last', got '" + observable + "'");
  }
  if (dataset_size < 2) throw ConfigError("dataset size must be >= 2");
  if (!(noise_std >= 0.0)) throw ConfigError("noise_std must be >= 0");
  train.validate();
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    c.experiment = experiment_kind_from_string(j.at("experiment").get<std::string>());
    c.trials = default_trials(c.experiment);
    c.qubits = j.value("qubits", c.qubits);
    c.depths = j.value("depths", c.depths);
    c.trials = j.value("trials", c.trials);
    c.observable = j.value("observable", c.observable);
    c.topology = j.value("topology", c.topology);
    c.restricted = j.value("restricted", c.restricted);
    c.paired_seeds = j.value("paired_seeds", c.paired_seeds);
    if (j.contains("train")) c.train = train_config_from_json(j.at("train"));
    c.master_seed = j.value("master_seed", c.master_seed);
    if (j.contains("dataset")) {
      const auto& jd = j.at("dataset");
      c.dataset_size = jd.value("size", c.dataset_size);
      c.noise_std = jd.value("noise_std", c.noise_std);
    }
    if (j.contains("theory")) {
      const auto& jt = j.at("theory");
      c.theory_dims = jt.value("dims", c.theory_dims);
      c.theory_samples = jt.value("samples", c.theory_samples);
      c.theory_observables = jt.value("observables", c.theory_observables);
      c.sweep_root = jt.value("sweep_root", c.sweep_root);
      c.loose_bound = jt.value("loose_bound", c.loose_bound);
    }
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    c.workers = j.value("workers", c.workers);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return experiment_config_from_json(j);
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"experiment", to_string(c.experiment)},
          {"qubits", c.qubits},
          {"depths", c.depths},
          {"trials", c.trials},
          {"observable", c.observable},
          {"topology", c.topology},
          {"restricted", c.restricted},
          {"paired_seeds", c.paired_seeds},
          {"train", to_json(c.train)},
          {"master_seed", c.master_seed},
          {"dataset", {{"size", c.dataset_size}, {"noise_std", c.noise_std}}},
          {"theory",
           {{"dims", c.theory_dims},
            {"samples", c.theory_samples},
            {"observables", c.theory_observables},
            {"sweep_root", c.sweep_root},
            {"loose_bound", c.loose_bound}}}};
}

std::uint64_t config_hash(const ExperimentConfig& config) { return fnv1a64(to_json(config).dump()); }

std::string hash_hex(std::uint64_t hash) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, ExperimentKind kind, int num_qubits, int depth, int arm, int trial) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(num_qubits),
                                   static_cast<std::uint64_t>(depth), static_cast<std::uint64_t>(arm),
                                   static_cast<std::uint64_t>(trial)});
}

SummaryStats summarize_traces(const std::vector<std::vector<double>>& traces) {
  if (traces.empty()) throw ConfigError("cannot summarize zero traces");
  const std::size_t len = traces.front().size();
  if (len == 0) throw ConfigError("cannot summarize empty traces");
  for (const auto& t : traces) {
    if (t.size() != len) throw ConfigError("traces have different epoch counts");
  }
  SummaryStats s;
  s.trials = traces.size();
  s.epochs.resize(len);
  const double n = static_cast<double>(traces.size());
  for (std::size_t e = 0; e < len; ++e) {
    EpochStats& st = s.epochs[e];
    st.min = st.max = traces.front()[e];
    double sum = 0.0;
    for (const auto& t : traces) {
      sum += t[e];
      st.min = std::min(st.min, t[e]);
      st.max = std::max(st.max, t[e]);
    }
    st.mean = std::clamp(sum / n, st.min, st.max);
    st.spread = st.max - st.min;
    if (traces.size() > 1) {
      double sq = 0.0;
      for (const auto& t : traces) sq += (t[e] - st.mean) * (t[e] - st.mean);
      st.std_error = std::sqrt(sq / (n - 1.0) / n);
    }
  }
  return s;
}

nlohmann::json to_json(const SummaryStats& s) {
  nlohmann::json epochs = nlohmann::json::array();
  for (std::size_t e = 0; e < s.epochs.size(); ++e) {
    const auto& st = s.epochs[e];
    epochs.push_back({{"epoch", e},
                      {"mean", st.mean},
                      {"min", st.min},
                      {"max", st.max},
                      {"spread", st.spread},
                      {"std_error", st.std_error}});
  }
  return {{"trials", s.trials},
          {"epochs", std::move(epochs)},
          {"final_mean", s.final_mean()},
          {"final_spread", s.final_spread()}};
}

void write_raw_csv(const fs::path& path, const std::vector<TrialRecord>& records, std::string_view hash) {
  std::string out = "# config_hash: " + std::string(hash) + "\ntrial,epoch,loss\n";
  for (const auto& r : records) {
    for (std::size_t e = 0; e < r.loss_per_epoch.size(); ++e) {
      out += std::to_string(r.trial_id) + ',' + std::to_string(e) + ',' + fmt_double(r.loss_per_epoch[e]) + '\n';
    }
  }
  write_text(path, out);
}

RawTable read_raw_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuntimeError("cannot open " + path.string());
  RawTable table;
  std::string line;
  bool header_seen = false;
  std::map<long, std::vector<double>> by_trial;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kKey = "# config_hash: ";
      if (line.starts_with(kKey)) table.config_hash = line.substr(kKey.size());
      continue;
    }
    if (!header_seen) {
      if (line != "trial,epoch,loss") {
        throw RuntimeError(path.string() + ": expected header 'trial,epoch,loss', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    long trial = 0;
    long epoch = 0;
    double loss = 0.0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(p, end, trial);
    bool ok = r1.ec == std::errc() && r1.ptr < end && *r1.ptr == ',';
    if (ok) {
      auto r2 = std::from_chars(r1.ptr + 1, end, epoch);
      ok = r2.ec == std::errc() && r2.ptr < end && *r2.ptr == ',';
      if (ok) {
        auto r3 = std::from_chars(r2.ptr + 1, end, loss);
        ok = r3.ec == std::errc() && r3.ptr == end;
      }
    }
    if (!ok) throw RuntimeError(path.string() + ":" + std::to_string(line_no) + ": malformed row '" + line + "'");
    auto& trace = by_trial[trial];
    if (epoch != static_cast<long>(trace.size())) {
      throw RuntimeError(path.string() + ":" + std::to_string(line_no) + ": epochs of trial " + std::to_string(trial) +
                         " are not consecutive");
    }
    trace.push_back(loss);
  }
  if (!header_seen) throw RuntimeError(path.string() + " is empty or lacks a header");
  if (by_trial.empty()) throw RuntimeError(path.string() + " has no data rows");
  const std::size_t len = by_trial.begin()->second.size();
  for (auto& [trial, trace] : by_trial) {
    if (trace.size() != len) {
      throw RuntimeError(path.string() + ": trial " + std::to_string(trial) + " has " + std::to_string(trace.size()) +
                         " epochs, expected " + std::to_string(len));
    }
    table.traces.push_back(std::move(trace));
  }
  return table;
}

const RunResult* ExperimentResult::find(int num_qubits, int depth, std::string_view arm) const {
  for (const auto& r : runs) {
    if (r.num_qubits == num_qubits && r.depth == depth && r.arm == arm) return &r;
  }
  return nullptr;
}

ExperimentResult run_random_sweep(const ExperimentConfig& config, const ProgressFn& progress) {
  const Prepared p = prepare(config, ExperimentKind::RandomSweep);
  const std::string arm = config.restricted ? "restricted" : "free";
  ExperimentResult result;
  result.root = p.root;
  for (int n : config.qubits) {
    const EncodedDataset data = encode_dataset(p.dataset, n, p.obs);
    for (int l : config.depths) {
      notify(progress, "random_sweep N=" + std::to_string(n) + " L=" + std::to_string(l) + " (" +
                           std::to_string(config.trials) + " trials)");
      auto records = train_trials(p, ExperimentKind::RandomSweep, n, l, config.restricted, AnsatzFamily::Random,
                                  arm_id(arm), data);
      result.runs.push_back(finish_run(p, n, l, arm, std::move(records)));
    }
  }
  write_json(p.root / "index.json", index_json(p, result.runs));
  return result;
}

ExperimentResult run_fixed_compare(const ExperimentConfig& config, const ProgressFn& progress) {
  const Prepared p = prepare(config, ExperimentKind::FixedCompare);
  ExperimentResult result;
  result.root = p.root;
  nlohmann::json gaps = nlohmann::json::array();
  for (int n : config.qubits) {
    const EncodedDataset data = encode_dataset(p.dataset, n, p.obs);
    for (int l : config.depths) {
      notify(progress, "fixed_compare N=" + std::to_string(n) + " L=" + std::to_string(l) + " (" +
                           std::to_string(config.trials) + " trials per arm)");
      std::array<const RunResult*, 2> arms{};
      for (const std::string arm : {"free", "restricted"}) {
        const int seed_arm = config.paired_seeds ? 0 : arm_id(arm);
        auto records = train_trials(p, ExperimentKind::FixedCompare, n, l, arm == "restricted", AnsatzFamily::Fixed,
                                    seed_arm, data);
        result.runs.push_back(finish_run(p, n, l, arm, std::move(records)));
      }
      arms[0] = &result.runs[result.runs.size() - 2];
      arms[1] = &result.runs.back();
      FreeRestrictedGap gap;
      gap.num_qubits = n;
      gap.depth = l;
      gap.mean_free = arms[0]->summary.final_mean();
      gap.mean_restricted = arms[1]->summary.final_mean();
      gap.gap = std::abs(gap.mean_free - gap.mean_restricted);
      result.gaps.push_back(gap);
      gaps.push_back({{"num_qubits", n},
                      {"depth", l},
                      {"mean_free", gap.mean_free},
                      {"mean_restricted", gap.mean_restricted},
                      {"gap", gap.gap}});
    }
  }
  write_json(p.root / "index.json", index_json(p, result.runs));
  write_json(p.root / "comparison.json", {{"config_hash", p.hash}, {"observable", config.observable}, {"gaps", gaps}});
  return result;
}

std::vector<BoundViolation> check_deviation_bound(const std::vector<std::vector<double>>& traces, const Observable& obs,
                                                  int num_qubits, BoundNumerator numerator, std::string_view run) {
  const SummaryStats s = summarize_traces(traces);
  const DeviationBound bound = make_deviation_bound(obs, std::size_t{1} << num_qubits, numerator);
  std::vector<BoundViolation> out;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    for (std::size_t e = 0; e < traces[t].size(); ++e) {
      const double c = traces[t][e];
      const double dev = std::abs(c - s.epochs[e].mean);
      const double b = bound.bound(c);
      if (dev > b) out.push_back({std::string(run), static_cast<int>(t), static_cast<int>(e), dev, b});
    }
  }
  return out;
}

bool TheoryReport::ok() const {
  return moment_failures == 0 && violations.empty() &&
         std::all_of(theorem1.begin(), theorem1.end(), [](const Theorem1Check& c) { return c.holds; });
}

nlohmann::json TheoryReport::to_json() const {
  nlohmann::json jv = nlohmann::json::array();
  for (const auto& v : violations) {
    jv.push_back({{"run", v.run}, {"trial", v.trial}, {"epoch", v.epoch}, {"deviation", v.deviation}, {"bound", v.bound}});
  }
  nlohmann::json jt = nlohmann::json::array();
  for (const auto& c : theorem1) {
    jt.push_back({{"run", c.run},
                  {"epoch0_mean", c.epoch0_mean},
                  {"std_error", c.std_error},
                  {"haar_variance", c.haar_variance},
                  {"holds", c.holds}});
  }
  return {{"moments", moments},
          {"moment_failures", moment_failures},
          {"bound_points", bound_points},
          {"bound_violations", std::move(jv)},
          {"theorem1", std::move(jt)},
          {"ok", ok()}};
}

TheoryReport run_theory_check(const ExperimentConfig& config, const ProgressFn& progress) {
  config.validate();
  if (config.experiment != ExperimentKind::TheoryCheck) throw ConfigError("config experiment must be 'theory_check'");
  TheoryReport report;
  constexpr int kStreams = 8;
  for (std::size_t oi = 0; oi < config.theory_observables.size(); ++oi) {
    const Observable obs = Observable::parse(config.theory_observables[oi]);
    for (std::size_t d : config.theory_dims) {
      notify(progress, "haar moments " + obs.name() + " d=" + std::to_string(d));
      const HaarMoments analytic = haar_moments(obs, d);
      const MonteCarloMoments mc = monte_carlo_moments(
          obs, d, config.theory_samples, derive_seed(config.master_seed, {0x7e0ULL, d, oi}), kStreams, config.workers);
      nlohmann::json entry = moment_report(obs, analytic, mc);
      const bool mean_ok = std::abs(mc.mean - analytic.mean) <= 3 * mc.se_mean;
      const bool var_ok = std::abs(mc.variance - analytic.variance) <= 3 * mc.se_var;
      entry["within_3se"] = {{"mean", mean_ok}, {"var", var_ok}};
      if (!mean_ok || !var_ok) ++report.moment_failures;
      report.moments.push_back(std::move(entry));
    }
  }

  if (!config.sweep_root.empty()) {
    const fs::path root(config.sweep_root);
    std::vector<fs::path> raws;
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().filename() == "raw.csv") raws.push_back(entry.path());
      }
    }
    if (raws.empty()) throw RuntimeError("missing sweep results: no raw.csv under " + root.string());
    std::sort(raws.begin(), raws.end());
    const BoundNumerator numerator = config.loose_bound ? BoundNumerator::DPlus1 : BoundNumerator::DMinus1;
    for (const auto& raw : raws) {
      const fs::path cfg_path = raw.parent_path() / "config.json";
      if (!fs::exists(cfg_path)) throw RuntimeError("missing sweep results: no config.json next to " + raw.string());
      const nlohmann::json meta = read_json(cfg_path);
      int n = 0;
      std::string obs_name;
      try {
        n = meta.at("run").at("num_qubits").get<int>();
        obs_name = meta.at("run").at("observable").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw RuntimeError("malformed " + cfg_path.string() + ": " + e.what());
      }
      const Observable obs = Observable::parse(obs_name);
      const std::string run = fs::relative(raw.parent_path(), root).generic_string();
      notify(progress, "bound check " + run);
      const RawTable table = read_raw_csv(raw);
      auto v = check_deviation_bound(table.traces, obs, n, numerator, run);
      report.violations.insert(report.violations.end(), v.begin(), v.end());
      for (const auto& t : table.traces) report.bound_points += t.size();

      const SummaryStats s = summarize_traces(table.traces);
      Theorem1Check check;
      check.run = run;
      check.epoch0_mean = s.epochs.front().mean;
      check.std_error = s.epochs.front().std_error;
      check.haar_variance = haar_variance(obs, std::size_t{1} << n);
      check.holds = check.epoch0_mean >= check.haar_variance - 3 * check.std_error;
      report.theorem1.push_back(check);
    }
  }

  const fs::path out_dir = config.output_dir / std::string(to_string(ExperimentKind::TheoryCheck));
  make_dirs(out_dir);
  nlohmann::json j = report.to_json();
  j["config_hash"] = hash_hex(config_hash(config));
  write_json(out_dir / "report.json", j);
  return report;
}

std::vector<fs::path> summarize(const std::vector<fs::path>& raw_csvs, const std::optional<fs::path>& combined_csv) {
  if (raw_csvs.empty()) throw RuntimeError("summarize needs at least one raw CSV");
  std::vector<fs::path> written;
  std::string combined = "source,epoch,mean,min,max,spread,std_error\n";
  for (const auto& raw : raw_csvs) {
    const RawTable table = read_raw_csv(raw);
    SummaryStats s;
    try {
      s = summarize_traces(table.traces);
    } catch (const ConfigError& e) {
      throw RuntimeError(raw.string() + ": " + e.what());
    }
    const fs::path dir = raw.parent_path().empty() ? fs::path(".") : raw.parent_path();
    nlohmann::json run = nullptr;
    if (fs::exists(dir / "config.json")) {
      const auto meta = read_json(dir / "config.json");
      if (meta.contains("run")) run = meta.at("run");
    }
    write_summary_files(dir, s, table.config_hash, run);
    written.push_back(dir / "summary.json");
    for (std::size_t e = 0; e < s.epochs.size(); ++e) {
      const auto& st = s.epochs[e];
      combined += raw.generic_string() + ',' + std::to_string(e) + ',' + fmt_double(st.mean) + ',' + fmt_double(st.min) +
                  ',' + fmt_double(st.max) + ',' + fmt_double(st.spread) + ',' + fmt_double(st.std_error) + '\n';
    }
  }
  if (combined_csv) write_text(*combined_csv, combined);
  return written;
}

}  // namespace qnnlab
