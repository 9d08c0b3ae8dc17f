// Copyright 2026 The qlock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlock/error.hpp"
#include "qlock/experiment.hpp"
#include "qlock/parallel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw qlock::Error(qlock::ErrorCode::io_error, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw qlock::Error(qlock::ErrorCode::invalid_config,
                       path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qlock::Error(qlock::ErrorCode::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw qlock::Error(qlock::ErrorCode::io_error, "write failed: " + path.string());
}

int exit_code(qlock::ErrorCode code) {
  switch (code) {
    case qlock::ErrorCode::invalid_config: return 2;
    case qlock::ErrorCode::infeasible: return 3;
    case qlock::ErrorCode::io_error: return 4;
    default: return 1;
  }
}

struct RunFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> experiment;
  std::optional<std::vector<std::size_t>> dims;
  std::optional<std::size_t> t;
  std::optional<double> eps;
  std::optional<std::size_t> trials;
  std::optional<std::string> subset;
  std::optional<std::size_t> support_size;
  std::optional<double> memory_cap_bytes;
};

int do_run(const RunFlags& f) {
  json j = f.config_path.empty() ? json::object() : read_json(f.config_path);
  if (!j.is_object()) {
    throw qlock::Error(qlock::ErrorCode::invalid_config, "config: top level must be an object");
  }
  if (f.experiment) j["experiment"] = *f.experiment;
  if (f.dims) j["dims"] = *f.dims;
  if (f.t) j["t"] = *f.t;
  if (f.eps) j["eps"] = *f.eps;
  if (f.trials) j["trials"] = *f.trials;
  if (f.subset) j["subset"] = *f.subset;
  if (f.support_size) j["support_size"] = *f.support_size;
  if (f.memory_cap_bytes) j["memory_cap_bytes"] = *f.memory_cap_bytes;
  if (f.seed) {
    if (j.contains("seed") && j["seed"].is_object()) {
      j["seed"]["value"] = *f.seed;
    } else {
      j["seed"] = *f.seed;
    }
  }
  if (f.out) j["output_path"] = *f.out;
  const auto cfg = qlock::parse_config(j);
  const auto report = qlock::run(cfg);
  const std::string text = qlock::report_to_json(report).dump(2) + "\n";
  if (cfg.output_path) {
    write_text(*cfg.output_path, text);
  } else {
    std::cout << text;
  }
  return 0;
}

int do_sweep(const std::string& dir, const std::optional<std::string>& out) {
  if (!fs::is_directory(dir)) {
    throw qlock::Error(qlock::ErrorCode::io_error, "not a directory: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<qlock::SweepEntry> entries;
  for (const auto& p : files) {
    entries.push_back({p.stem().string(), qlock::parse_config(read_json(p))});
  }
  const std::string csv = qlock::sweep(entries);
  if (out) {
    write_text(*out, csv);
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlock: uncertainty relations, locking and embeddings from random unitaries"};
  app.require_subcommand(1);
  std::optional<int> threads;
  app.add_option("--threads", threads, "Worker threads (default: QLOCK_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.set_version_flag("--version", QLOCK_VERSION);

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Run one experiment and write a JSON report");
  run->add_option("--config", rf.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  run->add_option("--seed", rf.seed, "Seed value (overrides the config)");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out", rf.out, "Report path (default: stdout)");
  run->add_option("--experiment", rf.experiment, "Experiment kind");
  run->add_option("--dims", rf.dims, "d_a d_b")->expected(2);
  run->add_option("--t", rf.t, "Number of unitaries");
  run->add_option("--eps", rf.eps, "Target epsilon");
  run->add_option("--trials", rf.trials, "Monte Carlo trials");
  run->add_option("--subset", rf.subset, "full_sphere or separable");
  run->add_option("--support_size", rf.support_size, "Adversary message support size");
  run->add_option("--memory_cap_bytes", rf.memory_cap_bytes, "Ensemble memory cap");

  std::string configs_dir;
  std::optional<std::string> sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run every config in a directory into a CSV table");
  sweep->add_option("--configs", configs_dir, "Directory of *.json configs")->required();
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout)");
  sweep->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << qlock::error_to_json(qlock::ErrorCode::invalid_argument, e.what()).dump()
              << "\n";
    return 2;
  }

  try {
    if (threads) qlock::set_num_threads(*threads);
    if (*run) return do_run(rf);
    return do_sweep(configs_dir, sweep_out);
  } catch (const qlock::Error& e) {
    std::cerr << qlock::error_to_json(e.code(), e.what()).dump() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << qlock::error_to_json(qlock::ErrorCode::invalid_argument, e.what()).dump()
              << "\n";
    return 1;
  }
}
