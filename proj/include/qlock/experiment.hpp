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

#ifndef QLOCK_EXPERIMENT_HPP
#define QLOCK_EXPERIMENT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlock/error.hpp"
#include "qlock/random.hpp"
#include "qlock/uncertainty.hpp"

namespace qlock {

enum class ExperimentKind {
  uncertainty,
  worst_case,
  locking,
  adversary,
  data_hiding,
  bounds,
  embedding,
  moments,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

inline constexpr double kDefaultMemoryCapBytes = 4.0 * 1024 * 1024 * 1024;
inline constexpr const char* kReportSchemaVersion = "1.0";

struct SearchSettings {
  int restarts = 8;
  int max_iterations = 500;
  double gradient_tolerance = 1e-8;
  Objective objective = Objective::hellinger;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::uncertainty;
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  std::optional<std::size_t> t;
  std::optional<double> eps;
  std::optional<std::size_t> trials;
  Seed seed{};
  StateSubset::Kind subset = StateSubset::Kind::full_sphere;
  std::optional<std::string> output_path;
  SearchSettings search;
  std::size_t support_size = 2;  // adversary only
  double memory_cap_bytes = kDefaultMemoryCapBytes;

  BipartiteDims dims() const { return BipartiteDims(d_a, d_b); }
};

/// Strict parse: unknown keys, wrong types, non-positive numbers and missing
/// experiment-specific fields raise ErrorCode::invalid_config.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Bytes needed for one materialized ensemble, d^2 t 16.
double estimate_memory_bytes(const ExperimentConfig& cfg);

enum class Provenance { exact, monte_carlo, search_lower_bound, closed_form };

std::string_view to_string(Provenance p);
Provenance parse_provenance(std::string_view name);

struct ScalarResult {
  double value = 0.0;
  std::optional<double> se;
  Provenance provenance = Provenance::exact;

  friend bool operator==(const ScalarResult&, const ScalarResult&) = default;
};

struct Report {
  std::string schema_version = kReportSchemaVersion;
  nlohmann::json config;
  std::map<std::string, ScalarResult> results;
  std::optional<std::string> trial_table;
  std::map<std::string, std::string> versions;
  double wall_time_seconds = 0.0;
  int threads = 1;
};

/// Runs the configured experiment. Throws qlock::Error on failure; results
/// never contain NaN or infinities.
Report run(const ExperimentConfig& cfg);

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// {"error": {"code": ..., "message": ...}}
nlohmann::json error_to_json(ErrorCode code, std::string_view message);

struct SweepEntry {
  std::string label;
  ExperimentConfig config;
};

/// Runs every config (all of one experiment kind) and returns a CSV table:
/// fixed configuration columns, then value/se columns of every scalar in
/// name order.
std::string sweep(std::span<const SweepEntry> entries);

/// CSV from reports that were already computed.
std::string sweep_table(std::span<const SweepEntry> entries,
                        std::span<const Report> reports);

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double x);

}  // namespace qlock

#endif  // QLOCK_EXPERIMENT_HPP
