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

#include "qlock/experiment.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "qlock/bounds.hpp"
#include "qlock/divergences.hpp"
#include "qlock/embedding.hpp"
#include "qlock/locking.hpp"
#include "qlock/parallel.hpp"

#ifndef QLOCK_VERSION
#define QLOCK_VERSION "0.0.0"
#endif

namespace qlock {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 8> kKinds{{
    {ExperimentKind::uncertainty, "uncertainty"},
    {ExperimentKind::worst_case, "worst_case"},
    {ExperimentKind::locking, "locking"},
    {ExperimentKind::adversary, "adversary"},
    {ExperimentKind::data_hiding, "data_hiding"},
    {ExperimentKind::bounds, "bounds"},
    {ExperimentKind::embedding, "embedding"},
    {ExperimentKind::moments, "moments"},
}};

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::invalid_config, "config: " + what);
}

std::size_t positive_integer(const json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    bad_config(std::string(key) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

double positive_real(const json& j, const char* key) {
  if (!j.is_number()) bad_config(std::string(key) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v) || v <= 0.0) {
    bad_config(std::string(key) + " must be positive and finite");
  }
  return v;
}

std::uint64_t unsigned_integer(const json& j, const char* key) {
  if (!j.is_number_unsigned()) {
    bad_config(std::string(key) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      bad_config("unknown key '" + item.key() + "' in " + where);
    }
  }
}

std::string_view subset_name(StateSubset::Kind k) {
  switch (k) {
    case StateSubset::Kind::full_sphere: return "full_sphere";
    case StateSubset::Kind::separable: return "separable";
    case StateSubset::Kind::explicit_list: return "explicit_list";
  }
  return "full_sphere";
}

std::string_view objective_name(Objective o) {
  return o == Objective::hellinger ? "hellinger" : "total_variation";
}

bool needs_ensemble(ExperimentKind k) {
  return k != ExperimentKind::moments && k != ExperimentKind::uncertainty;
}

void require(const ExperimentConfig& cfg, bool present, const char* key) {
  if (!present) {
    bad_config(std::string("experiment '") + std::string(to_string(cfg.experiment)) +
               "' requires '" + key + "'");
  }
}

void check_required_fields(const ExperimentConfig& cfg) {
  using K = ExperimentKind;
  const K k = cfg.experiment;
  if (k != K::moments && k != K::data_hiding) require(cfg, cfg.t.has_value(), "t");
  if (k == K::uncertainty || k == K::locking || k == K::data_hiding ||
      k == K::bounds || k == K::embedding || k == K::moments) {
    require(cfg, cfg.trials.has_value(), "trials");
  }
  if (k == K::locking || k == K::bounds || k == K::embedding) {
    require(cfg, cfg.eps.has_value(), "eps");
  }
  if (k == K::data_hiding && cfg.t && *cfg.t != 1) {
    bad_config("data_hiding uses a single unitary, t must be 1");
  }
  if (cfg.subset == StateSubset::Kind::separable && k != K::worst_case) {
    bad_config("subset 'separable' is only used by worst_case");
  }
  if (cfg.eps && *cfg.eps > 1.0) bad_config("eps must lie in (0, 1]");
  if (k == K::uncertainty && *cfg.trials < 2) bad_config("trials must be >= 2");
}

int message_bits(const ExperimentConfig& cfg) {
  if (!std::has_single_bit(cfg.d_a)) {
    bad_config("locking experiments need d_a = 2^n");
  }
  return std::countr_zero(cfg.d_a);
}

SearchOptions search_options(const ExperimentConfig& cfg, Rng& rng) {
  SearchOptions so;
  so.objective = cfg.search.objective;
  so.restarts = cfg.search.restarts;
  so.max_iterations = cfg.search.max_iterations;
  so.gradient_tolerance = cfg.search.gradient_tolerance;
  so.seed = rng.split();
  return so;
}

using Results = std::map<std::string, ScalarResult>;

ScalarResult exact(double v) { return {v, std::nullopt, Provenance::exact}; }
ScalarResult closed(double v) { return {v, std::nullopt, Provenance::closed_form}; }
ScalarResult searched(double v) { return {v, std::nullopt, Provenance::search_lower_bound}; }
ScalarResult sampled(double v, std::optional<double> se = std::nullopt) {
  return {v, se, Provenance::monte_carlo};
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0};
}

void run_uncertainty(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const auto r = estimate_r(cfg.dims(), *cfg.t, *cfg.trials, rng);
  const double db = static_cast<double>(cfg.d_b);
  out["mean_y"] = sampled(r.mean_y, r.se_y);
  out["mean_fidelity"] = sampled(r.mean_fidelity, r.se_fidelity);
  out["epsilon_fidelity"] = sampled(1.0 - r.mean_fidelity, r.se_fidelity);
  out["r_upper_bound"] = closed(1.0 / std::sqrt(db));
  out["fidelity_lower_bound"] = closed(std::sqrt(1.0 - 1.0 / db));
}

void run_worst_case(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const auto ens = UnitaryEnsemble::haar(cfg.dims(), *cfg.t, rng);
  const auto so = search_options(cfg, rng);
  const StateSubset subset = cfg.subset == StateSubset::Kind::separable
                                 ? StateSubset::separable()
                                 : StateSubset::full_sphere();
  const auto rep = worst_case_search(ens, subset, so);
  out["objective_value"] = searched(rep.objective_value);
  out["epsilon_fidelity"] = searched(rep.epsilon_fidelity);
  out["epsilon_metric"] = searched(rep.epsilon_metric);
  out["epsilon_entropic"] = searched(rep.epsilon_entropic);
  out["search_iterations"] = exact(rep.diagnostics.iterations);
  out["search_converged_restarts"] = exact(rep.diagnostics.converged_restarts);
}

void run_locking(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const int n = message_bits(cfg);
  const LockingScheme scheme(UnitaryEnsemble::haar(cfg.dims(), *cfg.t, rng), n);
  const auto prior = ProbDist::uniform(cfg.d_a);
  std::vector<RankOneEffect> effects;
  effects.reserve(*cfg.trials);
  for (std::size_t i = 0; i < *cfg.trials; ++i) {
    effects.emplace_back(1.0, sample_sphere(scheme.dims().d(), rng));
  }
  const auto ver = verify_locking(scheme, prior, effects);
  const auto rep =
      worst_case_search(scheme.ensemble(), StateSubset::full_sphere(), search_options(cfg, rng));
  const double eps = *cfg.eps;
  const auto fhs = fhs_parameter_check(eps, static_cast<double>(cfg.d_b),
                                       static_cast<double>(*cfg.t),
                                       static_cast<double>(scheme.dims().d()));
  const auto acc = locking_accounting(eps, n);
  out["identification_deviation"] = exact(identification_check(scheme));
  out["max_posterior_hellinger"] = sampled(ver.max_hellinger);
  out["max_posterior_total_variation"] = sampled(ver.max_total_variation);
  out["searched_sup_y"] = searched(rep.objective_value);
  out["posterior_hellinger_bound"] = searched(std::sqrt(2.0) * rep.objective_value);
  out["key_length_lower_bound"] = closed(key_length_lower_bound(eps, n));
  out["fhs_exponent"] = closed(fhs.exponent);
  out["fhs_probability_bound"] = closed(fhs.probability_bound);
  out["qubits_without_constant"] = closed(acc.qubits_without_constant);
  out["key_bits_without_constant"] = closed(acc.key_bits_without_constant);
}

void run_adversary(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const int n = message_bits(cfg);
  if (cfg.support_size > cfg.d_a) bad_config("support_size exceeds d_a");
  const LockingScheme scheme(UnitaryEnsemble::haar(cfg.dims(), *cfg.t, rng), n);
  std::vector<std::size_t> support(cfg.support_size);
  for (std::size_t i = 0; i < support.size(); ++i) support[i] = i;
  const auto povm = build_adversarial_povm(scheme, support);
  const auto check = validate_povm(povm.to_povm());
  const auto outcome = adversary_identification(scheme, povm);
  out["completeness_residual"] = exact(check.completeness_residual);
  out["min_eigenvalue"] = exact(check.min_eigenvalue);
  out["povm_valid"] = exact(check.valid ? 1.0 : 0.0);
  out["min_identification"] = exact(outcome.min_identification);
  out["fail_probability"] = exact(outcome.fail_probability);
}

void run_data_hiding(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const int n = message_bits(cfg);
  const LockingScheme scheme(UnitaryEnsemble::haar(cfg.dims(), 1, rng), n);
  DataHidingOptions opts;
  opts.n_effects = *cfg.trials;
  opts.search = search_options(cfg, rng);
  const auto res = data_hiding_eval(scheme, ProbDist::uniform(cfg.d_a), opts, rng);
  out["max_hellinger_sampled"] = sampled(res.max_hellinger_sampled);
  out["max_hellinger_searched"] = searched(res.max_hellinger_searched);
  out["max_hellinger"] = searched(res.max_hellinger);
  out["separable_sup_y"] = searched(res.separable_sup_y);
}

void run_bounds(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const auto tv = tv_lower_bound_expression(cfg.d_a, cfg.d_b);
  const auto ens = UnitaryEnsemble::haar(cfg.dims(), *cfg.t, rng);
  const auto kh = khintchine_t_bound(ens, *cfg.trials, rng);
  const auto req = required_parameters(*cfg.eps);
  const auto est = expected_tv_estimators(cfg.dims(), *cfg.trials, rng);
  out["tv_lower_bound"] = closed(tv.value);
  out["tv_lower_bound_simplified"] = closed(tv.simplified);
  out["hs_centered_projector_norm_squared"] =
      closed(hs_centered_projector_norm(cfg.d_a, cfg.d_b));
  out["khintchine_analytic_bound"] = exact(kh.analytic_bound);
  out["khintchine_mc"] = sampled(kh.mc_estimate, kh.mc_se);
  if (kh.exact) out["khintchine_exact"] = exact(*kh.exact);
  out["d_b_min_order"] = closed(req.d_b_min_order);
  out["t_min_order"] = closed(req.t_min_order);
  out["d_b_min_times_c9_squared"] = closed(req.d_b_min_times_c9_squared);
  out["t_min"] = closed(req.t_min);
  out["twice_expected_tv"] = sampled(est.twice_expected_tv, est.twice_expected_tv_se);
  out["block_deviation"] = sampled(est.block_deviation, est.block_deviation_se);
}

void run_embedding(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const EmbeddingMap map(UnitaryEnsemble::haar(cfg.dims(), *cfg.t, rng));
  const auto dims = cfg.dims();
  double identity_residual = 0.0;
  double isometry_residual = 0.0;
  for (std::size_t i = 0; i < *cfg.trials; ++i) {
    const PureState psi(sample_sphere(dims.d(), rng), dims);
    identity_residual = std::max(identity_residual, norm_identity_check(map, psi));
    isometry_residual =
        std::max(isometry_residual, std::abs(apply_t(map, psi).matrix.norm() - 1.0));
  }
  DistortionOptions opts;
  opts.n_random_states = *cfg.trials;
  opts.search = search_options(cfg, rng);
  const auto cert = certify_distortion(map, opts, rng);
  const auto dv = dvoretzky_dimension(map.cols(), map.rows(), *cfg.eps);
  out["norm_identity_residual"] = exact(identity_residual);
  out["isometry_residual"] = exact(isometry_residual);
  out["min_ratio"] = searched(cert.min_ratio);
  out["max_ratio"] = searched(cert.max_ratio);
  out["distortion"] = searched(cert.distortion);
  out["r_hat"] = sampled(cert.r_hat);
  out["analytic_scale"] = sampled(cert.analytic_scale);
  out["median_scale"] = sampled(cert.median_scale);
  out["dvoretzky_dimension"] = closed(dv.dimension);
  out["dvoretzky_prior_art"] = closed(dv.prior_art);
}

void run_moments(const ExperimentConfig& cfg, Rng& rng, Results& out) {
  const std::size_t d = cfg.d_a * cfg.d_b;
  const std::size_t draws = *cfg.trials;
  const auto m = simplex_moments(d);
  const Seed base = rng.split();
  std::vector<double> x0(draws), x1(draws, 0.0);
  parallel_for(draws, [&](std::size_t i) {
    Rng sub = Rng::substream(base, i);
    const ProbDist p = sample_simplex(d, sub);
    x0[i] = p[0];
    if (d > 1) x1[i] = p[1];
  });
  const MeanSe mean = mean_se(x0);
  std::vector<double> sq(draws), cross(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    sq[i] = (x0[i] - m.mean) * (x0[i] - m.mean);
    cross[i] = (x0[i] - m.mean) * (x1[i] - m.mean);
  }
  const MeanSe var = mean_se(sq);
  out["mean"] = closed(m.mean);
  out["variance"] = closed(m.variance);
  out["mean_mc"] = sampled(mean.mean, mean.se);
  out["variance_mc"] = sampled(var.mean, var.se);
  if (d > 1) {
    const MeanSe cov = mean_se(cross);
    out["covariance"] = closed(m.covariance);
    out["covariance_mc"] = sampled(cov.mean, cov.se);
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKinds) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : kKinds) {
    if (n == name) return k;
  }
  bad_config("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::exact: return "exact";
    case Provenance::monte_carlo: return "monte_carlo";
    case Provenance::search_lower_bound: return "search_lower_bound";
    case Provenance::closed_form: return "closed_form";
  }
  return "exact";
}

Provenance parse_provenance(std::string_view name) {
  for (auto p : {Provenance::exact, Provenance::monte_carlo,
                 Provenance::search_lower_bound, Provenance::closed_form}) {
    if (to_string(p) == name) return p;
  }
  throw Error(ErrorCode::invalid_argument,
              "unknown provenance '" + std::string(name) + "'");
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) bad_config("top level must be an object");
  reject_unknown_keys(j,
                      {"experiment", "dims", "t", "eps", "trials", "seed", "subset",
                       "output_path", "search", "support_size", "memory_cap_bytes"},
                      "config");
  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j["experiment"].is_string()) {
    bad_config("'experiment' must be a string");
  }
  cfg.experiment = parse_experiment_kind(j["experiment"].get<std::string>());
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 2) {
    bad_config("'dims' must be an array [d_a, d_b]");
  }
  cfg.d_a = positive_integer(j["dims"][0], "dims[0]");
  cfg.d_b = positive_integer(j["dims"][1], "dims[1]");
  if (j.contains("t")) cfg.t = positive_integer(j["t"], "t");
  if (j.contains("eps")) cfg.eps = positive_real(j["eps"], "eps");
  if (j.contains("trials")) cfg.trials = positive_integer(j["trials"], "trials");
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (s.is_object()) {
      reject_unknown_keys(s, {"value", "stream_id"}, "seed");
      if (!s.contains("value")) bad_config("seed.value is required");
      cfg.seed.value = unsigned_integer(s["value"], "seed.value");
      if (s.contains("stream_id")) {
        cfg.seed.stream_id = unsigned_integer(s["stream_id"], "seed.stream_id");
      }
    } else {
      cfg.seed.value = unsigned_integer(s, "seed");
    }
  }
  if (j.contains("subset")) {
    const json& s = j["subset"];
    if (s == "full_sphere") {
      cfg.subset = StateSubset::Kind::full_sphere;
    } else if (s == "separable") {
      cfg.subset = StateSubset::Kind::separable;
    } else {
      bad_config("'subset' must be \"full_sphere\" or \"separable\"");
    }
  }
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) bad_config("'output_path' must be a string");
    cfg.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("search")) {
    const json& s = j["search"];
    if (!s.is_object()) bad_config("'search' must be an object");
    reject_unknown_keys(s, {"restarts", "max_iterations", "gradient_tolerance", "objective"},
                        "search");
    if (s.contains("restarts")) {
      cfg.search.restarts = static_cast<int>(positive_integer(s["restarts"], "search.restarts"));
    }
    if (s.contains("max_iterations")) {
      cfg.search.max_iterations =
          static_cast<int>(positive_integer(s["max_iterations"], "search.max_iterations"));
    }
    if (s.contains("gradient_tolerance")) {
      cfg.search.gradient_tolerance =
          positive_real(s["gradient_tolerance"], "search.gradient_tolerance");
    }
    if (s.contains("objective")) {
      if (s["objective"] == "hellinger") {
        cfg.search.objective = Objective::hellinger;
      } else if (s["objective"] == "total_variation") {
        cfg.search.objective = Objective::total_variation;
      } else {
        bad_config("search.objective must be \"hellinger\" or \"total_variation\"");
      }
    }
  }
  if (j.contains("support_size")) {
    cfg.support_size = positive_integer(j["support_size"], "support_size");
  }
  if (j.contains("memory_cap_bytes")) {
    cfg.memory_cap_bytes = positive_real(j["memory_cap_bytes"], "memory_cap_bytes");
  }
  check_required_fields(cfg);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = std::string(to_string(cfg.experiment));
  j["dims"] = {cfg.d_a, cfg.d_b};
  if (cfg.t) j["t"] = *cfg.t;
  if (cfg.eps) j["eps"] = *cfg.eps;
  if (cfg.trials) j["trials"] = *cfg.trials;
  j["seed"] = {{"value", cfg.seed.value}, {"stream_id", cfg.seed.stream_id}};
  j["subset"] = std::string(subset_name(cfg.subset));
  if (cfg.output_path) j["output_path"] = *cfg.output_path;
  j["search"] = {{"restarts", cfg.search.restarts},
                 {"max_iterations", cfg.search.max_iterations},
                 {"gradient_tolerance", cfg.search.gradient_tolerance},
                 {"objective", std::string(objective_name(cfg.search.objective))}};
  if (cfg.experiment == ExperimentKind::adversary) j["support_size"] = cfg.support_size;
  const double cap = cfg.memory_cap_bytes;
  if (cap == std::floor(cap) && cap < 0x1p53) {
    j["memory_cap_bytes"] = static_cast<std::uint64_t>(cap);
  } else {
    j["memory_cap_bytes"] = cap;
  }
  return j;
}

double estimate_memory_bytes(const ExperimentConfig& cfg) {
  const double d = static_cast<double>(cfg.d_a) * static_cast<double>(cfg.d_b);
  return d * d * static_cast<double>(cfg.t.value_or(1)) * 16.0;
}

Report run(const ExperimentConfig& cfg) {
  check_required_fields(cfg);
  if (needs_ensemble(cfg.experiment) && estimate_memory_bytes(cfg) > cfg.memory_cap_bytes) {
    throw Error(ErrorCode::infeasible,
                "estimated ensemble memory " + format_double(estimate_memory_bytes(cfg)) +
                    " bytes exceeds the cap of " + format_double(cfg.memory_cap_bytes));
  }
  const auto start = std::chrono::steady_clock::now();
  Rng rng(cfg.seed);
  Results results;
  switch (cfg.experiment) {
    case ExperimentKind::uncertainty: run_uncertainty(cfg, rng, results); break;
    case ExperimentKind::worst_case: run_worst_case(cfg, rng, results); break;
    case ExperimentKind::locking: run_locking(cfg, rng, results); break;
    case ExperimentKind::adversary: run_adversary(cfg, rng, results); break;
    case ExperimentKind::data_hiding: run_data_hiding(cfg, rng, results); break;
    case ExperimentKind::bounds: run_bounds(cfg, rng, results); break;
    case ExperimentKind::embedding: run_embedding(cfg, rng, results); break;
    case ExperimentKind::moments: run_moments(cfg, rng, results); break;
  }
  for (const auto& [name, r] : results) {
    if (!std::isfinite(r.value) || (r.se && !std::isfinite(*r.se))) {
      throw Error(ErrorCode::domain_error, "non-finite result '" + name + "'");
    }
  }
  Report rep;
  rep.config = config_to_json(cfg);
  rep.results = std::move(results);
  rep.versions = {
      {"qlock", QLOCK_VERSION},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
      {"compiler", __VERSION__},
  };
  rep.threads = num_threads();
  rep.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

json report_to_json(const Report& report) {
  json results = json::object();
  for (const auto& [name, r] : report.results) {
    json e = {{"value", r.value}, {"provenance", std::string(to_string(r.provenance))}};
    e["se"] = r.se ? json(*r.se) : json(nullptr);
    results[name] = std::move(e);
  }
  json j;
  j["schema_version"] = report.schema_version;
  j["config"] = report.config;
  j["results"] = std::move(results);
  j["trial_table"] = report.trial_table ? json(*report.trial_table) : json(nullptr);
  j["versions"] = report.versions;
  j["wall_time_seconds"] = report.wall_time_seconds;
  j["threads"] = report.threads;
  return j;
}

Report report_from_json(const json& j) {
  try {
    Report r;
    r.schema_version = j.at("schema_version").get<std::string>();
    r.config = j.at("config");
    for (const auto& [name, e] : j.at("results").items()) {
      ScalarResult s;
      s.value = e.at("value").get<double>();
      if (!e.at("se").is_null()) s.se = e.at("se").get<double>();
      s.provenance = parse_provenance(e.at("provenance").get<std::string>());
      r.results[name] = s;
    }
    if (!j.at("trial_table").is_null()) r.trial_table = j.at("trial_table").get<std::string>();
    r.versions = j.at("versions").get<std::map<std::string, std::string>>();
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    r.threads = j.at("threads").get<int>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument, std::string("report: ") + e.what());
  }
}

json error_to_json(ErrorCode code, std::string_view message) {
  return {{"error", {{"code", std::string(to_string(code))}, {"message", std::string(message)}}}};
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string sweep(std::span<const SweepEntry> entries) {
  for (const auto& e : entries) {
    if (e.config.experiment != entries.front().config.experiment) {
      throw Error(ErrorCode::invalid_config, "sweep: heterogeneous experiment kinds");
    }
  }
  std::vector<Report> reports;
  reports.reserve(entries.size());
  for (const auto& e : entries) reports.push_back(run(e.config));
  return sweep_table(entries, reports);
}

std::string sweep_table(std::span<const SweepEntry> entries,
                        std::span<const Report> reports) {
  if (entries.size() != reports.size()) {
    throw Error(ErrorCode::dimension_mismatch, "sweep_table: entries and reports differ");
  }
  std::set<std::string> names;
  for (const auto& r : reports) {
    for (const auto& [name, _] : r.results) names.insert(name);
  }
  std::ostringstream os;
  os << "label,experiment,d_a,d_b,t,eps,trials,seed,stream_id";
  for (const auto& n : names) os << ',' << n << ',' << n << "_se";
  os << '\n';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& c = entries[i].config;
    os << csv_field(entries[i].label) << ',' << to_string(c.experiment) << ',' << c.d_a
       << ',' << c.d_b << ',' << (c.t ? std::to_string(*c.t) : "") << ','
       << (c.eps ? format_double(*c.eps) : "") << ','
       << (c.trials ? std::to_string(*c.trials) : "") << ',' << c.seed.value << ','
       << c.seed.stream_id;
    for (const auto& n : names) {
      const auto it = reports[i].results.find(n);
      os << ',';
      if (it != reports[i].results.end()) {
        os << format_double(it->second.value) << ',';
        if (it->second.se) os << format_double(*it->second.se);
      } else {
        os << ',';
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qlock
