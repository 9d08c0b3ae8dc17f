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

#include "qlock/locking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlock/parallel.hpp"

namespace qlock {

namespace {

constexpr double kDegenerateAlpha = 1e-14;
constexpr double kOverlapThreshold = 1e-10;

void require_prior(const LockingScheme& scheme, const ProbDist& prior) {
  if (prior.dim() != scheme.messages()) {
    throw Error(ErrorCode::dimension_mismatch,
                "prior has " + std::to_string(prior.dim()) +
                    " outcomes, scheme encodes " +
                    std::to_string(scheme.messages()) + " messages");
  }
}

/// (1/t) sum_k p^A_{U_k e}(x), unnormalized against tiny unitarity drift.
std::vector<double> key_averaged_marginal(const LockingScheme& scheme,
                                          const CVector& e) {
  const auto& dims = scheme.dims();
  std::vector<double> q(dims.d_a(), 0.0), tmp(dims.d_a());
  for (const auto& u : scheme.ensemble().unitaries()) {
    block_marginal(u * e, dims, tmp);
    for (std::size_t x = 0; x < q.size(); ++x) q[x] += tmp[x];
  }
  for (double& v : q) v /= static_cast<double>(scheme.t());
  return q;
}

/// Unnormalized posterior q(x) p(x) and its total alpha.
std::pair<std::vector<double>, double> joint_with_prior(
    const LockingScheme& scheme, const ProbDist& prior, const CVector& e) {
  auto q = key_averaged_marginal(scheme, e);
  double alpha = 0.0;
  for (std::size_t x = 0; x < q.size(); ++x) {
    q[x] *= prior[x];
    alpha += q[x];
  }
  return {std::move(q), alpha};
}

}  // namespace

LockingScheme::LockingScheme(UnitaryEnsemble ensemble, int n)
    : ensemble_(std::move(ensemble)), n_(n) {
  if (n < 0 || n > 30 || ensemble_.dims().d_a() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::invalid_argument,
                "LockingScheme: d_A must equal 2^n");
  }
}

CMatrix LockingScheme::support_basis(std::size_t x, std::size_t k) const {
  if (x >= messages() || k >= t()) {
    throw Error(ErrorCode::index_out_of_range,
                "message or key index out of range");
  }
  const auto db = static_cast<Eigen::Index>(dims().d_b());
  return ensemble_[k].middleRows(static_cast<Eigen::Index>(x) * db, db).adjoint();
}

CMatrix encode(const LockingScheme& scheme, std::size_t x, std::size_t k) {
  const CMatrix basis = scheme.support_basis(x, k);
  return (basis * basis.adjoint()) / static_cast<double>(scheme.dims().d_b());
}

double identification_check(const LockingScheme& scheme) {
  const std::size_t m = scheme.messages();
  const std::size_t t = scheme.t();
  std::vector<double> worst(t, 0.0);
  parallel_for(t, [&](std::size_t k) {
    std::vector<CMatrix> states;
    states.reserve(m);
    for (std::size_t x = 0; x < m; ++x) states.push_back(encode(scheme, x, k));
    double w = 0.0;
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x + 1; y < m; ++y) {
        const double dist = 0.5 * trace_norm(states[x] - states[y]);
        w = std::max(w, std::abs(dist - 1.0));
      }
    }
    worst[k] = w;
  });
  return *std::max_element(worst.begin(), worst.end());
}

ProbDist posterior(const LockingScheme& scheme, const ProbDist& prior,
                   const RankOneEffect& effect) {
  require_prior(scheme, prior);
  if (static_cast<std::size_t>(effect.direction().size()) != scheme.dims().d()) {
    throw Error(ErrorCode::dimension_mismatch,
                "posterior: effect direction has wrong dimension");
  }
  auto [joint, alpha] = joint_with_prior(scheme, prior, effect.direction());
  if (!(alpha > kDegenerateAlpha)) {
    throw Error(ErrorCode::degenerate_outcome,
                "posterior: outcome has zero probability");
  }
  for (double& v : joint) v /= alpha;
  return ProbDist(std::move(joint));
}

ProbDist posterior_coarse(const LockingScheme& scheme, const ProbDist& prior,
                          std::span<const RankOneEffect> parts) {
  require_prior(scheme, prior);
  if (parts.empty()) {
    throw Error(ErrorCode::invalid_argument, "posterior_coarse: no parts");
  }
  // P(J = j) is proportional to xi_j alpha_j.
  std::vector<double> mix(scheme.messages(), 0.0);
  double total = 0.0;
  for (const auto& part : parts) {
    auto [joint, alpha] = joint_with_prior(scheme, prior, part.direction());
    if (!(alpha > kDegenerateAlpha)) continue;
    const double w = part.weight() * alpha;
    for (std::size_t x = 0; x < mix.size(); ++x) mix[x] += w * (joint[x] / alpha);
    total += w;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::degenerate_outcome,
                "posterior_coarse: outcome has zero probability");
  }
  for (double& v : mix) v /= total;
  return ProbDist(std::move(mix));
}

LockingVerification verify_locking(const LockingScheme& scheme,
                                   const ProbDist& prior,
                                   std::span<const RankOneEffect> effects) {
  require_prior(scheme, prior);
  std::vector<double> h(effects.size()), tv(effects.size());
  parallel_for(effects.size(), [&](std::size_t i) {
    const ProbDist post = posterior(scheme, prior, effects[i]);
    h[i] = hellinger(post, prior);
    tv[i] = total_variation(post, prior);
  });
  LockingVerification out;
  out.effects = effects.size();
  for (std::size_t i = 0; i < effects.size(); ++i) {
    out.max_hellinger = std::max(out.max_hellinger, h[i]);
    out.max_total_variation = std::max(out.max_total_variation, tv[i]);
  }
  return out;
}

double hellinger_locking_bound(double eps, double l, int n) {
  if (!(eps >= 0.0) || l < 0.0 || l > n) {
    throw Error(ErrorCode::domain_error,
                "hellinger_locking_bound: need eps >= 0 and 0 <= l <= n");
  }
  if (l == static_cast<double>(n)) return eps;
  const double gap = std::exp2(l - n);
  if (!(gap > 2.0 * eps * eps)) {
    throw Error(ErrorCode::domain_error,
                "hellinger_locking_bound: requires 2^(l-n) > 2 eps^2");
  }
  return 2.0 * eps / (std::exp2((l - n) / 2.0) - std::sqrt(2.0) * eps);
}

double key_length_lower_bound(double eps, int n) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::domain_error,
                "key_length_lower_bound: eps must lie in (0, 1)");
  }
  return -std::log2(2.0 * eps * eps + std::exp2(1.0 - n / 2.0));
}

FhsReport fhs_parameter_check(double eps, double d_b, double t, double d) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::domain_error,
                "fhs_parameter_check: eps must lie in (0, 1)");
  }
  FhsReport r;
  const double log_term = std::log(9.0 / eps);
  r.d_b_threshold = 9.0 / (eps * eps);
  r.d_b_ok = d_b >= r.d_b_threshold;
  r.t_threshold = 72.0 * 16.0 * log_term / (eps * eps);
  r.t_ok = t > r.t_threshold;
  r.exponent = d * (eps * eps * t / 144.0 - 2.0 * log_term);
  r.probability_bound = std::max(0.0, 1.0 - 4.0 * std::exp(-r.exponent));
  r.meaningful = r.d_b_ok && r.t_ok && r.probability_bound > 0.0;
  return r;
}

LockingAccounting locking_accounting(double eps, int n) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorCode::domain_error,
                "locking_accounting: eps must lie in (0, 1)");
  }
  const double key = 2.0 * std::log2(1.0 / eps);
  return {static_cast<double>(n) + key, key};
}

Povm AdversarialPovm::to_povm() const {
  Povm p;
  p.effects.reserve(directions.size() + 1);
  p.effects.push_back(fail);
  for (const auto& e : directions) p.effects.push_back(weight * (e * e.adjoint()));
  return p;
}

AdversarialPovm build_adversarial_povm(const LockingScheme& scheme,
                                       std::span<const std::size_t> support) {
  if (support.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "build_adversarial_povm: empty support");
  }
  std::vector<std::size_t> sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.back() >= scheme.messages()) {
    throw Error(ErrorCode::invalid_argument,
                "build_adversarial_povm: support must hold distinct messages");
  }
  const std::size_t t = scheme.t();
  const std::size_t s = support.size();
  const std::size_t d = scheme.dims().d();
  const std::size_t db = scheme.dims().d_b();
  if ((t * s - 1) * db >= d) {
    throw Error(ErrorCode::no_nullspace,
                "build_adversarial_povm: (t|S| - 1) d_B must be below d");
  }

  std::vector<CMatrix> bases(s * t);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t k = 0; k < t; ++k) {
      bases[i * t + k] = scheme.support_basis(support[i], k);
    }
  }

  AdversarialPovm out;
  out.support.assign(support.begin(), support.end());
  out.t = t;
  out.weight = 1.0 / static_cast<double>(s * t);
  out.directions.resize(s * t);
  parallel_for(s * t, [&](std::size_t idx) {
    std::vector<CVector> columns;
    columns.reserve((s * t - 1) * db);
    for (std::size_t other = 0; other < s * t; ++other) {
      if (other == idx) continue;
      for (Eigen::Index b = 0; b < bases[other].cols(); ++b) {
        columns.push_back(bases[other].col(b));
      }
    }
    CVector e = nullspace_vector(columns, d);
    const double overlap = (bases[idx].adjoint() * e).cwiseAbs().maxCoeff();
    if (!(overlap > kOverlapThreshold)) {
      throw Error(ErrorCode::degenerate_ensemble,
                  "build_adversarial_povm: chosen vector misses the support "
                  "of its own encoded state");
    }
    out.directions[idx] = std::move(e);
  });

  const auto n = static_cast<Eigen::Index>(d);
  out.fail = CMatrix::Identity(n, n);
  for (const auto& e : out.directions) out.fail -= out.weight * (e * e.adjoint());
  return out;
}

AdversaryOutcome adversary_identification(const LockingScheme& scheme,
                                          const AdversarialPovm& povm) {
  const std::size_t s = povm.support.size();
  const std::size_t t = povm.t;
  const double db = static_cast<double>(scheme.dims().d_b());
  const double prior = 1.0 / static_cast<double>(s * t);
  AdversaryOutcome out;
  out.min_identification = 1.0;
  double hit_total = 0.0;
  for (std::size_t idx = 0; idx < s * t; ++idx) {
    const CVector& e = povm.directions[idx];
    double correct = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t k = 0; k < t; ++k) {
        // Tr(E(y, k) M) = (weight / d_B) || B(y, k)^dagger e ||^2
        const CMatrix basis = scheme.support_basis(povm.support[i], k);
        const double p =
            prior * povm.weight * (basis.adjoint() * e).squaredNorm() / db;
        total += p;
        if (i * t + k == idx) correct = p;
      }
    }
    hit_total += total;
    out.min_identification =
        std::min(out.min_identification, total > 0.0 ? correct / total : 0.0);
  }
  out.fail_probability = std::max(0.0, 1.0 - hit_total);
  return out;
}

DataHidingResult data_hiding_eval(const LockingScheme& scheme,
                                  const ProbDist& prior,
                                  const DataHidingOptions& opts, Rng& rng) {
  if (scheme.t() != 1) {
    throw Error(ErrorCode::invalid_argument,
                "data_hiding_eval: the scheme must use a single unitary");
  }
  require_prior(scheme, prior);
  const auto& dims = scheme.dims();
  std::vector<RankOneEffect> effects;
  effects.reserve(opts.n_effects);
  for (std::size_t i = 0; i < opts.n_effects; ++i) {
    const CVector a = sample_sphere(dims.d_a(), rng);
    const CVector b = sample_sphere(dims.d_b(), rng);
    CVector e = tensor(a, b);
    e /= e.norm();
    effects.emplace_back(1.0, std::move(e));
  }
  DataHidingResult out;
  if (!effects.empty()) {
    out.max_hellinger_sampled = verify_locking(scheme, prior, effects).max_hellinger;
  }
  SearchOptions search = opts.search;
  search.objective = Objective::hellinger;
  search.minimize = false;
  const auto report =
      worst_case_search(scheme.ensemble(), StateSubset::separable(), search);
  out.separable_sup_y = report.objective_value;
  const RankOneEffect searched(1.0, report.worst_state.vector());
  out.max_hellinger_searched = hellinger(posterior(scheme, prior, searched), prior);
  out.max_hellinger = std::max(out.max_hellinger_sampled, out.max_hellinger_searched);
  return out;
}

}  // namespace qlock
