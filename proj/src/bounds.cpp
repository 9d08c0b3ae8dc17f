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

#include "qlock/bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qlock/divergences.hpp"
#include "qlock/parallel.hpp"

namespace qlock {

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double se_of(const std::vector<double>& xs, double mean) {
  const auto n = static_cast<double>(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - mean) * (x - mean);
  return std::sqrt(v / (n - 1.0) / n);
}

}  // namespace

SimplexMoments simplex_moments(std::size_t d) {
  if (d == 0) {
    throw Error(ErrorCode::invalid_argument, "simplex_moments: d must be >= 1");
  }
  const auto x = static_cast<double>(d);
  return {d, 1.0 / x, (x - 1.0) / (x * x * (x + 1.0)),
          -1.0 / (x * x * (x + 1.0))};
}

TvLowerBound tv_lower_bound_expression(std::size_t d_a, std::size_t d_b) {
  if (d_a < 2 || d_b < 1) {
    throw Error(ErrorCode::domain_error,
                "tv_lower_bound_expression: requires d_a >= 2, d_b >= 1");
  }
  const auto a = static_cast<double>(d_a);
  const auto b = static_cast<double>(d_b);
  return {std::sqrt((a - 1.0) / (a * b + 1.0)), 1.0 / (2.0 * std::sqrt(b))};
}

CMatrix projector_a(const UnitaryEnsemble& ens, std::size_t k, std::size_t a) {
  const auto& dims = ens.dims();
  if (k >= ens.t() || a >= dims.d_a()) {
    throw Error(ErrorCode::index_out_of_range, "projector_a: index out of range");
  }
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  const CMatrix v = ens[k].middleRows(static_cast<Eigen::Index>(a) * db, db).adjoint();
  return v * v.adjoint();
}

double hs_centered_projector_norm(std::size_t d_a, std::size_t d_b) {
  if (d_a == 0 || d_b == 0) {
    throw Error(ErrorCode::invalid_argument,
                "hs_centered_projector_norm: dimensions must be positive");
  }
  const auto a = static_cast<double>(d_a);
  const auto b = static_cast<double>(d_b);
  const double off = 1.0 - 1.0 / a;
  return b * off * off + (a * b - b) / (a * a);
}

KhintchineResult khintchine_t_bound(const UnitaryEnsemble& ens,
                                    std::size_t n_sign_samples, Rng& rng) {
  const auto& dims = ens.dims();
  if (dims.d_a() < 2) {
    throw Error(ErrorCode::domain_error, "khintchine_t_bound: requires d_a >= 2");
  }
  const std::size_t t = ens.t();
  const std::size_t da = dims.d_a();
  const auto m = static_cast<Eigen::Index>(t * da);
  const auto d = static_cast<double>(dims.d());
  const auto db = static_cast<Eigen::Index>(dims.d_b());

  // Gram matrix of B_j = A_{ka} - Id/d_a under the HS inner product, using
  // Tr(A_j A_j') = ||V_j^dagger V_j'||_F^2 for A_j = V_j V_j^dagger.
  std::vector<CMatrix> frames(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < t; ++k) {
    for (std::size_t a = 0; a < da; ++a) {
      frames[k * da + a] =
          ens[k].middleRows(static_cast<Eigen::Index>(a) * db, db).adjoint();
    }
  }
  Eigen::MatrixXd gram(m, m);
  const double shift = -2.0 * static_cast<double>(db) / static_cast<double>(da) +
                       d / static_cast<double>(da * da);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      gram(static_cast<Eigen::Index>(i), j) =
          (frames[i].adjoint() * frames[j]).squaredNorm() + shift;
    }
  });

  const double scale = 1.0 / (static_cast<double>(t) * std::sqrt(d));
  // Squared norms below the rounding level of the quadratic form are zero
  // (e.g. equal signs within every key, since the B_{k,a} sum to zero).
  const double q_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                         static_cast<double>(m * m) * gram.cwiseAbs().maxCoeff();
  auto root = [&](double q) { return q > q_floor ? scale * std::sqrt(q) : 0.0; };
  auto norm_of = [&](const Eigen::VectorXd& eps) { return root(eps.dot(gram * eps)); };

  KhintchineResult out;
  out.analytic_bound =
      std::sqrt(static_cast<double>(t * da) *
                hs_centered_projector_norm(da, dims.d_b())) /
      (static_cast<double>(t) * std::sqrt(2.0 * d));

  out.sign_samples = n_sign_samples;
  if (n_sign_samples >= 2) {
    std::vector<double> vals(n_sign_samples);
    Eigen::VectorXd eps(m);
    for (std::size_t s = 0; s < n_sign_samples; ++s) {
      for (Eigen::Index j = 0; j < m; ++j) eps(j) = rng.rademacher();
      vals[s] = norm_of(eps);
    }
    out.mc_estimate = mean_of(vals);
    out.mc_se = se_of(vals, out.mc_estimate);
  }

  if (static_cast<std::size_t>(m) <= kExactSignLimit) {
    // Gray-code walk over patterns with eps_0 = +1; flipping every sign
    // leaves the norm unchanged, so this half covers all of them.
    Eigen::VectorXd eps = Eigen::VectorXd::Ones(m);
    Eigen::VectorXd g_eps = gram * eps;
    const std::uint64_t count = std::uint64_t{1} << (m - 1);
    double total = root(eps.dot(g_eps));
    for (std::uint64_t step = 1; step < count; ++step) {
      const auto j = static_cast<Eigen::Index>(std::countr_zero(step)) + 1;
      const double e = eps(j);
      eps(j) = -e;
      if (step % 4096 == 0) {
        g_eps.noalias() = gram * eps;
      } else {
        g_eps -= 2.0 * e * gram.col(j);
      }
      total += root(eps.dot(g_eps));
    }
    out.exact = total / static_cast<double>(count);
  }
  return out;
}

RequiredParameters required_parameters(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorCode::domain_error, "required_parameters: eps must lie in (0, 1]");
  }
  const double inv = 1.0 / (eps * eps);
  return {inv, inv, inv / 16.0, inv / 32.0};
}

ExpectedTvEstimators expected_tv_estimators(BipartiteDims dims,
                                            std::size_t draws, Rng& rng) {
  if (draws < 2) {
    throw Error(ErrorCode::invalid_argument,
                "expected_tv_estimators: draws must be >= 2");
  }
  const auto da = dims.d_a();
  const auto db = dims.d_b();
  const double unif = 1.0 / static_cast<double>(da);
  std::vector<double> tv(draws), block(draws);
  std::vector<double> marginal(da);
  for (std::size_t i = 0; i < draws; ++i) {
    const CVector psi = sample_sphere(dims.d(), rng);
    block_marginal(psi, dims, marginal);
    double s = 0.0;
    for (double p : marginal) s += std::abs(p - unif);
    tv[i] = s;
  }
  for (std::size_t i = 0; i < draws; ++i) {
    const ProbDist x = sample_simplex(dims.d(), rng);
    double s = 0.0;
    for (std::size_t b = 0; b < db; ++b) s += x[b];
    block[i] = static_cast<double>(da) * std::abs(s - unif);
  }
  ExpectedTvEstimators out;
  out.twice_expected_tv = mean_of(tv);
  out.twice_expected_tv_se = se_of(tv, out.twice_expected_tv);
  out.block_deviation = mean_of(block);
  out.block_deviation_se = se_of(block, out.block_deviation);
  return out;
}

}  // namespace qlock
