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

#ifndef QLOCK_BOUNDS_HPP
#define QLOCK_BOUNDS_HPP

#include <cstddef>
#include <optional>

#include "qlock/random.hpp"
#include "qlock/uncertainty.hpp"

namespace qlock {

/// Moments of one coordinate (and of a pair) of a uniform point of the
/// simplex Delta_{d-1}.
struct SimplexMoments {
  std::size_t d = 0;
  double mean = 0.0;        // 1/d
  double variance = 0.0;    // (d-1) / (d^2 (d+1))
  double covariance = 0.0;  // -1 / (d^2 (d+1))
};

SimplexMoments simplex_moments(std::size_t d);

struct TvLowerBound {
  /// sqrt((d_a - 1) / (d_a d_b + 1)); the universal constant C_9 is left out.
  double value = 0.0;
  /// 1 / (2 sqrt(d_b)), valid for d_a >= 2.
  double simplified = 0.0;
};

TvLowerBound tv_lower_bound_expression(std::size_t d_a, std::size_t d_b);

/// A_{ka} = sum_b U_k^dagger |ab><ab| U_k, a rank-d_b projector.
CMatrix projector_a(const UnitaryEnsemble& ens, std::size_t k, std::size_t a);

/// ||A_{ka} - Id/d_a||_HS^2 = d_b (1 - 1/d_a)^2 + (d_a d_b - d_b) / d_a^2.
double hs_centered_projector_norm(std::size_t d_a, std::size_t d_b);

struct KhintchineResult {
  /// (1 / (t sqrt(2d))) sqrt(sum_{k,a} ||A_{ka} - Id/d_a||_HS^2)
  double analytic_bound = 0.0;
  /// Monte Carlo mean of (1/(t sqrt d)) ||sum eps_{ka} (A_{ka} - Id/d_a)||_HS
  double mc_estimate = 0.0;
  double mc_se = 0.0;
  std::size_t sign_samples = 0;
  /// Exact average over all 2^{t d_a} sign patterns, when t d_a <= 20.
  std::optional<double> exact;
};

inline constexpr std::size_t kExactSignLimit = 20;

KhintchineResult khintchine_t_bound(const UnitaryEnsemble& ens,
                                    std::size_t n_sign_samples, Rng& rng);

struct RequiredParameters {
  double d_b_min_order = 0.0;  // 1 / eps^2
  double t_min_order = 0.0;    // 1 / eps^2
  /// 1 / (16 eps^2); the d_b bound is this divided by C_9^2.
  double d_b_min_times_c9_squared = 0.0;
  double t_min = 0.0;  // 1 / (32 eps^2)
};

RequiredParameters required_parameters(double eps);

struct ExpectedTvEstimators {
  /// 2 E D_TV(p^A_psi, Unif) for uniform psi.
  double twice_expected_tv = 0.0;
  double twice_expected_tv_se = 0.0;
  /// d_a E |sum_b X_{a,b} - 1/d_a| with X uniform on the simplex, a = 0.
  double block_deviation = 0.0;
  double block_deviation_se = 0.0;
};

/// Two independently sampled estimators of the same expectation.
ExpectedTvEstimators expected_tv_estimators(BipartiteDims dims,
                                            std::size_t draws, Rng& rng);

}  // namespace qlock

#endif  // QLOCK_BOUNDS_HPP
