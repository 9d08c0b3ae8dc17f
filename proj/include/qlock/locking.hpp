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

#ifndef QLOCK_LOCKING_HPP
#define QLOCK_LOCKING_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "qlock/divergences.hpp"
#include "qlock/measurement.hpp"
#include "qlock/uncertainty.hpp"

namespace qlock {

/// Encoding E(x, k) = (1/d_B) sum_b U_k^dagger (|x><x| (x) |b><b|) U_k of an
/// n-bit message x under key k. The message register is H_A, d_A = 2^n.
class LockingScheme {
 public:
  LockingScheme(UnitaryEnsemble ensemble, int n);

  const UnitaryEnsemble& ensemble() const noexcept { return ensemble_; }
  int n() const noexcept { return n_; }
  std::size_t t() const noexcept { return ensemble_.t(); }
  std::size_t messages() const noexcept { return ensemble_.dims().d_a(); }
  const BipartiteDims& dims() const noexcept { return ensemble_.dims(); }

  /// Orthonormal basis U_k^dagger |x>|b>, b = 0..d_B-1, of supp E(x, k),
  /// one vector per column.
  CMatrix support_basis(std::size_t x, std::size_t k) const;

 private:
  UnitaryEnsemble ensemble_;
  int n_;
};

/// Density operator E(x, k).
CMatrix encode(const LockingScheme& scheme, std::size_t x, std::size_t k);

/// max over k and x != x' of | (1/2) ||E(x,k) - E(x',k)||_1 - 1 |.
double identification_check(const LockingScheme& scheme);

/// P(X = . | I = i) for the outcome of a rank-one effect xi |e><e|.
/// Throws degenerate_outcome when the outcome has zero probability.
ProbDist posterior(const LockingScheme& scheme, const ProbDist& prior,
                   const RankOneEffect& effect);

/// Posterior for a coarse outcome M = sum_j xi_j |e_j><e_j|, assembled as
/// the P(J = j | J in A) mixture of the rank-one posteriors.
ProbDist posterior_coarse(const LockingScheme& scheme, const ProbDist& prior,
                          std::span<const RankOneEffect> parts);

struct LockingVerification {
  double max_hellinger = 0.0;
  double max_total_variation = 0.0;
  std::size_t effects = 0;
};

/// Largest posterior-vs-prior distances over the supplied effects.
LockingVerification verify_locking(const LockingScheme& scheme,
                                   const ProbDist& prior,
                                   std::span<const RankOneEffect> effects);

/// 2 eps / (2^{(l-n)/2} - sqrt(2) eps); eps itself when l = n. Requires
/// 2^{l-n} > 2 eps^2.
double hellinger_locking_bound(double eps, double l, int n);

/// log2(1 / (2 eps^2 + 2^{1 - n/2})) bits.
double key_length_lower_bound(double eps, int n);

struct FhsReport {
  double d_b_threshold = 0.0;  // 9 / eps^2
  bool d_b_ok = false;
  double t_threshold = 0.0;  // 72 * 16 ln(9/eps) / eps^2
  bool t_ok = false;
  double exponent = 0.0;  // d (eps^2 t / 144 - 2 ln(9/eps))
  /// max(0, 1 - 4 exp(-exponent)); 0 means vacuous.
  double probability_bound = 0.0;
  bool meaningful = false;
};

FhsReport fhs_parameter_check(double eps, double d_b, double t, double d);

/// Resource counts of the Hellinger locking construction without the
/// unspecified O(1) terms.
struct LockingAccounting {
  double qubits_without_constant = 0.0;  // n + 2 log2(1/eps)
  double key_bits_without_constant = 0.0;  // 2 log2(1/eps)
};

LockingAccounting locking_accounting(double eps, int n);

/// Measurement {M_fail} u {M_{x,k}} that identifies (x, k) with certainty
/// whenever it does not fail. Effect (x, k) is stored at index
/// position(x) * t + k where position(x) is the rank of x in `support`.
struct AdversarialPovm {
  std::vector<std::size_t> support;
  std::size_t t = 0;
  double weight = 0.0;  // 1 / (|S| t)
  std::vector<CVector> directions;
  CMatrix fail;

  Povm to_povm() const;
};

/// For each (x, k) picks a unit vector orthogonal to the supports of every
/// other E(y, i), y in S. Throws no_nullspace when (t|S| - 1) d_B >= d and
/// degenerate_ensemble when a chosen vector misses supp E(x, k).
AdversarialPovm build_adversarial_povm(const LockingScheme& scheme,
                                       std::span<const std::size_t> support);

struct AdversaryOutcome {
  /// min over (x, k) of P(X = x, K = k | I = (x, k)).
  double min_identification = 0.0;
  double fail_probability = 0.0;
};

/// Exact Bayes analysis with X uniform on the support and K uniform.
AdversaryOutcome adversary_identification(const LockingScheme& scheme,
                                          const AdversarialPovm& povm);

struct DataHidingOptions {
  std::size_t n_effects = 500;
  SearchOptions search;
};

struct DataHidingResult {
  double max_hellinger_sampled = 0.0;   // Haar product effects
  double max_hellinger_searched = 0.0;  // separable search extremizer
  double max_hellinger = 0.0;
  double separable_sup_y = 0.0;  // searched lower bound on sup over products
};

/// Posterior Hellinger distances under separable rank-one effects for a
/// single-unitary scheme.
DataHidingResult data_hiding_eval(const LockingScheme& scheme,
                                  const ProbDist& prior,
                                  const DataHidingOptions& opts, Rng& rng);

}  // namespace qlock

#endif  // QLOCK_LOCKING_HPP
