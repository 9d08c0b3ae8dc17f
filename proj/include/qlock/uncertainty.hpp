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

#ifndef QLOCK_UNCERTAINTY_HPP
#define QLOCK_UNCERTAINTY_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qlock/linalg.hpp"
#include "qlock/measurement.hpp"
#include "qlock/random.hpp"

namespace qlock {

/// U_1, ..., U_t acting on H_A (x) H_B.
class UnitaryEnsemble {
 public:
  /// Checks shapes and unitarity (residual below 1e-9).
  UnitaryEnsemble(std::vector<CMatrix> unitaries, BipartiteDims dims);

  /// t independent Haar unitaries. Each member is drawn from its own
  /// substream, so the result does not depend on the worker count.
  static UnitaryEnsemble haar(BipartiteDims dims, std::size_t t, Rng& rng);
  static UnitaryEnsemble identity(BipartiteDims dims, std::size_t t);

  std::size_t t() const noexcept { return unitaries_.size(); }
  const BipartiteDims& dims() const noexcept { return dims_; }
  const CMatrix& operator[](std::size_t k) const { return unitaries_[k]; }
  std::span<const CMatrix> unitaries() const noexcept { return unitaries_; }

 private:
  struct Trusted {};
  UnitaryEnsemble(Trusted, std::vector<CMatrix> unitaries, BipartiteDims dims);

  std::vector<CMatrix> unitaries_;
  BipartiteDims dims_;
};

/// Set of states a worst-case search ranges over.
struct StateSubset {
  enum class Kind { full_sphere, separable, explicit_list };

  Kind kind = Kind::full_sphere;
  std::vector<PureState> states;  // explicit_list only

  static StateSubset full_sphere() { return {}; }
  static StateSubset separable() { return {Kind::separable, {}}; }
  static StateSubset explicit_list(std::vector<PureState> states) {
    return {Kind::explicit_list, std::move(states)};
  }
};

enum class Objective {
  hellinger,        // Y, the quadratic mean of Hellinger distances
  total_variation,  // arithmetic mean of total variation distances
};

struct SearchOptions {
  Objective objective = Objective::hellinger;
  /// Search for the smallest objective instead of the largest.
  bool minimize = false;
  int restarts = 20;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-8;
  double initial_step = 0.25;
  Seed seed{};
  /// Extra starting points, used before the random restarts.
  std::vector<CVector> initial_states;
};

struct SearchDiagnostics {
  int restarts = 0;
  int iterations = 0;       // largest iteration count over restarts
  int converged_restarts = 0;
  bool converged = false;   // every restart stopped before max_iterations
};

struct UncertaintyReport {
  /// Value of the searched objective at worst_state (Y or mean TV).
  double objective_value = 0.0;
  double epsilon_fidelity = 0.0;  // 1 - mean fidelity = Y^2
  double epsilon_metric = 0.0;    // mean total variation
  double epsilon_entropic = 0.0;  // log d_a - mean entropy
  PureState worst_state;
  SearchDiagnostics diagnostics;
};

/// Y = sqrt((1/t) sum_k D_H(p^A_{U_k psi}, Unif)^2).
double eval_y(const UnitaryEnsemble& ens, const PureState& psi);
/// (1/t) sum_k F(p^A_{U_k psi}, Unif).
double eval_fidelity_uncertainty(const UnitaryEnsemble& ens, const PureState& psi);
/// (1/t) sum_k D_TV(p^A_{U_k psi}, Unif).
double eval_metric_uncertainty(const UnitaryEnsemble& ens, const PureState& psi);
/// (1/t) sum_k H(p^A_{U_k psi}) in nats.
double eval_entropic_uncertainty(const UnitaryEnsemble& ens, const PureState& psi);

/// Marginals p^A_{U_k psi}, k = 0..t-1.
std::vector<ProbDist> ensemble_marginals(const UnitaryEnsemble& ens,
                                         const PureState& psi);

/// How Monte Carlo routines draw U_k psi for a fixed psi. `orbit` samples
/// the image directly: for Haar U the vector U psi is uniform on the sphere,
/// and the pair (U psi, U phi) is a Haar-random frame with the same Gram
/// matrix. `full_haar` materializes every U_k.
enum class EnsembleSampling { orbit, full_haar };

struct REstimate {
  double mean_y = 0.0;
  double se_y = 0.0;
  double mean_fidelity = 0.0;
  double se_fidelity = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo estimate of R = E Y at a fixed reference state (the first
/// canonical basis state unless given).
REstimate estimate_r(BipartiteDims dims, std::size_t t, std::size_t trials,
                     Rng& rng, std::optional<PureState> reference = std::nullopt,
                     EnsembleSampling sampling = EnsembleSampling::orbit);

/// Multi-start projected gradient search. Reported values are attained at a
/// concrete state, so for maximization they are lower bounds on the supremum.
UncertaintyReport worst_case_search(const UnitaryEnsemble& ens,
                                    const StateSubset& subset,
                                    const SearchOptions& opts);

/// sup over unit product vectors of Re<G|psi_A (x) psi_B>, i.e. the largest
/// singular value of G reshaped to d_a x d_b.
double separable_width_exact(const CVector& g, BipartiteDims dims);

/// G reshaped to a d_a x d_b matrix, entry (a, b) = G[a d_b + b].
CMatrix reshape_ab(const CVector& v, BipartiteDims dims);

struct LipschitzResult {
  double ratio = 0.0;
  double bound = 0.0;  // 1 / sqrt(2 t)
  double value1 = 0.0;
  double value2 = 0.0;
  double distance = 0.0;  // sqrt(sum_k ||U_k - U'_k||_HS^2)
};

/// |f(ens1) - f(ens2)| / distance with f = max of Y over the given states.
LipschitzResult lipschitz_check(const UnitaryEnsemble& ens1,
                                const UnitaryEnsemble& ens2,
                                std::span<const PureState> states);
/// Same, over n_states uniformly random states.
LipschitzResult lipschitz_check(const UnitaryEnsemble& ens1,
                                const UnitaryEnsemble& ens2,
                                std::size_t n_states, Rng& rng);

struct IncrementDiagnostic {
  double mean_increment = 0.0;
  double std_increment = 0.0;
  double distance = 0.0;         // ||psi - phi||
  double predicted_sigma = 0.0;  // ||psi - phi|| / sqrt(t d)
  double ratio = 0.0;            // std_increment / predicted_sigma
  /// Fraction of trials with |Y_psi - Y_phi| >= u * predicted_sigma, u = 1, 2, 3.
  std::array<double, 3> exceedance{};
  std::size_t trials = 0;
};

/// Samples Y_psi - Y_phi over fresh Haar ensembles.
IncrementDiagnostic increment_diagnostic(
    BipartiteDims dims, std::size_t t, const PureState& psi,
    const PureState& phi, std::size_t trials, Rng& rng,
    EnsembleSampling sampling = EnsembleSampling::orbit);

namespace detail {

struct BatchEvaluation {
  RVector values;  // Y^2 or mean TV per column
  CMatrix gradients;  // real gradient 2 df/d(conj psi), one column per state
};

/// Objective (Y^2 for the Hellinger objective) and its gradient for every
/// column of `states`. Square roots are regularized as sqrt(q + 1e-12) in
/// the gradient.
BatchEvaluation evaluate_batch(const UnitaryEnsemble& ens, const CMatrix& states,
                               Objective objective, bool with_gradient);

}  // namespace detail

}  // namespace qlock

#endif  // QLOCK_UNCERTAINTY_HPP
