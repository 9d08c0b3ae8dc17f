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

#ifndef QLOCK_EMBEDDING_HPP
#define QLOCK_EMBEDDING_HPP

#include <cstddef>

#include "qlock/uncertainty.hpp"

namespace qlock {

/// Element of l1^n(l2^m): an m x n matrix normed by the sum of its column
/// Euclidean norms.
struct MatrixSpaceElement {
  CMatrix matrix;
};

/// T psi = (1/sqrt t) sum_k (U_k psi) (x) |k>, viewed in l1^{d_a t}(l2^{d_b}).
/// Column a * t + k holds the B-block of U_k psi at A-index a.
class EmbeddingMap {
 public:
  explicit EmbeddingMap(UnitaryEnsemble ensemble) : ensemble_(std::move(ensemble)) {}

  const UnitaryEnsemble& ensemble() const noexcept { return ensemble_; }
  std::size_t rows() const noexcept { return ensemble_.dims().d_b(); }
  std::size_t cols() const noexcept { return ensemble_.dims().d_a() * ensemble_.t(); }

 private:
  UnitaryEnsemble ensemble_;
};

MatrixSpaceElement apply_t(const EmbeddingMap& map, const CVector& psi);
MatrixSpaceElement apply_t(const EmbeddingMap& map, const PureState& psi);

double l1l2_norm(const MatrixSpaceElement& x);

/// | l1l2_norm(T psi) - sqrt(d_a t) (1 - Y_psi^2) |
double norm_identity_check(const EmbeddingMap& map, const PureState& psi);

struct DistortionOptions {
  std::size_t n_random_states = 200;
  SearchOptions search;
  /// Also run a minimizing search for the largest norm.
  bool search_minimum = true;
};

struct DistortionCertificate {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// max_ratio / min_ratio; a lower bound on the true distortion.
  double distortion = 1.0;
  double r_hat = 0.0;  // mean Y over the random states
  double analytic_scale = 0.0;  // sqrt(d_a t) (1 - r_hat^2)
  double median_scale = 0.0;    // median l1l2 norm over the random states
  double searched_max_y = 0.0;
  double searched_min_y = 0.0;
};

/// Norm ratios over random unit states plus the search extremizers of Y.
DistortionCertificate certify_distortion(const EmbeddingMap& map,
                                         const DistortionOptions& opts, Rng& rng);

struct DvoretzkyDimension {
  double dimension = 0.0;  // N min(eps, eps^2 m), constant omitted
  double prior_art = 0.0;  // N eps^2
};

DvoretzkyDimension dvoretzky_dimension(std::size_t n, std::size_t m, double eps);

}  // namespace qlock

#endif  // QLOCK_EMBEDDING_HPP
