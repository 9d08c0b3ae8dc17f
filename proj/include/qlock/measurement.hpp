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

#ifndef QLOCK_MEASUREMENT_HPP
#define QLOCK_MEASUREMENT_HPP

#include <span>
#include <vector>

#include "qlock/divergences.hpp"
#include "qlock/linalg.hpp"

namespace qlock {

/// Unit vector of H_A (x) H_B.
class PureState {
 public:
  /// Requires ||vector|| = 1 within 1e-10.
  PureState(CVector vector, BipartiteDims dims);
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const CVector& vector, BipartiteDims dims);
  static PureState basis(BipartiteDims dims, std::size_t a, std::size_t b);

  const CVector& vector() const noexcept { return vector_; }
  const BipartiteDims& dims() const noexcept { return dims_; }

 private:
  CVector vector_;
  BipartiteDims dims_;
};

/// xi |e><e| with xi in (0, 1] and ||e|| = 1.
class RankOneEffect {
 public:
  RankOneEffect(double weight, CVector direction);

  double weight() const noexcept { return weight_; }
  const CVector& direction() const noexcept { return direction_; }
  CMatrix matrix() const;

 private:
  double weight_;
  CVector direction_;
};

/// Effects of a measurement. Validity is checked by validate_povm rather than
/// on construction so that broken families can be inspected.
struct Povm {
  std::vector<CMatrix> effects;

  static Povm computational_basis(std::size_t d);
};

struct PovmReport {
  double completeness_residual = 0.0;  // || sum M_i - Id ||_op
  double min_eigenvalue = 0.0;         // over all effects
  bool valid = false;
};

inline constexpr double kPovmTolerance = 1e-9;

/// p(a) = sum_b |<ab|psi>|^2.
ProbDist marginal_a(const PureState& state);

/// Same block sums for an arbitrary vector of dimension d; writes d_a
/// unnormalized values.
void block_marginal(const CVector& v, const BipartiteDims& dims,
                    std::span<double> out);

/// p(i) = Tr(M_i rho).
ProbDist born_probabilities(const Povm& povm, const CMatrix& rho);

PovmReport validate_povm(const Povm& povm);

}  // namespace qlock

#endif  // QLOCK_MEASUREMENT_HPP
