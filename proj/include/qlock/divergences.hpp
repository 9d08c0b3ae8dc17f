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

#ifndef QLOCK_DIVERGENCES_HPP
#define QLOCK_DIVERGENCES_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace qlock {

/// Probability vector. Weights in [-1e-15, 0) are clamped to zero; anything
/// more negative, or a total off by more than 1e-10, is rejected.
class ProbDist {
 public:
  explicit ProbDist(std::vector<double> weights);

  static ProbDist uniform(std::size_t d);
  static ProbDist point_mass(std::size_t d, std::size_t at);
  /// Uniform on the listed outcomes (duplicates rejected).
  static ProbDist uniform_on(std::size_t d, std::span<const std::size_t> support);

  std::size_t dim() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

inline constexpr double kInfiniteDivergence =
    std::numeric_limits<double>::infinity();

/// Shannon entropy in nats, with 0 log 0 = 0.
double shannon_entropy(const ProbDist& p);
/// D_KL(p || q) in nats; kInfiniteDivergence when supp p is not in supp q.
double kl_divergence(const ProbDist& p, const ProbDist& q);
double total_variation(const ProbDist& p, const ProbDist& q);
/// Bhattacharyya coefficient sum_i sqrt(p_i q_i).
double fidelity(const ProbDist& p, const ProbDist& q);
/// Hellinger distance, sqrt(1 - fidelity(p, q)).
double hellinger(const ProbDist& p, const ProbDist& q);
/// -log2 max_i p_i, in bits.
double min_entropy(const ProbDist& p);

}  // namespace qlock

#endif  // QLOCK_DIVERGENCES_HPP
