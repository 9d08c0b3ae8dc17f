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

#ifndef QLOCK_RANDOM_HPP
#define QLOCK_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "qlock/linalg.hpp"

namespace qlock {

class ProbDist;

/// (value, stream_id) determines every draw of a stream.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Seeded random stream. Single owner; parallel work derives substreams
/// keyed by a task index instead of sharing one instance.
class Rng {
 public:
  explicit Rng(Seed seed);

  /// Independent stream for task `index` of a computation seeded by `base`.
  static Rng substream(Seed base, std::uint64_t index);

  /// Draws a fresh base seed from this stream (for handing to substreams).
  Seed split();

  Seed seed() const noexcept { return seed_; }

  double normal();
  double uniform();
  /// (xi + i eta) / sqrt(2) with xi, eta independent standard normals.
  Complex complex_normal();
  std::uint64_t next_u64();
  /// +1 or -1 with probability 1/2.
  int rademacher();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  Seed seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar unitary: QR of a complex Ginibre matrix, then column j of Q is
/// multiplied by the phase of R_jj so that the factorization has a positive
/// diagonal.
CMatrix sample_haar_qr(std::size_t d, Rng& rng);

/// Haar unitary built recursively as M * diag(1, V): M is a Householder
/// completion of a uniform sphere point and V is Haar on U(d-1).
CMatrix sample_haar_recursive(std::size_t d, Rng& rng);

/// Uniform point on the complex unit sphere of C^d.
CVector sample_sphere(std::size_t d, Rng& rng);

/// Uniform point on the simplex, as squared moduli of a sphere point.
ProbDist sample_simplex(std::size_t d, Rng& rng);

/// Standard complex Gaussian vector with E||G||^2 = d.
CVector sample_gaussian_state(std::size_t d, Rng& rng);

}  // namespace qlock

#endif  // QLOCK_RANDOM_HPP
