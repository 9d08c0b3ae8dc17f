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

#ifndef QLOCK_LINALG_HPP
#define QLOCK_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "qlock/error.hpp"

namespace qlock {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Dimensions of H = H_A (x) H_B. The basis index (a, b) flattens to
/// a * d_b + b, so the B-block belonging to a fixed a is contiguous.
class BipartiteDims {
 public:
  BipartiteDims(std::size_t d_a, std::size_t d_b);

  std::size_t d_a() const noexcept { return d_a_; }
  std::size_t d_b() const noexcept { return d_b_; }
  std::size_t d() const noexcept { return d_a_ * d_b_; }
  Eigen::Index index(std::size_t a, std::size_t b) const noexcept {
    return static_cast<Eigen::Index>(a * d_b_ + b);
  }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  std::size_t d_a_;
  std::size_t d_b_;
};

/// Kronecker product; entry i * dim(v) + j is u_i * v_j.
CVector tensor(const CVector& u, const CVector& v);

/// Traces out H_B from a d x d operator, returning a d_a x d_a operator.
CMatrix partial_trace_b(const CMatrix& rho, const BipartiteDims& dims);

/// Sum of singular values. Throws for non-square input.
double trace_norm(const CMatrix& m);
/// Frobenius norm.
double hs_norm(const CMatrix& m);
/// Largest singular value; 0 for an empty matrix.
double operator_norm(const CMatrix& m);

/// Unit vector orthogonal to every column. The columns are stacked as the
/// rows of a matrix and the right singular vector of the smallest singular
/// value is returned; it is accepted when that singular value is below
/// 1e-8. An empty list yields the first canonical basis vector.
CVector nullspace_vector(std::span<const CVector> columns, std::size_t d);

/// || m^dagger m - Id ||_HS
double unitarity_residual(const CMatrix& m);

bool all_finite(const CMatrix& m);

}  // namespace qlock

#endif  // QLOCK_LINALG_HPP
