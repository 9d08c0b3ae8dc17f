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

#include "qlock/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qlock {

namespace {

constexpr double kNullspaceThreshold = 1e-8;

// Singular values, largest first. Hermitian input: |eigenvalues|.
Eigen::VectorXd singular_values(const CMatrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd sv = eig.eigenvalues().cwiseAbs();
    std::sort(sv.data(), sv.data() + sv.size(), std::greater<>());
    return sv;
  }
  return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

}  // namespace

BipartiteDims::BipartiteDims(std::size_t d_a, std::size_t d_b)
    : d_a_(d_a), d_b_(d_b) {
  if (d_a == 0 || d_b == 0) {
    throw Error(ErrorCode::invalid_argument,
                "bipartite dimensions must be positive");
  }
}

CVector tensor(const CVector& u, const CVector& v) {
  CVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u(i) * v;
  }
  return out;
}

CMatrix partial_trace_b(const CMatrix& rho, const BipartiteDims& dims) {
  const auto d = static_cast<Eigen::Index>(dims.d());
  if (rho.rows() != d || rho.cols() != d) {
    throw Error(ErrorCode::dimension_mismatch,
                "partial_trace_b: operator is " + std::to_string(rho.rows()) +
                    "x" + std::to_string(rho.cols()) + ", expected " +
                    std::to_string(d) + "x" + std::to_string(d));
  }
  const auto da = static_cast<Eigen::Index>(dims.d_a());
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  CMatrix out(da, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index a2 = 0; a2 < da; ++a2) {
      out(a, a2) = rho.block(a * db, a2 * db, db, db).trace();
    }
  }
  return out;
}

double trace_norm(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "trace_norm requires a square matrix");
  }
  if (m.size() == 0) return 0.0;
  return singular_values(m).sum();
}

double hs_norm(const CMatrix& m) { return m.norm(); }

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // Largest singular value from the smaller Gram matrix.
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

CVector nullspace_vector(std::span<const CVector> columns, std::size_t d) {
  const auto dim = static_cast<Eigen::Index>(d);
  if (columns.empty()) {
    return CVector::Unit(dim, 0);
  }
  const auto m = static_cast<Eigen::Index>(columns.size());
  CMatrix stacked(m, dim);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (columns[i].size() != dim) {
      throw Error(ErrorCode::dimension_mismatch,
                  "nullspace_vector: column has wrong dimension");
    }
    stacked.row(i) = columns[i].adjoint();
  }
  // Rows of `stacked` are <c_i|, so stacked * v = 0 means v is orthogonal
  // to every c_i.
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smallest = 0.0;
  if (m >= dim) {
    smallest = sv(dim - 1);
  }
  if (smallest >= kNullspaceThreshold) {
    throw Error(ErrorCode::no_nullspace,
                "nullspace_vector: columns span the whole space (smallest "
                "singular value " + std::to_string(smallest) + ")");
  }
  CVector v = svd.matrixV().col(dim - 1);
  return v / v.norm();
}

double unitarity_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "unitarity_residual requires a square matrix");
  }
  return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

bool all_finite(const CMatrix& m) { return m.allFinite(); }

}  // namespace qlock
