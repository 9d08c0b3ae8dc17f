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

#include "qlock/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qlock {

namespace {

constexpr double kStateNormTolerance = 1e-10;

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

PureState::PureState(CVector vector, BipartiteDims dims)
    : vector_(std::move(vector)), dims_(dims) {
  if (static_cast<std::size_t>(vector_.size()) != dims_.d()) {
    throw Error(ErrorCode::dimension_mismatch,
                "PureState: vector has dimension " +
                    std::to_string(vector_.size()) + ", expected " +
                    std::to_string(dims_.d()));
  }
  if (!vector_.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "PureState: non-finite entry");
  }
  if (std::abs(vector_.norm() - 1.0) > kStateNormTolerance) {
    throw Error(ErrorCode::invalid_argument,
                "PureState: vector is not normalized");
  }
}

PureState PureState::normalized(const CVector& vector, BipartiteDims dims) {
  const double n = vector.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::invalid_argument,
                "PureState::normalized: zero or non-finite vector");
  }
  return PureState(vector / n, dims);
}

PureState PureState::basis(BipartiteDims dims, std::size_t a, std::size_t b) {
  if (a >= dims.d_a() || b >= dims.d_b()) {
    throw Error(ErrorCode::index_out_of_range, "PureState::basis");
  }
  return PureState(CVector::Unit(static_cast<Eigen::Index>(dims.d()),
                                 dims.index(a, b)),
                   dims);
}

RankOneEffect::RankOneEffect(double weight, CVector direction)
    : weight_(weight), direction_(std::move(direction)) {
  if (!(weight_ > 0.0 && weight_ <= 1.0)) {
    throw Error(ErrorCode::invalid_argument,
                "RankOneEffect: weight must lie in (0, 1]");
  }
  if (std::abs(direction_.norm() - 1.0) > kStateNormTolerance) {
    throw Error(ErrorCode::invalid_argument,
                "RankOneEffect: direction is not normalized");
  }
}

CMatrix RankOneEffect::matrix() const {
  return weight_ * (direction_ * direction_.adjoint());
}

Povm Povm::computational_basis(std::size_t d) {
  Povm p;
  const auto n = static_cast<Eigen::Index>(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    p.effects.push_back(std::move(e));
  }
  return p;
}

void block_marginal(const CVector& v, const BipartiteDims& dims,
                    std::span<double> out) {
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  for (std::size_t a = 0; a < dims.d_a(); ++a) {
    out[a] = v.segment(static_cast<Eigen::Index>(a) * db, db).squaredNorm();
  }
}

ProbDist marginal_a(const PureState& state) {
  std::vector<double> p(state.dims().d_a());
  block_marginal(state.vector(), state.dims(), p);
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return ProbDist(std::move(p));
}

PovmReport validate_povm(const Povm& povm) {
  PovmReport report;
  if (povm.effects.empty()) {
    report.completeness_residual = 1.0;
    report.valid = false;
    return report;
  }
  const auto d = povm.effects.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& e : povm.effects) {
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorCode::dimension_mismatch,
                  "validate_povm: effects have inconsistent shapes");
    }
    total += e;
    min_eig = std::min(min_eig, min_hermitian_eigenvalue(e));
  }
  total -= CMatrix::Identity(d, d);
  report.completeness_residual = operator_norm(total);
  report.min_eigenvalue = min_eig;
  report.valid = report.completeness_residual <= kPovmTolerance &&
                 report.min_eigenvalue >= -kPovmTolerance;
  return report;
}

ProbDist born_probabilities(const Povm& povm, const CMatrix& rho) {
  const PovmReport report = validate_povm(povm);
  if (!report.valid) {
    throw Error(ErrorCode::invalid_argument,
                "born_probabilities: invalid POVM (completeness residual " +
                    std::to_string(report.completeness_residual) +
                    ", min eigenvalue " +
                    std::to_string(report.min_eigenvalue) + ")");
  }
  const auto d = povm.effects.front().rows();
  if (rho.rows() != d || rho.cols() != d) {
    throw Error(ErrorCode::dimension_mismatch,
                "born_probabilities: state and effects differ in dimension");
  }
  if ((rho - rho.adjoint()).norm() > kPovmTolerance ||
      std::abs(rho.trace() - Complex(1.0, 0.0)) > kPovmTolerance ||
      min_hermitian_eigenvalue(rho) < -kPovmTolerance) {
    throw Error(ErrorCode::invalid_argument,
                "born_probabilities: rho is not a density operator");
  }
  std::vector<double> p;
  p.reserve(povm.effects.size());
  double total = 0.0;
  for (const auto& e : povm.effects) {
    // Tr(M rho) = sum_ij M_ij rho_ji
    double v = (e.cwiseProduct(rho.transpose())).sum().real();
    if (v < -1e-10) {
      throw Error(ErrorCode::invalid_argument,
                  "born_probabilities: negative outcome probability");
    }
    v = std::max(v, 0.0);
    p.push_back(v);
    total += v;
  }
  for (double& x : p) x /= total;
  return ProbDist(std::move(p));
}

}  // namespace qlock
