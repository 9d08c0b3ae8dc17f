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

#include <gtest/gtest.h>

#include <vector>

#include "qlock/linalg.hpp"
#include "qlock/random.hpp"

namespace qlock {
namespace {

CMatrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng) {
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

CMatrix random_density(std::size_t d, Rng& rng) {
  const CMatrix g = random_matrix(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d), rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

TEST(BipartiteDims, RejectsZero) {
  EXPECT_THROW(BipartiteDims(0, 2), Error);
  EXPECT_THROW(BipartiteDims(2, 0), Error);
  const BipartiteDims dims(3, 4);
  EXPECT_EQ(dims.d(), 12u);
  EXPECT_EQ(dims.index(2, 1), 9);
}

TEST(Tensor, BasisVectors) {
  CVector e1 = CVector::Zero(2);
  e1(0) = 1.0;
  const CVector out = tensor(e1, e1);
  ASSERT_EQ(out.size(), 4);
  EXPECT_EQ(out(0), Complex(1.0));
  EXPECT_EQ(out.tail(3).norm(), 0.0);

  CVector u(2), v(2);
  u << 1.0, 0.0;
  v << 0.0, 1.0;
  CVector expected(4);
  expected << 0.0, 1.0, 0.0, 0.0;
  EXPECT_EQ(tensor(u, v), expected);
}

TEST(Tensor, MatchesDoubleLoop) {
  Rng rng({1, 0});
  const CVector u = random_matrix(3, 1, rng);
  const CVector v = random_matrix(5, 1, rng);
  const CVector out = tensor(u, v);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_LT(std::abs(out(i * 5 + j) - u(i) * v(j)), 1e-15);
  }
}

TEST(Tensor, BilinearOnSmallRationals) {
  CVector u(2), v(3);
  u << Complex(0.5, 0.25), Complex(-1.0, 2.0);
  v << Complex(1.0, -0.5), Complex(0.0, 0.75), Complex(2.0, 0.0);
  const Complex alpha(2.0, -1.0);
  EXPECT_EQ(tensor(alpha * u, v), alpha * tensor(u, v));
  EXPECT_EQ(tensor(u, alpha * v), alpha * tensor(u, v));
}

TEST(PartialTrace, ProductStateAndMaximallyMixed) {
  const BipartiteDims dims(3, 2);
  CVector psi = CVector::Zero(6);
  psi(dims.index(1, 1)) = 1.0;
  const CMatrix reduced = partial_trace_b(psi * psi.adjoint(), dims);
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(1, 1) = 1.0;
  EXPECT_LT((reduced - expected).norm(), 1e-15);

  const CMatrix mixed = CMatrix::Identity(6, 6) / 6.0;
  EXPECT_LT((partial_trace_b(mixed, dims) - CMatrix::Identity(3, 3) / 3.0).norm(), 1e-15);
}

TEST(PartialTrace, MatchesIndexSumAndPreservesTrace) {
  Rng rng({2, 0});
  const BipartiteDims dims(3, 4);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix rho = random_density(12, rng);
    const CMatrix reduced = partial_trace_b(rho, dims);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t a2 = 0; a2 < 3; ++a2) {
        Complex s = 0.0;
        for (std::size_t b = 0; b < 4; ++b) s += rho(dims.index(a, b), dims.index(a2, b));
        EXPECT_LT(std::abs(reduced(a, a2) - s), 1e-14);
      }
    }
    EXPECT_NEAR(reduced.trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, DimensionMismatch) {
  EXPECT_THROW(partial_trace_b(CMatrix::Identity(5, 5), BipartiteDims(2, 2)), Error);
}

TEST(Norms, TraceNormExamples) {
  EXPECT_NEAR(trace_norm(CMatrix::Identity(5, 5)), 5.0, 1e-12);
  CVector e = CVector::Zero(4);
  e(2) = 1.0;
  EXPECT_NEAR(trace_norm(e * e.adjoint()), 1.0, 1e-12);
  CVector f = CVector::Zero(4);
  f(0) = 1.0;
  EXPECT_NEAR(trace_norm(e * e.adjoint() - f * f.adjoint()), 2.0, 1e-12);
  EXPECT_THROW(trace_norm(CMatrix::Zero(2, 3)), Error);
}

TEST(Norms, IdentityZeroAndSvdOracle) {
  EXPECT_NEAR(hs_norm(CMatrix::Identity(7, 7)), std::sqrt(7.0), 1e-12);
  EXPECT_NEAR(operator_norm(CMatrix::Identity(7, 7)), 1.0, 1e-12);
  EXPECT_EQ(hs_norm(CMatrix::Zero(3, 3)), 0.0);
  EXPECT_EQ(operator_norm(CMatrix::Zero(3, 3)), 0.0);

  Rng rng({3, 0});
  const CMatrix m = random_matrix(3, 3, rng);
  Eigen::JacobiSVD<CMatrix> svd(m);
  EXPECT_NEAR(operator_norm(m), svd.singularValues()(0), 1e-12);
  EXPECT_NEAR(hs_norm(m), svd.singularValues().norm(), 1e-12);
  EXPECT_NEAR(trace_norm(m), svd.singularValues().sum(), 1e-12);
}

TEST(Norms, OrderingOnRandomMatrices) {
  Rng rng({4, 0});
  for (int rep = 0; rep < 100; ++rep) {
    const CMatrix m = random_matrix(6, 6, rng);
    EXPECT_GE(trace_norm(m) + 1e-12, hs_norm(m));
    EXPECT_GE(hs_norm(m) + 1e-12, operator_norm(m));
  }
}

TEST(Norms, HsNormUnitarilyInvariant) {
  Rng rng({5, 0});
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix u = sample_haar_qr(8, rng);
    const CMatrix m = random_matrix(8, 8, rng);
    EXPECT_NEAR(hs_norm(u * m), hs_norm(m), 1e-10);
  }
}

TEST(Nullspace, CanonicalExamples) {
  std::vector<CVector> cols(2, CVector::Zero(3));
  cols[0](0) = 1.0;
  cols[1](1) = 1.0;
  const CVector v = nullspace_vector(cols, 3);
  EXPECT_NEAR(std::abs(v(2)), 1.0, 1e-12);
  EXPECT_NEAR(v.head(2).norm(), 0.0, 1e-12);

  const CVector first = nullspace_vector({}, 4);
  EXPECT_EQ(first, CVector::Unit(4, 0).cast<Complex>());
}

TEST(Nullspace, RandomColumnsAreOrthogonal) {
  Rng rng({6, 0});
  std::vector<CVector> cols;
  for (int i = 0; i < 5; ++i) cols.push_back(random_matrix(8, 1, rng));
  const CVector v = nullspace_vector(cols, 8);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  for (const auto& c : cols) EXPECT_LT(std::abs(c.dot(v)), 1e-10);
}

TEST(Nullspace, FullSpanThrows) {
  Rng rng({7, 0});
  std::vector<CVector> cols;
  for (int i = 0; i < 4; ++i) cols.push_back(random_matrix(4, 1, rng));
  try {
    nullspace_vector(cols, 4);
    FAIL() << "expected no_nullspace";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_nullspace);
  }
}

TEST(Nullspace, DependentColumnsStillHaveNullspace) {
  Rng rng({8, 0});
  const CVector a = random_matrix(3, 1, rng);
  const CVector b = random_matrix(3, 1, rng);
  std::vector<CVector> cols{a, b, a + b, Complex(2.0, 1.0) * a};
  const CVector v = nullspace_vector(cols, 3);
  for (const auto& c : cols) EXPECT_LT(std::abs(c.dot(v)), 1e-10);
}

}  // namespace
}  // namespace qlock
