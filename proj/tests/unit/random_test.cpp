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

#include <cmath>
#include <vector>

#include "qlock/divergences.hpp"
#include "qlock/random.hpp"
#include "support/stats.hpp"

namespace qlock {
namespace {

using testing::mean_se;

TEST(Rng, SameSeedSameSequence) {
  Rng a({42, 7});
  Rng b({42, 7});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  const CMatrix u1 = sample_haar_qr(5, a);
  const CMatrix u2 = sample_haar_qr(5, b);
  EXPECT_EQ(u1, u2);
}

TEST(Rng, StreamsDiffer) {
  Rng a({42, 0});
  Rng b({42, 1});
  EXPECT_NE(a.next_u64(), b.next_u64());
  Rng s0 = Rng::substream({1, 0}, 0);
  Rng s1 = Rng::substream({1, 0}, 1);
  EXPECT_NE(s0.next_u64(), s1.next_u64());
  Rng r0 = Rng::substream({1, 0}, 3);
  Rng r1 = Rng::substream({1, 0}, 3);
  EXPECT_EQ(r0.next_u64(), r1.next_u64());
}

TEST(Haar, DimensionOneIsPhase) {
  Rng rng({1, 0});
  for (int i = 0; i < 10; ++i) {
    EXPECT_NEAR(std::abs(sample_haar_qr(1, rng)(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(sample_haar_recursive(1, rng)(0, 0)), 1.0, 1e-12);
  }
}

TEST(Haar, ZeroDimensionThrows) {
  Rng rng({1, 0});
  EXPECT_THROW(sample_haar_qr(0, rng), Error);
  EXPECT_THROW(sample_haar_recursive(0, rng), Error);
  EXPECT_THROW(sample_sphere(0, rng), Error);
  EXPECT_THROW(sample_simplex(0, rng), Error);
  EXPECT_THROW(sample_gaussian_state(0, rng), Error);
}

TEST(Haar, Unitarity) {
  Rng rng({2, 0});
  for (std::size_t d : {2u, 4u, 7u, 16u, 33u}) {
    EXPECT_LT(unitarity_residual(sample_haar_qr(d, rng)), 1e-10);
    EXPECT_LT(unitarity_residual(sample_haar_recursive(d, rng)), 1e-10);
  }
}

TEST(Haar, FirstEntrySecondMoment) {
  Rng rng({3, 0});
  std::vector<double> xs(20000);
  for (auto& x : xs) x = std::norm(sample_haar_qr(8, rng)(0, 0));
  const auto m = mean_se(xs);
  EXPECT_LT(std::abs(m.mean - 1.0 / 8.0), 3.0 * m.se);
}

TEST(Haar, RecursiveSamplerFollowsBetaLaw) {
  Rng rng({4, 0});
  const std::size_t d = 6;
  std::vector<double> xs(20000);
  for (auto& x : xs) x = std::norm(sample_haar_recursive(d, rng)(0, 0));
  EXPECT_GT(testing::ks_one_sample_pvalue(xs, [](double x) { return testing::beta_1_cdf(x, 6); }),
            0.01);
}

TEST(Haar, SamplersAgreeOnTraceDistribution) {
  Rng rng({5, 0});
  const std::size_t d = 5;
  std::vector<double> a(10000), b(10000);
  for (auto& x : a) x = sample_haar_qr(d, rng).trace().real();
  for (auto& x : b) x = sample_haar_recursive(d, rng).trace().real();
  EXPECT_GT(testing::ks_two_sample_pvalue(a, b), 0.01);
}

TEST(Haar, UncorrectedQrWouldFailPhaseTest) {
  Rng rng({6, 0});
  // E[U_00] = 0 under Haar; Householder QR without correction is biased.
  std::vector<double> re(20000);
  for (auto& x : re) x = sample_haar_qr(3, rng)(0, 0).real();
  const auto m = mean_se(re);
  EXPECT_LT(std::abs(m.mean), 3.0 * m.se);
}

TEST(Haar, LeftInvariance) {
  Rng rng({7, 0});
  const std::size_t d = 4;
  CMatrix v = CMatrix::Zero(4, 4);
  v(0, 1) = 1.0;
  v(1, 0) = Complex(0.0, 1.0);
  v(2, 3) = 1.0;
  v(3, 2) = -1.0;
  std::vector<double> plain(20000), rotated(20000);
  for (std::size_t i = 0; i < plain.size(); ++i) {
    plain[i] = std::norm(sample_haar_qr(d, rng)(0, 0));
    rotated[i] = std::norm((v * sample_haar_qr(d, rng))(0, 0));
  }
  const auto p = mean_se(plain);
  const auto r = mean_se(rotated);
  EXPECT_LT(std::abs(p.mean - r.mean), 3.0 * std::hypot(p.se, r.se));
}

TEST(Sphere, UnitNormAndCoordinateMoments) {
  Rng rng({8, 0});
  EXPECT_NEAR(std::abs(sample_sphere(1, rng)(0)), 1.0, 1e-12);
  const std::size_t d = 5;
  std::vector<double> c0(20000);
  for (auto& x : c0) {
    const CVector v = sample_sphere(d, rng);
    ASSERT_NEAR(v.norm(), 1.0, 1e-12);
    x = std::norm(v(3));
  }
  const auto m = mean_se(c0);
  EXPECT_LT(std::abs(m.mean - 1.0 / d), 3.0 * m.se);
}

TEST(Simplex, ShapeAndUniformMarginalAtDimensionTwo) {
  Rng rng({9, 0});
  const ProbDist one = sample_simplex(1, rng);
  EXPECT_EQ(one.dim(), 1u);
  EXPECT_NEAR(one[0], 1.0, 1e-15);
  std::vector<double> sq(50000);
  for (auto& x : sq) {
    const ProbDist p = sample_simplex(2, rng);
    ASSERT_NEAR(p[0] + p[1], 1.0, 1e-12);
    x = (p[0] - 0.5) * (p[0] - 0.5);
  }
  const auto m = mean_se(sq);
  EXPECT_LT(std::abs(m.mean - 1.0 / 12.0), 3.0 * m.se);
}

TEST(Gaussian, NormalizationAndProjection) {
  Rng rng({10, 0});
  const std::size_t d = 16;
  const CVector psi = sample_sphere(d, rng);
  std::vector<double> norms(20000), proj(20000), re0(20000);
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const CVector g = sample_gaussian_state(d, rng);
    norms[i] = g.squaredNorm();
    proj[i] = std::sqrt(2.0) * psi.dot(g).real();
    re0[i] = g(0).real();
  }
  const auto n = mean_se(norms);
  EXPECT_LT(std::abs(n.mean - 16.0), 3.0 * n.se);
  const auto z = mean_se(re0);
  EXPECT_LT(std::abs(z.mean), 3.0 * z.se);
  EXPECT_GT(testing::ks_one_sample_pvalue(proj, testing::normal_cdf), 0.01);
}

}  // namespace
}  // namespace qlock
