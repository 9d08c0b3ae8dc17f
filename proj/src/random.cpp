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

#include "qlock/random.hpp"

#include <cmath>

#include "qlock/divergences.hpp"

namespace qlock {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(Seed seed) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed.value),
      static_cast<std::uint32_t>(seed.value >> 32),
      static_cast<std::uint32_t>(seed.stream_id),
      static_cast<std::uint32_t>(seed.stream_id >> 32)};
  return std::mt19937_64(seq);
}

void require_positive(std::size_t d, const char* what) {
  if (d == 0) {
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + ": dimension must be at least 1");
  }
}

}  // namespace

Rng::Rng(Seed seed) : seed_(seed), engine_(make_engine(seed)) {}

Rng Rng::substream(Seed base, std::uint64_t index) {
  return Rng(Seed{base.value, mix(base.stream_id ^ mix(index + 1))});
}

Seed Rng::split() { return Seed{next_u64(), next_u64()}; }

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return uniform_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return Complex(re, im) * M_SQRT1_2;
}

std::uint64_t Rng::next_u64() { return engine_(); }

int Rng::rademacher() { return (engine_() >> 63) ? 1 : -1; }

CMatrix sample_haar_qr(std::size_t d, Rng& rng) {
  require_positive(d, "sample_haar_qr");
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix ginibre(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      ginibre(i, j) = rng.complex_normal();
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(ginibre);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mod = std::abs(rjj);
    if (mod > 0.0) q.col(j) *= rjj / mod;
  }
  return q;
}

CMatrix sample_haar_recursive(std::size_t d, Rng& rng) {
  require_positive(d, "sample_haar_recursive");
  const auto n = static_cast<Eigen::Index>(d);
  const CVector v = sample_sphere(d, rng);
  if (n == 1) {
    return CMatrix::Constant(1, 1, v(0));
  }
  // Householder completion. With v_1 = |v_1| e^{i phi} and
  // w = e^{i phi} e_1 - v, H = Id - 2 w w^dagger / ||w||^2 swaps
  // e^{i phi} e_1 and v, so M = e^{i phi} H is unitary with M e_1 = v.
  const double v1_mod = std::abs(v(0));
  const Complex phase = v1_mod > 0.0 ? v(0) / v1_mod : Complex(1.0, 0.0);
  CVector w = -v;
  w(0) += phase;
  CMatrix m;
  const double wn2 = w.squaredNorm();
  if (wn2 < 1e-300) {
    m = phase * CMatrix::Identity(n, n);
  } else {
    m = CMatrix::Identity(n, n) - (2.0 / wn2) * (w * w.adjoint());
    m *= phase;
  }
  const CMatrix inner = sample_haar_recursive(d - 1, rng);
  CMatrix out(n, n);
  out.col(0) = m.col(0);
  out.rightCols(n - 1).noalias() = m.rightCols(n - 1) * inner;
  return out;
}

CVector sample_sphere(std::size_t d, Rng& rng) {
  require_positive(d, "sample_sphere");
  CVector g(static_cast<Eigen::Index>(d));
  double n2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.complex_normal();
    n2 = g.squaredNorm();
  } while (n2 == 0.0);
  return g / std::sqrt(n2);
}

ProbDist sample_simplex(std::size_t d, Rng& rng) {
  const CVector psi = sample_sphere(d, rng);
  std::vector<double> w(d);
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    w[i] = std::norm(psi(static_cast<Eigen::Index>(i)));
    total += w[i];
  }
  for (auto& x : w) x /= total;
  return ProbDist(std::move(w));
}

CVector sample_gaussian_state(std::size_t d, Rng& rng) {
  require_positive(d, "sample_gaussian_state");
  CVector g(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.complex_normal();
  return g;
}

}  // namespace qlock
