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

#include "qlock/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlock/error.hpp"

namespace qlock {

namespace {

constexpr double kClampFloor = -1e-15;
constexpr double kSumTolerance = 1e-10;

void require_same_dim(const ProbDist& p, const ProbDist& q, const char* op) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(op) + ": distributions have dimensions " +
                    std::to_string(p.dim()) + " and " + std::to_string(q.dim()));
  }
}

}  // namespace

ProbDist::ProbDist(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::invalid_argument, "ProbDist: empty weight vector");
  }
  double total = 0.0;
  for (auto& w : weights_) {
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::invalid_argument, "ProbDist: non-finite weight");
    }
    if (w < 0.0) {
      if (w < kClampFloor) {
        throw Error(ErrorCode::invalid_argument,
                    "ProbDist: negative weight " + std::to_string(w));
      }
      w = 0.0;
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::invalid_argument,
                "ProbDist: weights sum to " + std::to_string(total));
  }
}

ProbDist ProbDist::uniform(std::size_t d) {
  return ProbDist(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

ProbDist ProbDist::point_mass(std::size_t d, std::size_t at) {
  if (at >= d) {
    throw Error(ErrorCode::index_out_of_range, "ProbDist::point_mass");
  }
  std::vector<double> w(d, 0.0);
  w[at] = 1.0;
  return ProbDist(std::move(w));
}

ProbDist ProbDist::uniform_on(std::size_t d, std::span<const std::size_t> support) {
  if (support.empty()) {
    throw Error(ErrorCode::invalid_argument, "ProbDist::uniform_on: empty support");
  }
  std::vector<double> w(d, 0.0);
  const double mass = 1.0 / static_cast<double>(support.size());
  for (auto x : support) {
    if (x >= d) {
      throw Error(ErrorCode::index_out_of_range, "ProbDist::uniform_on");
    }
    if (w[x] != 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "ProbDist::uniform_on: duplicate outcome");
    }
    w[x] = mass;
  }
  return ProbDist(std::move(w));
}

double shannon_entropy(const ProbDist& p) {
  double h = 0.0;
  for (double w : p.weights()) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return std::max(h, 0.0);
}

double kl_divergence(const ProbDist& p, const ProbDist& q) {
  require_same_dim(p, q, "kl_divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInfiniteDivergence;
    d += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double total_variation(const ProbDist& p, const ProbDist& q) {
  require_same_dim(p, q, "total_variation");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += std::abs(p[i] - q[i]);
  return std::min(0.5 * s, 1.0);
}

double fidelity(const ProbDist& p, const ProbDist& q) {
  require_same_dim(p, q, "fidelity");
  double f = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) f += std::sqrt(p[i] * q[i]);
  return std::min(f, 1.0);
}

double hellinger(const ProbDist& p, const ProbDist& q) {
  require_same_dim(p, q, "hellinger");
  // (1/sqrt 2) || sqrt p - sqrt q ||_2 equals sqrt(1 - F) but does not lose
  // all precision when p and q are close.
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double diff = std::sqrt(p[i]) - std::sqrt(q[i]);
    s += diff * diff;
  }
  return std::min(std::sqrt(0.5 * s), 1.0);
}

double min_entropy(const ProbDist& p) {
  const auto w = p.weights();
  const double mx = *std::max_element(w.begin(), w.end());
  return std::max(0.0, -std::log2(mx));
}

}  // namespace qlock
