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

#include "qlock/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qlock/parallel.hpp"

namespace qlock {

MatrixSpaceElement apply_t(const EmbeddingMap& map, const CVector& psi) {
  const auto& ens = map.ensemble();
  const auto& dims = ens.dims();
  if (static_cast<std::size_t>(psi.size()) != dims.d()) {
    throw Error(ErrorCode::dimension_mismatch, "apply_t: wrong state dimension");
  }
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  const auto da = static_cast<Eigen::Index>(dims.d_a());
  const auto t = static_cast<Eigen::Index>(ens.t());
  const double scale = 1.0 / std::sqrt(static_cast<double>(t));
  CMatrix out(db, da * t);
  for (Eigen::Index k = 0; k < t; ++k) {
    const CVector image = ens[static_cast<std::size_t>(k)] * psi;
    for (Eigen::Index a = 0; a < da; ++a) {
      out.col(a * t + k) = scale * image.segment(a * db, db);
    }
  }
  return {std::move(out)};
}

MatrixSpaceElement apply_t(const EmbeddingMap& map, const PureState& psi) {
  return apply_t(map, psi.vector());
}

double l1l2_norm(const MatrixSpaceElement& x) {
  return x.matrix.colwise().norm().sum();
}

double norm_identity_check(const EmbeddingMap& map, const PureState& psi) {
  const auto& ens = map.ensemble();
  const double y = eval_y(ens, psi);
  const double rhs = std::sqrt(static_cast<double>(ens.dims().d_a() * ens.t())) *
                     (1.0 - y * y);
  return std::abs(l1l2_norm(apply_t(map, psi)) - rhs);
}

DistortionCertificate certify_distortion(const EmbeddingMap& map,
                                         const DistortionOptions& opts,
                                         Rng& rng) {
  const auto& ens = map.ensemble();
  const auto& dims = ens.dims();
  if (dims.d_b() < 2) {
    throw Error(ErrorCode::domain_error, "certify_distortion: requires d_b >= 2");
  }
  const std::size_t n = opts.n_random_states;
  const Seed base = rng.split();
  std::vector<double> norms(n), ys(n);
  parallel_for(n, [&](std::size_t i) {
    Rng sub = Rng::substream(base, i);
    const PureState psi(sample_sphere(dims.d(), sub), dims);
    norms[i] = l1l2_norm(apply_t(map, psi));
    ys[i] = eval_y(ens, psi);
  });
  double y_sum = 0.0;
  for (double y : ys) y_sum += y;
  DistortionCertificate out;
  if (!norms.empty()) {
    out.r_hat = y_sum / static_cast<double>(norms.size());
    std::vector<double> sorted = norms;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    out.median_scale = sorted.size() % 2 == 1
                           ? sorted[mid]
                           : 0.5 * (sorted[mid - 1] + sorted[mid]);
  }

  SearchOptions up = opts.search;
  up.objective = Objective::hellinger;
  up.minimize = false;
  const auto hi = worst_case_search(ens, StateSubset::full_sphere(), up);
  out.searched_max_y = hi.objective_value;
  norms.push_back(l1l2_norm(apply_t(map, hi.worst_state)));
  out.searched_min_y = hi.objective_value;
  if (opts.search_minimum) {
    SearchOptions down = up;
    down.minimize = true;
    const auto lo = worst_case_search(ens, StateSubset::full_sphere(), down);
    out.searched_min_y = lo.objective_value;
    norms.push_back(l1l2_norm(apply_t(map, lo.worst_state)));
  }

  out.analytic_scale =
      std::sqrt(static_cast<double>(dims.d_a() * ens.t())) * (1.0 - out.r_hat * out.r_hat);
  const double scale = out.analytic_scale > 0.0 ? out.analytic_scale : 1.0;
  const auto [mn, mx] = std::minmax_element(norms.begin(), norms.end());
  out.min_ratio = *mn / scale;
  out.max_ratio = *mx / scale;
  out.distortion = map.cols() == 1 ? 1.0 : std::max(1.0, out.max_ratio / out.min_ratio);
  return out;
}

DvoretzkyDimension dvoretzky_dimension(std::size_t n, std::size_t m, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorCode::domain_error, "dvoretzky_dimension: eps must lie in (0, 1]");
  }
  const double big_n = static_cast<double>(n) * static_cast<double>(m);
  return {big_n * std::min(eps, eps * eps * static_cast<double>(m)),
          big_n * eps * eps};
}

}  // namespace qlock
