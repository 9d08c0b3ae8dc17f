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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits with a
// nonzero status if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qlock/bounds.hpp"
#include "qlock/divergences.hpp"
#include "qlock/embedding.hpp"
#include "qlock/experiment.hpp"
#include "qlock/locking.hpp"
#include "qlock/parallel.hpp"
#include "qlock/uncertainty.hpp"
#include "support/stats.hpp"

namespace {

using namespace qlock;
using testing::mean_se;
using testing::median;

// Pinned tolerances.
constexpr double kDivergenceSlack = 1e-12;
constexpr double kSigmas = 3.0;
constexpr double kKsLevel = 0.01;
constexpr double kGridTolerance = 1e-3;
constexpr double kClosedFormTolerance = 1e-4;
constexpr double kLipschitzSlack = 1e-9;
constexpr double kIdentificationTolerance = 1e-9;
constexpr double kPosteriorTolerance = 1e-10;
constexpr double kChainSlack = 1e-6;
constexpr double kKeyLengthTolerance = 1e-3;
constexpr double kPovmTol = 1e-9;
constexpr double kWidthExactTolerance = 1e-10;
constexpr double kWidthRelativeTolerance = 0.10;
constexpr double kHsTolerance = 1e-9;
constexpr double kNormIdentityTolerance = 1e-9;
constexpr double kIsometryTolerance = 1e-12;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

SearchOptions search(std::uint64_t seed, int restarts, int iterations) {
  SearchOptions o;
  o.restarts = restarts;
  o.max_iterations = iterations;
  o.seed = {seed, 17};
  return o;
}

CMatrix cayley(std::size_t d, double eps, Rng& rng) {
  CMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) h(i, j) = rng.complex_normal();
  }
  h = (h + h.adjoint()).eval() * 0.5;
  const CMatrix id = CMatrix::Identity(d, d);
  const Complex z(0.0, 0.5 * eps);
  return (id - z * h).lu().solve(id + z * h);
}

void c1_divergences(Outcome& o) {
  Rng rng({101, 0});
  std::size_t checked = 0;
  double worst_identity = 0.0;
  for (std::size_t d : {2u, 4u, 16u, 64u}) {
    for (int i = 0; i < 10000; ++i) {
      const ProbDist p = sample_simplex(d, rng);
      const ProbDist q = sample_simplex(d, rng);
      const double h = hellinger(p, q);
      const double tv = total_variation(p, q);
      const double f = fidelity(p, q);
      o.require(h * h <= tv + kDivergenceSlack, "D_H^2 <= D_TV");
      o.require(tv <= std::sqrt(2.0) * h + kDivergenceSlack, "D_TV <= sqrt2 D_H");
      worst_identity = std::max(worst_identity, std::abs(h - std::sqrt(std::max(0.0, 1.0 - f))));
      ++checked;
    }
  }
  o.require(worst_identity <= kDivergenceSlack, "D_H = sqrt(1 - F)");
  o.detail << checked << " pairs, max |D_H - sqrt(1-F)| = " << worst_identity;
}

void c2_simplex(Outcome& o) {
  Rng rng({102, 0});
  o.require(std::abs(simplex_moments(2).variance - 1.0 / 12.0) < 1e-15, "d=2 variance 1/12");
  for (std::size_t d : {2u, 8u, 32u}) {
    const auto m = simplex_moments(d);
    const std::size_t n = 100000;
    std::vector<double> x0(n), sq(n), cross(n);
    for (std::size_t i = 0; i < n; ++i) {
      const ProbDist p = sample_simplex(d, rng);
      x0[i] = p[0];
      sq[i] = (p[0] - m.mean) * (p[0] - m.mean);
      cross[i] = (p[0] - m.mean) * (p[1] - m.mean);
    }
    const auto a = mean_se(x0), b = mean_se(sq), c = mean_se(cross);
    const double za = std::abs(a.mean - m.mean) / a.se;
    const double zb = std::abs(b.mean - m.variance) / b.se;
    const double zc = std::abs(c.mean - m.covariance) / c.se;
    o.require(za < kSigmas && zb < kSigmas && zc < kSigmas, "moments within 3 SE at d=" +
                                                                std::to_string(d));
    o.detail << "d=" << d << " z=(" << za << "," << zb << "," << zc << ") ";
  }
}

void c3_haar(Outcome& o) {
  const std::size_t d = 6, n = 100000;
  Rng rng({103, 0});
  std::vector<double> qr(n), rec(n);
  for (auto& x : qr) x = std::norm(sample_haar_qr(d, rng)(0, 0));
  for (auto& x : rec) x = std::norm(sample_haar_recursive(d, rng)(0, 0));
  auto cdf = [](double x) { return testing::beta_1_cdf(x, 6); };
  const double p_qr = testing::ks_one_sample_pvalue(qr, cdf);
  const double p_rec = testing::ks_one_sample_pvalue(rec, cdf);
  const double p_two = testing::ks_two_sample_pvalue(qr, rec);
  o.require(p_qr > kKsLevel, "QR sampler vs Beta(1,5)");
  o.require(p_rec > kKsLevel, "recursive sampler vs Beta(1,5)");
  o.require(p_two > kKsLevel, "two-sample agreement");
  o.detail << "KS p: qr=" << p_qr << " recursive=" << p_rec << " two-sample=" << p_two;
}

void c4_mean_fidelity(Outcome& o) {
  Rng rng({104, 0});
  for (std::size_t db : {4u, 16u, 64u}) {
    const auto r = estimate_r(BipartiteDims(8, db), 4, 1000, rng);
    const double f_bound = std::sqrt(1.0 - 1.0 / db);
    const double r_bound = 1.0 / std::sqrt(static_cast<double>(db));
    o.require(r.mean_fidelity >= f_bound - kSigmas * r.se_fidelity,
              "E F bound at d_b=" + std::to_string(db));
    o.require(r.mean_y <= r_bound + kSigmas * r.se_y, "R bound at d_b=" + std::to_string(db));
    o.detail << "d_b=" << db << " EF=" << r.mean_fidelity << ">=" << f_bound
             << " R=" << r.mean_y << "<=" << r_bound << "; ";
  }
}

void c5_search_oracles(Outcome& o) {
  Rng rng({105, 0});
  const BipartiteDims qubit(2, 1);
  const auto ens = UnitaryEnsemble::haar(qubit, 1, rng);
  double grid = 0.0;
  // Y has a kink at its maximum, so the grid has to be fine.
  for (int i = 0; i < 1001; ++i) {
    for (int j = 0; j < 2000; ++j) {
      const double theta = M_PI * i / 1000.0;
      const double phi = 2.0 * M_PI * j / 2000.0;
      CVector v(2);
      v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
      grid = std::max(grid, eval_y(ens, PureState(v, qubit)));
    }
  }
  const double found =
      worst_case_search(ens, StateSubset::full_sphere(), search(5, 8, 2000)).objective_value;
  o.require(std::abs(found - grid) <= kGridTolerance, "grid oracle");
  o.detail << "grid=" << grid << " search=" << found << "; ";
  for (std::size_t da : {2u, 4u, 8u}) {
    const auto e = UnitaryEnsemble::haar(BipartiteDims(da, 1), 1, rng);
    const double v =
        worst_case_search(e, StateSubset::full_sphere(), search(da, 8, 2000)).objective_value;
    const double exact = std::sqrt(1.0 - 1.0 / std::sqrt(static_cast<double>(da)));
    o.require(std::abs(v - exact) <= kClosedFormTolerance,
              "closed form at d_a=" + std::to_string(da));
    o.detail << "d_a=" << da << " gap=" << exact - v << " ";
  }
}

void c6_fur_scaling(Outcome& o) {
  std::vector<double> medians;
  for (std::size_t m : {4u, 16u, 64u}) {
    std::vector<double> eps;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng({600 + seed, m});
      const auto ens = UnitaryEnsemble::haar(BipartiteDims(16, m), m, rng);
      const double y =
          worst_case_search(ens, StateSubset::full_sphere(), search(seed, 3, 30)).objective_value;
      eps.push_back(y * y);
    }
    medians.push_back(median(eps));
    o.detail << "d_b=t=" << m << " median eps=" << medians.back() << "; ";
  }
  o.require(medians[0] > medians[1] && medians[1] > medians[2], "strictly decreasing medians");
}

void c7_lipschitz(Outcome& o) {
  Rng rng({107, 0});
  const BipartiteDims dims(2, 2);
  for (std::size_t t : {1u, 4u}) {
    double worst = 0.0;
    const double bound = 1.0 / std::sqrt(2.0 * t);
    for (int pair = 0; pair < 1000; ++pair) {
      const auto e1 = UnitaryEnsemble::haar(dims, t, rng);
      std::vector<CMatrix> second;
      for (std::size_t k = 0; k < t; ++k) {
        // Half of the pairs are independent, half are small perturbations.
        second.push_back(pair % 2 == 0 ? sample_haar_qr(4, rng)
                                       : CMatrix(e1[k] * cayley(4, 0.05, rng)));
      }
      const UnitaryEnsemble e2(second, dims);
      const auto r = lipschitz_check(e1, e2, 10, rng);
      worst = std::max(worst, r.ratio);
    }
    o.require(worst <= bound + kLipschitzSlack, "ratio bound at t=" + std::to_string(t));
    o.detail << "t=" << t << " max ratio=" << worst << " <= " << bound << "; ";
  }
}

void c8_locking_identities(Outcome& o) {
  Rng rng({108, 0});
  const LockingScheme big(UnitaryEnsemble::haar(BipartiteDims(8, 4), 2, rng), 3);
  const LockingScheme small(UnitaryEnsemble::haar(BipartiteDims(4, 2), 2, rng), 2);
  const double dev = std::max(identification_check(big), identification_check(small));
  o.require(dev < kIdentificationTolerance, "identification");
  double worst = 0.0;
  const ProbDist prior({0.1, 0.2, 0.3, 0.4});
  for (int i = 0; i < 100; ++i) {
    const RankOneEffect eff(0.5, sample_sphere(8, rng));
    const ProbDist post = posterior(small, prior, eff);
    const CMatrix m = eff.matrix();
    std::vector<double> joint(4, 0.0);
    double total = 0.0;
    for (std::size_t x = 0; x < 4; ++x) {
      for (std::size_t k = 0; k < 2; ++k) {
        const double p = prior[x] * 0.5 * (m * encode(small, x, k)).trace().real();
        joint[x] += p;
        total += p;
      }
    }
    for (std::size_t x = 0; x < 4; ++x) worst = std::max(worst, std::abs(post[x] - joint[x] / total));
  }
  o.require(worst < kPosteriorTolerance, "posterior oracle");
  const LockingScheme one(UnitaryEnsemble::haar(BipartiteDims(4, 2), 1, rng), 2);
  const CVector unlock = one.support_basis(2, 0).col(1);
  const ProbDist post = posterior(one, ProbDist::uniform(4), RankOneEffect(1.0, unlock));
  o.require(std::abs(post[2] - 1.0) < kPosteriorTolerance, "known-key unlock");
  o.detail << "identification dev=" << dev << " posterior err=" << worst
           << " unlock mass=" << post[2];
}

void c9_locking_chain(Outcome& o) {
  Rng rng({109, 0});
  const LockingScheme s(UnitaryEnsemble::haar(BipartiteDims(16, 16), 16, rng), 4);
  std::vector<RankOneEffect> effects;
  for (int i = 0; i < 200; ++i) effects.emplace_back(1.0, sample_sphere(256, rng));
  const auto v = verify_locking(s, ProbDist::uniform(16), effects);
  const double y =
      worst_case_search(s.ensemble(), StateSubset::full_sphere(), search(9, 4, 200)).objective_value;
  o.require(v.max_hellinger <= std::sqrt(2.0) * y + kChainSlack, "chain bound");
  o.detail << "max posterior D_H=" << v.max_hellinger << " <= sqrt2*Y=" << std::sqrt(2.0) * y;
}

void c10_key_length(Outcome& o) {
  for (int n : {2, 8, 32, 64}) {
    const double expected = std::log2(1.0 / (2.0 * 0.01 + std::exp2(1.0 - n / 2.0)));
    o.require(std::abs(key_length_lower_bound(0.1, n) - expected) < 1e-12,
              "formula at n=" + std::to_string(n));
  }
  const double limit = key_length_lower_bound(0.1, 4000);
  o.require(std::abs(limit - 5.644) < kKeyLengthTolerance, "limit value");
  o.detail << "n->inf value=" << limit << " bits";
}

void c11_adversary(Outcome& o) {
  int failures = 0;
  double worst_residual = 0.0, worst_id = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng({1100 + seed, 0});
    const LockingScheme s(UnitaryEnsemble::haar(BipartiteDims(8, 2), 2, rng), 3);
    const std::vector<std::size_t> support{0, 1};
    try {
      const auto povm = build_adversarial_povm(s, support);
      const auto report = validate_povm(povm.to_povm());
      const auto outcome = adversary_identification(s, povm);
      worst_residual = std::max(worst_residual, report.completeness_residual);
      worst_id = std::min(worst_id, outcome.min_identification);
      if (!report.valid || report.min_eigenvalue < -kPovmTol ||
          std::abs(outcome.min_identification - 1.0) > kPovmTol) {
        ++failures;
      }
    } catch (const Error&) {
      ++failures;
    }
  }
  o.require(failures == 0, "all seeds succeed");
  o.detail << "20 seeds, failures=" << failures << " max residual=" << worst_residual
           << " min P(X=x,K=k|I=(x,k))=" << worst_id;
}

void c12_separable_width(Outcome& o) {
  Rng rng({112, 0});
  const BipartiteDims dims(64, 64);
  double worst = 0.0;
  std::vector<double> widths;
  for (int i = 0; i < 1000; ++i) {
    const CVector g = sample_gaussian_state(dims.d(), rng);
    const double w = separable_width_exact(g, dims);
    widths.push_back(w);
    if (i < 20) {
      const CMatrix m = reshape_ab(g, dims);
      Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const CVector prod = tensor(svd.matrixU().col(0), svd.matrixV().col(0).conjugate());
      worst = std::max({worst, std::abs(w - svd.singularValues()(0)),
                        std::abs(w - prod.dot(g).real())});
    }
  }
  const double mean = mean_se(widths).mean;
  o.require(worst <= kWidthExactTolerance, "exact identity");
  o.require(std::abs(mean / 16.0 - 1.0) <= kWidthRelativeTolerance, "order sqrt(d_a)+sqrt(d_b)");
  o.detail << "exact err=" << worst << " mean width=" << mean << " vs 16";
}

void c13_khintchine(Outcome& o) {
  Rng rng({113, 0});
  double hs_err = 0.0;
  for (auto [da, db] : {std::pair<std::size_t, std::size_t>{4, 3}, {2, 5}, {8, 2}}) {
    const auto ens = UnitaryEnsemble::haar(BipartiteDims(da, db), 2, rng);
    const auto d = static_cast<Eigen::Index>(da * db);
    for (std::size_t a = 0; a < da; ++a) {
      const CMatrix c = projector_a(ens, 1, a) - CMatrix::Identity(d, d) / double(da);
      hs_err = std::max(hs_err, std::abs(std::pow(hs_norm(c), 2) -
                                         hs_centered_projector_norm(da, db)));
    }
  }
  o.require(hs_err <= kHsTolerance, "HS identity");
  for (std::size_t da : {2u, 3u, 4u, 8u}) {
    for (std::size_t db : {1u, 2u, 8u}) {
      for (std::size_t t : {1u, 2u, 4u, 8u}) {
        const auto ens = UnitaryEnsemble::haar(BipartiteDims(da, db), t, rng);
        const auto r = khintchine_t_bound(ens, 8, rng);
        o.require(r.analytic_bound >= 1.0 / (2.0 * std::sqrt(2.0 * t)) - 1e-12, "analytic grid");
      }
    }
  }
  double worst_z = 0.0;
  for (auto [da, db, t] : {std::tuple<std::size_t, std::size_t, std::size_t>{4, 2, 3},
                           {2, 3, 5},
                           {5, 1, 4},
                           {10, 2, 2}}) {
    const auto ens = UnitaryEnsemble::haar(BipartiteDims(da, db), t, rng);
    const auto r = khintchine_t_bound(ens, 4096, rng);
    if (!r.exact) {
      o.require(false, "exact enumeration available");
      continue;
    }
    const double z = std::abs(r.mc_estimate - *r.exact) / r.mc_se;
    worst_z = std::max(worst_z, z);
    o.require(z < kSigmas, "exact vs Monte Carlo");
  }
  o.detail << "HS err=" << hs_err << " max |MC-exact|/SE=" << worst_z;
}

void c14_embedding(Outcome& o) {
  Rng rng({114, 0});
  double identity = 0.0, isometry = 0.0;
  for (int i = 0; i < 100; ++i) {
    const BipartiteDims dims(2 + i % 7, 1 + i % 5);
    const EmbeddingMap map(UnitaryEnsemble::haar(dims, 1 + i % 4, rng));
    const PureState psi(sample_sphere(dims.d(), rng), dims);
    identity = std::max(identity, norm_identity_check(map, psi));
    isometry = std::max(isometry, std::abs(apply_t(map, psi).matrix.norm() - 1.0));
  }
  o.require(identity < kNormIdentityTolerance, "norm identity");
  o.require(isometry < kIsometryTolerance, "Frobenius isometry");
  std::vector<double> medians;
  bool all_at_least_one = true;
  for (auto [db, t] : {std::pair<std::size_t, std::size_t>{4, 2}, {16, 4}, {64, 16}}) {
    std::vector<double> dist;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng r({1400 + seed, db});
      const EmbeddingMap map(UnitaryEnsemble::haar(BipartiteDims(16, db), t, r));
      DistortionOptions opts;
      opts.n_random_states = 20;
      opts.search = search(seed, 2, 20);
      const auto cert = certify_distortion(map, opts, r);
      all_at_least_one = all_at_least_one && cert.distortion >= 1.0;
      dist.push_back(cert.distortion);
    }
    medians.push_back(median(dist));
    o.detail << "(d_b,t)=(" << db << "," << t << ") median distortion=" << medians.back() << "; ";
  }
  o.require(all_at_least_one, "distortion >= 1");
  o.require(medians[0] > medians[1] && medians[1] > medians[2], "decreasing distortion");
  o.detail << "identity residual=" << identity << " isometry residual=" << isometry;
}

void c15_determinism(Outcome& o) {
  const std::vector<std::string> configs = {
      R"({"experiment": "worst_case", "dims": [8, 8], "t": 4, "seed": 3, "search": {"restarts": 4, "max_iterations": 60}})",
      R"({"experiment": "uncertainty", "dims": [8, 4], "t": 4, "trials": 200, "seed": 4})",
      R"({"experiment": "bounds", "dims": [4, 2], "t": 3, "eps": 0.1, "trials": 500, "seed": 5})",
      R"({"experiment": "embedding", "dims": [4, 4], "t": 4, "eps": 0.1, "trials": 30, "seed": 6, "search": {"restarts": 2, "max_iterations": 30}})",
      R"({"experiment": "locking", "dims": [8, 4], "t": 4, "eps": 0.1, "trials": 50, "seed": 7, "search": {"restarts": 2, "max_iterations": 30}})",
      R"({"experiment": "moments", "dims": [4, 2], "trials": 500, "seed": 8})",
  };
  const int saved = num_threads();
  int identical = 0;
  for (const auto& text : configs) {
    const auto cfg = parse_config(nlohmann::json::parse(text));
    std::vector<std::string> dumps;
    for (int threads : {1, 2, 4}) {
      set_num_threads(threads);
      dumps.push_back(report_to_json(run(cfg))["results"].dump());
    }
    const bool same = dumps[0] == dumps[1] && dumps[1] == dumps[2];
    identical += same;
    o.require(same, "bit-identical results for " + std::string(to_string(cfg.experiment)));
  }
  set_num_threads(saved);
  o.detail << identical << "/" << configs.size() << " experiments identical across 1/2/4 threads";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"divergence inequality suite", c1_divergences},
      {"simplex moments", c2_simplex},
      {"Haar sampler cross-validation", c3_haar},
      {"mean fidelity and R bounds", c4_mean_fidelity},
      {"worst-case search oracles", c5_search_oracles},
      {"fidelity uncertainty scaling", c6_fur_scaling},
      {"Lipschitz inequality", c7_lipschitz},
      {"locking identities", c8_locking_identities},
      {"locking bound consistency", c9_locking_chain},
      {"key-length formula", c10_key_length},
      {"adversarial POVM", c11_adversary},
      {"separable width", c12_separable_width},
      {"Khintchine machinery", c13_khintchine},
      {"embedding identity and distortion", c14_embedding},
      {"determinism across thread counts", c15_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s  %2zu  %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
