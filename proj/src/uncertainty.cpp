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

#include "qlock/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qlock/divergences.hpp"
#include "qlock/parallel.hpp"

namespace qlock {

namespace {

constexpr double kUnitaryTolerance = 1e-9;
constexpr double kSqrtRegularizer = 1e-12;
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 4.0;

void require_compatible(const UnitaryEnsemble& ens, const PureState& psi,
                        const char* op) {
  if (!(ens.dims() == psi.dims())) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(op) + ": state and ensemble dimensions differ");
  }
}

ProbDist normalized_marginal(const CVector& v, const BipartiteDims& dims) {
  std::vector<double> p(dims.d_a());
  block_marginal(v, dims, p);
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return ProbDist(std::move(p));
}

double y_from_marginals(std::span<const ProbDist> marginals) {
  const auto unif = ProbDist::uniform(marginals.front().dim());
  double s = 0.0;
  for (const auto& p : marginals) {
    const double h = hellinger(p, unif);
    s += h * h;
  }
  return std::sqrt(s / static_cast<double>(marginals.size()));
}

double y_of_images(std::span<const CVector> images, const BipartiteDims& dims) {
  std::vector<ProbDist> m;
  m.reserve(images.size());
  for (const auto& v : images) m.push_back(normalized_marginal(v, dims));
  return y_from_marginals(m);
}

double mean_fidelity_of_images(std::span<const CVector> images,
                               const BipartiteDims& dims) {
  const auto unif = ProbDist::uniform(dims.d_a());
  double s = 0.0;
  for (const auto& v : images) s += fidelity(normalized_marginal(v, dims), unif);
  return s / static_cast<double>(images.size());
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs) {
  const auto n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= (n - 1.0);
  return {m, std::sqrt(v / n)};
}

/// Haar-random orthonormal frame of `count` vectors (Gram-Schmidt of
/// complex Gaussian vectors).
std::vector<CVector> haar_frame(std::size_t d, std::size_t count, Rng& rng) {
  std::vector<CVector> frame;
  frame.reserve(count);
  while (frame.size() < count) {
    CVector g = sample_gaussian_state(d, rng);
    for (const auto& f : frame) g -= f.dot(g) * f;
    for (const auto& f : frame) g -= f.dot(g) * f;
    const double n = g.norm();
    if (n > 1e-12) frame.push_back(g / n);
  }
  return frame;
}

CVector retract(const CVector& x) { return x / x.norm(); }

}  // namespace

// ---------------------------------------------------------------------------
// UnitaryEnsemble

UnitaryEnsemble::UnitaryEnsemble(std::vector<CMatrix> unitaries,
                                 BipartiteDims dims)
    : unitaries_(std::move(unitaries)), dims_(dims) {
  if (unitaries_.empty()) {
    throw Error(ErrorCode::invalid_argument,
                "UnitaryEnsemble: at least one unitary is required");
  }
  const auto d = static_cast<Eigen::Index>(dims_.d());
  for (const auto& u : unitaries_) {
    if (u.rows() != d || u.cols() != d) {
      throw Error(ErrorCode::dimension_mismatch,
                  "UnitaryEnsemble: member is not d x d");
    }
    if (!u.allFinite() || unitarity_residual(u) > kUnitaryTolerance) {
      throw Error(ErrorCode::invalid_argument,
                  "UnitaryEnsemble: member is not unitary");
    }
  }
}

UnitaryEnsemble::UnitaryEnsemble(Trusted, std::vector<CMatrix> unitaries,
                                 BipartiteDims dims)
    : unitaries_(std::move(unitaries)), dims_(dims) {}

UnitaryEnsemble UnitaryEnsemble::haar(BipartiteDims dims, std::size_t t,
                                      Rng& rng) {
  if (t == 0) {
    throw Error(ErrorCode::invalid_argument, "UnitaryEnsemble::haar: t = 0");
  }
  const Seed base = rng.split();
  std::vector<CMatrix> us(t);
  parallel_for(t, [&](std::size_t k) {
    Rng sub = Rng::substream(base, k);
    us[k] = sample_haar_qr(dims.d(), sub);
  });
  return UnitaryEnsemble(Trusted{}, std::move(us), dims);
}

UnitaryEnsemble UnitaryEnsemble::identity(BipartiteDims dims, std::size_t t) {
  const auto d = static_cast<Eigen::Index>(dims.d());
  return UnitaryEnsemble(
      std::vector<CMatrix>(t, CMatrix::Identity(d, d)), dims);
}

// ---------------------------------------------------------------------------
// Functionals

std::vector<ProbDist> ensemble_marginals(const UnitaryEnsemble& ens,
                                         const PureState& psi) {
  require_compatible(ens, psi, "ensemble_marginals");
  std::vector<ProbDist> out;
  out.reserve(ens.t());
  for (const auto& u : ens.unitaries()) {
    out.push_back(normalized_marginal(u * psi.vector(), ens.dims()));
  }
  return out;
}

double eval_y(const UnitaryEnsemble& ens, const PureState& psi) {
  return y_from_marginals(ensemble_marginals(ens, psi));
}

double eval_fidelity_uncertainty(const UnitaryEnsemble& ens,
                                 const PureState& psi) {
  const auto ms = ensemble_marginals(ens, psi);
  const auto unif = ProbDist::uniform(ens.dims().d_a());
  double s = 0.0;
  for (const auto& p : ms) s += fidelity(p, unif);
  return s / static_cast<double>(ms.size());
}

double eval_metric_uncertainty(const UnitaryEnsemble& ens,
                               const PureState& psi) {
  const auto ms = ensemble_marginals(ens, psi);
  const auto unif = ProbDist::uniform(ens.dims().d_a());
  double s = 0.0;
  for (const auto& p : ms) s += total_variation(p, unif);
  return s / static_cast<double>(ms.size());
}

double eval_entropic_uncertainty(const UnitaryEnsemble& ens,
                                 const PureState& psi) {
  const auto ms = ensemble_marginals(ens, psi);
  double s = 0.0;
  for (const auto& p : ms) s += shannon_entropy(p);
  return s / static_cast<double>(ms.size());
}

// ---------------------------------------------------------------------------
// R estimation and increments

REstimate estimate_r(BipartiteDims dims, std::size_t t, std::size_t trials,
                     Rng& rng, std::optional<PureState> reference,
                     EnsembleSampling sampling) {
  if (trials < 2) {
    throw Error(ErrorCode::invalid_argument, "estimate_r: trials must be >= 2");
  }
  if (t == 0) {
    throw Error(ErrorCode::invalid_argument, "estimate_r: t must be >= 1");
  }
  const PureState ref = reference ? *reference : PureState::basis(dims, 0, 0);
  if (!(ref.dims() == dims)) {
    throw Error(ErrorCode::dimension_mismatch,
                "estimate_r: reference state has wrong dimensions");
  }
  const Seed base = rng.split();
  std::vector<double> ys(trials), fs(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng sub = Rng::substream(base, i);
    std::vector<CVector> images;
    images.reserve(t);
    for (std::size_t k = 0; k < t; ++k) {
      if (sampling == EnsembleSampling::orbit) {
        images.push_back(sample_sphere(dims.d(), sub));
      } else {
        images.push_back(sample_haar_qr(dims.d(), sub) * ref.vector());
      }
    }
    ys[i] = y_of_images(images, dims);
    fs[i] = mean_fidelity_of_images(images, dims);
  });
  const MeanSe y = mean_se(ys);
  const MeanSe f = mean_se(fs);
  return {y.mean, y.se, f.mean, f.se, trials};
}

IncrementDiagnostic increment_diagnostic(BipartiteDims dims, std::size_t t,
                                         const PureState& psi,
                                         const PureState& phi,
                                         std::size_t trials, Rng& rng,
                                         EnsembleSampling sampling) {
  if (!(psi.dims() == dims) || !(phi.dims() == dims)) {
    throw Error(ErrorCode::dimension_mismatch,
                "increment_diagnostic: state dimensions differ");
  }
  if (trials < 2 || t == 0) {
    throw Error(ErrorCode::invalid_argument,
                "increment_diagnostic: need t >= 1 and trials >= 2");
  }
  // Coordinates of phi in the frame (psi, u2): phi = c1 psi + c2 u2.
  const Complex c1 = psi.vector().dot(phi.vector());
  const CVector rest = phi.vector() - c1 * psi.vector();
  const double c2 = rest.norm();
  const bool collinear = c2 < 1e-14;

  const Seed base = rng.split();
  std::vector<double> inc(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng sub = Rng::substream(base, i);
    std::vector<CVector> img_psi, img_phi;
    for (std::size_t k = 0; k < t; ++k) {
      if (sampling == EnsembleSampling::orbit) {
        const auto frame = haar_frame(dims.d(), collinear ? 1 : 2, sub);
        img_psi.push_back(frame[0]);
        img_phi.push_back(collinear ? CVector(c1 * frame[0])
                                    : CVector(c1 * frame[0] + c2 * frame[1]));
      } else {
        const CMatrix u = sample_haar_qr(dims.d(), sub);
        img_psi.push_back(u * psi.vector());
        img_phi.push_back(u * phi.vector());
      }
    }
    inc[i] = y_of_images(img_psi, dims) - y_of_images(img_phi, dims);
  });

  IncrementDiagnostic out;
  out.trials = trials;
  out.distance = (psi.vector() - phi.vector()).norm();
  out.predicted_sigma =
      out.distance / std::sqrt(static_cast<double>(t * dims.d()));
  const MeanSe ms = mean_se(inc);
  out.mean_increment = ms.mean;
  out.std_increment = ms.se * std::sqrt(static_cast<double>(trials));
  out.ratio = out.predicted_sigma > 0.0 ? out.std_increment / out.predicted_sigma
                                        : 0.0;
  for (int u = 1; u <= 3; ++u) {
    std::size_t hits = 0;
    if (out.predicted_sigma > 0.0) {
      for (double x : inc) {
        if (std::abs(x) >= u * out.predicted_sigma) ++hits;
      }
    }
    out.exceedance[u - 1] =
        static_cast<double>(hits) / static_cast<double>(trials);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace detail {

BatchEvaluation evaluate_batch(const UnitaryEnsemble& ens, const CMatrix& states,
                               Objective objective, bool with_gradient) {
  const auto& dims = ens.dims();
  const auto da = static_cast<Eigen::Index>(dims.d_a());
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  const auto r = states.cols();
  const std::size_t t = ens.t();
  const double inv_sqrt_da = 1.0 / std::sqrt(static_cast<double>(da));
  const double unif = 1.0 / static_cast<double>(da);

  std::vector<RVector> partial_values(t);
  std::vector<CMatrix> partial_grads(with_gradient ? t : 0);
  parallel_for(t, [&](std::size_t k) {
    CMatrix phi = ens[k] * states;
    RVector vals = RVector::Zero(r);
    for (Eigen::Index j = 0; j < r; ++j) {
      for (Eigen::Index a = 0; a < da; ++a) {
        auto block = phi.block(a * db, j, db, 1);
        const double p = block.squaredNorm();
        if (objective == Objective::hellinger) {
          vals(j) += std::sqrt(p) * inv_sqrt_da;
          if (with_gradient) {
            block *= inv_sqrt_da / std::sqrt(p + kSqrtRegularizer);
          }
        } else {
          vals(j) += 0.5 * std::abs(p - unif);
          if (with_gradient && p < unif) block *= -1.0;
        }
      }
    }
    partial_values[k] = std::move(vals);
    if (with_gradient) partial_grads[k].noalias() = ens[k].adjoint() * phi;
  });

  const double inv_t = 1.0 / static_cast<double>(t);
  BatchEvaluation out;
  out.values = RVector::Zero(r);
  for (std::size_t k = 0; k < t; ++k) out.values += partial_values[k];
  out.values *= inv_t;
  if (objective == Objective::hellinger) {
    out.values = (1.0 - out.values.array()).max(0.0).matrix();
  }
  if (with_gradient) {
    out.gradients = CMatrix::Zero(states.rows(), r);
    for (std::size_t k = 0; k < t; ++k) out.gradients += partial_grads[k];
    out.gradients *= (objective == Objective::hellinger ? -inv_t : inv_t);
  }
  return out;
}

}  // namespace detail

namespace {

struct SearchOutcome {
  CVector best;
  SearchDiagnostics diagnostics;
};

/// Signed objective so that the search always maximizes.
double signed_value(double v, bool minimize) { return minimize ? -v : v; }

/// Projects a real gradient onto the tangent space of the sphere at x.
CVector tangent(const CVector& x, const CVector& g) {
  return g - x.dot(g).real() * x;
}

SearchOutcome search_full_sphere(const UnitaryEnsemble& ens,
                                 const SearchOptions& opts) {
  const std::size_t d = ens.dims().d();
  const auto n = static_cast<Eigen::Index>(d);
  const int restarts = std::max<int>(
      1, std::max<int>(opts.restarts, static_cast<int>(opts.initial_states.size())));
  CMatrix x(n, restarts);
  for (int j = 0; j < restarts; ++j) {
    if (j < static_cast<int>(opts.initial_states.size())) {
      if (opts.initial_states[j].size() != n) {
        throw Error(ErrorCode::dimension_mismatch,
                    "worst_case_search: initial state has wrong dimension");
      }
      x.col(j) = retract(opts.initial_states[j]);
    } else {
      Rng sub = Rng::substream(opts.seed, static_cast<std::uint64_t>(j));
      x.col(j) = sample_sphere(d, sub);
    }
  }
  auto cur = detail::evaluate_batch(ens, x, opts.objective, true);
  for (Eigen::Index j = 0; j < cur.gradients.cols(); ++j) {
    if (opts.minimize) cur.gradients.col(j) *= -1.0;
  }
  RVector value(restarts);
  for (int j = 0; j < restarts; ++j) value(j) = signed_value(cur.values(j), opts.minimize);

  std::vector<double> step(restarts, opts.initial_step);
  std::vector<bool> active(restarts, true);
  std::vector<int> iters(restarts, 0);
  int converged = 0;

  for (int it = 0; it < opts.max_iterations; ++it) {
    std::vector<int> cols;
    std::vector<CVector> trial;
    for (int j = 0; j < restarts; ++j) {
      if (!active[j]) continue;
      const CVector tg = tangent(x.col(j), cur.gradients.col(j));
      if (tg.norm() < opts.gradient_tolerance) {
        active[j] = false;
        ++converged;
        continue;
      }
      cols.push_back(j);
      trial.push_back(retract(x.col(j) + step[j] * tg));
    }
    if (cols.empty()) break;
    CMatrix batch(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) batch.col(c) = trial[c];
    auto next = detail::evaluate_batch(ens, batch, opts.objective, true);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const int j = cols[c];
      ++iters[j];
      const double v = signed_value(next.values(c), opts.minimize);
      if (v > value(j)) {
        x.col(j) = batch.col(c);
        value(j) = v;
        cur.gradients.col(j) =
            opts.minimize ? CVector(-next.gradients.col(c)) : CVector(next.gradients.col(c));
        step[j] = std::min(step[j] * 1.5, kMaxStep);
      } else {
        step[j] *= 0.5;
        if (step[j] < kMinStep) {
          active[j] = false;
          ++converged;
        }
      }
    }
  }

  Eigen::Index best = 0;
  value.maxCoeff(&best);
  SearchOutcome out;
  out.best = x.col(best);
  out.diagnostics.restarts = restarts;
  out.diagnostics.iterations = *std::max_element(iters.begin(), iters.end());
  out.diagnostics.converged_restarts = converged;
  out.diagnostics.converged = converged == restarts;
  return out;
}

SearchOutcome search_separable(const UnitaryEnsemble& ens,
                               const SearchOptions& opts) {
  const auto& dims = ens.dims();
  const auto da = static_cast<Eigen::Index>(dims.d_a());
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  const int restarts = std::max(1, opts.restarts);
  CMatrix alpha(da, restarts), beta(db, restarts);
  for (int j = 0; j < restarts; ++j) {
    Rng sub = Rng::substream(opts.seed, static_cast<std::uint64_t>(j));
    alpha.col(j) = sample_sphere(dims.d_a(), sub);
    beta.col(j) = sample_sphere(dims.d_b(), sub);
  }
  auto product = [&](const CVector& a, const CVector& b) { return tensor(a, b); };
  auto assemble = [&](const CMatrix& al, const CMatrix& be,
                      const std::vector<int>& cols) {
    CMatrix out(da * db, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out.col(c) = product(al.col(cols[c]), be.col(cols[c]));
    }
    return out;
  };
  std::vector<int> all(restarts);
  for (int j = 0; j < restarts; ++j) all[j] = j;
  auto cur = detail::evaluate_batch(ens, assemble(alpha, beta, all),
                                    opts.objective, true);
  if (opts.minimize) cur.gradients *= -1.0;
  RVector value(restarts);
  for (int j = 0; j < restarts; ++j) value(j) = signed_value(cur.values(j), opts.minimize);

  std::vector<double> step_a(restarts, opts.initial_step);
  std::vector<double> step_b(restarts, opts.initial_step);
  std::vector<bool> active(restarts, true);
  std::vector<int> iters(restarts, 0);
  int converged = 0;

  // One factor update for every active restart; `first` selects alpha.
  auto update = [&](bool first, std::vector<bool>& moved) {
    std::vector<int> cols;
    CMatrix trial_alpha = alpha, trial_beta = beta;
    for (int j = 0; j < restarts; ++j) {
      if (!active[j]) continue;
      const CVector g = cur.gradients.col(j);
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          gm(g.data(), da, db);
      if (first) {
        const CVector tg = tangent(alpha.col(j), gm * beta.col(j).conjugate());
        if (tg.norm() < opts.gradient_tolerance) continue;
        trial_alpha.col(j) = retract(alpha.col(j) + step_a[j] * tg);
      } else {
        const CVector tg =
            tangent(beta.col(j), gm.transpose() * alpha.col(j).conjugate());
        if (tg.norm() < opts.gradient_tolerance) continue;
        trial_beta.col(j) = retract(beta.col(j) + step_b[j] * tg);
      }
      cols.push_back(j);
    }
    if (cols.empty()) return;
    auto next = detail::evaluate_batch(ens, assemble(trial_alpha, trial_beta, cols),
                                       opts.objective, true);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const int j = cols[c];
      double& step = first ? step_a[j] : step_b[j];
      const double v = signed_value(next.values(c), opts.minimize);
      if (v > value(j)) {
        if (first) alpha.col(j) = trial_alpha.col(j);
        else beta.col(j) = trial_beta.col(j);
        value(j) = v;
        cur.gradients.col(j) =
            opts.minimize ? CVector(-next.gradients.col(c)) : CVector(next.gradients.col(c));
        step = std::min(step * 1.5, kMaxStep);
        moved[j] = true;
      } else {
        step *= 0.5;
      }
    }
  };

  for (int it = 0; it < opts.max_iterations; ++it) {
    bool any = false;
    for (int j = 0; j < restarts; ++j) any = any || active[j];
    if (!any) break;
    std::vector<bool> moved(restarts, false);
    update(true, moved);
    update(false, moved);
    for (int j = 0; j < restarts; ++j) {
      if (!active[j]) continue;
      ++iters[j];
      const CVector g = cur.gradients.col(j);
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                     Eigen::RowMajor>>
          gm(g.data(), da, db);
      const double ga = tangent(alpha.col(j), gm * beta.col(j).conjugate()).norm();
      const double gb =
          tangent(beta.col(j), gm.transpose() * alpha.col(j).conjugate()).norm();
      const bool flat = ga < opts.gradient_tolerance && gb < opts.gradient_tolerance;
      const bool stalled = !moved[j] &&
                           (step_a[j] < kMinStep || ga < opts.gradient_tolerance) &&
                           (step_b[j] < kMinStep || gb < opts.gradient_tolerance);
      if (flat || stalled) {
        active[j] = false;
        ++converged;
      }
    }
  }

  Eigen::Index best = 0;
  value.maxCoeff(&best);
  SearchOutcome out;
  out.best = tensor(alpha.col(best), beta.col(best));
  out.diagnostics.restarts = restarts;
  out.diagnostics.iterations = *std::max_element(iters.begin(), iters.end());
  out.diagnostics.converged_restarts = converged;
  out.diagnostics.converged = converged == restarts;
  return out;
}

double objective_at(const UnitaryEnsemble& ens, const PureState& psi,
                    Objective objective) {
  return objective == Objective::hellinger ? eval_y(ens, psi)
                                           : eval_metric_uncertainty(ens, psi);
}

}  // namespace

UncertaintyReport worst_case_search(const UnitaryEnsemble& ens,
                                    const StateSubset& subset,
                                    const SearchOptions& opts) {
  const auto& dims = ens.dims();
  std::optional<PureState> worst;
  SearchDiagnostics diag;
  switch (subset.kind) {
    case StateSubset::Kind::explicit_list: {
      if (subset.states.empty()) {
        throw Error(ErrorCode::invalid_argument,
                    "worst_case_search: explicit_list is empty");
      }
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& s : subset.states) {
        require_compatible(ens, s, "worst_case_search");
        const double v = signed_value(objective_at(ens, s, opts.objective), opts.minimize);
        if (v > best) {
          best = v;
          worst = s;
        }
      }
      diag.restarts = static_cast<int>(subset.states.size());
      diag.converged_restarts = diag.restarts;
      diag.converged = true;
      break;
    }
    case StateSubset::Kind::full_sphere: {
      auto res = search_full_sphere(ens, opts);
      worst = PureState::normalized(res.best, dims);
      diag = res.diagnostics;
      break;
    }
    case StateSubset::Kind::separable: {
      auto res = search_separable(ens, opts);
      worst = PureState::normalized(res.best, dims);
      diag = res.diagnostics;
      break;
    }
  }
  const double y = eval_y(ens, *worst);
  const double tv = eval_metric_uncertainty(ens, *worst);
  const double ent = eval_entropic_uncertainty(ens, *worst);
  return UncertaintyReport{
      .objective_value = opts.objective == Objective::hellinger ? y : tv,
      .epsilon_fidelity = std::clamp(1.0 - eval_fidelity_uncertainty(ens, *worst), 0.0, 1.0),
      .epsilon_metric = tv,
      .epsilon_entropic =
          std::max(0.0, std::log(static_cast<double>(dims.d_a())) - ent),
      .worst_state = *worst,
      .diagnostics = diag,
  };
}

// ---------------------------------------------------------------------------
// Separable width and Lipschitz check

CMatrix reshape_ab(const CVector& v, BipartiteDims dims) {
  if (static_cast<std::size_t>(v.size()) != dims.d()) {
    throw Error(ErrorCode::dimension_mismatch, "reshape_ab: wrong dimension");
  }
  const auto da = static_cast<Eigen::Index>(dims.d_a());
  const auto db = static_cast<Eigen::Index>(dims.d_b());
  CMatrix out(da, db);
  for (Eigen::Index a = 0; a < da; ++a) {
    out.row(a) = v.segment(a * db, db).transpose();
  }
  return out;
}

double separable_width_exact(const CVector& g, BipartiteDims dims) {
  return operator_norm(reshape_ab(g, dims));
}

LipschitzResult lipschitz_check(const UnitaryEnsemble& ens1,
                                const UnitaryEnsemble& ens2,
                                std::span<const PureState> states) {
  if (!(ens1.dims() == ens2.dims()) || ens1.t() != ens2.t()) {
    throw Error(ErrorCode::dimension_mismatch,
                "lipschitz_check: ensembles differ in dims or t");
  }
  if (states.empty()) {
    throw Error(ErrorCode::invalid_argument, "lipschitz_check: no states");
  }
  LipschitzResult r;
  r.bound = 1.0 / std::sqrt(2.0 * static_cast<double>(ens1.t()));
  double d2 = 0.0;
  for (std::size_t k = 0; k < ens1.t(); ++k) {
    d2 += (ens1[k] - ens2[k]).squaredNorm();
  }
  r.distance = std::sqrt(d2);
  r.value1 = -1.0;
  r.value2 = -1.0;
  for (const auto& s : states) {
    r.value1 = std::max(r.value1, eval_y(ens1, s));
    r.value2 = std::max(r.value2, eval_y(ens2, s));
  }
  r.ratio = r.distance > 0.0 ? std::abs(r.value1 - r.value2) / r.distance : 0.0;
  return r;
}

LipschitzResult lipschitz_check(const UnitaryEnsemble& ens1,
                                const UnitaryEnsemble& ens2,
                                std::size_t n_states, Rng& rng) {
  std::vector<PureState> states;
  states.reserve(n_states);
  for (std::size_t i = 0; i < n_states; ++i) {
    states.emplace_back(sample_sphere(ens1.dims().d(), rng), ens1.dims());
  }
  return lipschitz_check(ens1, ens2, states);
}

}  // namespace qlock
