// Copyright 2026 The BetaBO Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "betabo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "betabo/detail/nelder_mead.hpp"
#include "betabo/error.hpp"
#include "betabo/sobol.hpp"

namespace betabo {

double PosteriorMoments::stddev() const noexcept { return std::sqrt(std::max(variance, 0.0)); }

namespace {

bool factorize(const Eigen::MatrixXd& a, Eigen::MatrixXd& l) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return false;
  l = llt.matrixL();
  return l.allFinite() && (l.diagonal().array() > 0.0).all();
}

} // namespace

GPState fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const KernelSpec& kernel,
            double noise_var, const FitOptions& options) {
  if (x.rows() < 1) throw DimensionMismatch("fit needs at least one training point");
  if (y.size() != x.rows()) {
    throw DimensionMismatch("fit: " + std::to_string(x.rows()) + " points but " +
                            std::to_string(y.size()) + " targets");
  }
  if (!(noise_var >= 0.0)) throw DomainError("noise variance must be nonnegative");
  if (!(options.amplitude > 0.0)) throw DomainError("amplitude must be positive");
  if (!y.allFinite()) throw DomainError("targets must be finite");

  GPState s(kernel);
  s.x_ = x;
  s.y_ = y;
  s.noise_var_ = noise_var;
  s.amplitude_ = options.amplitude;
  if (options.standardize) {
    const double t = static_cast<double>(y.size());
    s.offset_ = y.mean();
    double scale = 1.0;
    if (y.size() > 1) {
      scale = std::sqrt((y.array() - s.offset_).square().sum() / (t - 1.0));
    }
    s.scale_ = scale > 1e-12 * (1.0 + std::abs(s.offset_)) ? scale : 1.0;
  }
  s.y_std_ = (y.array() - s.offset_) / s.scale_;

  Eigen::MatrixXd a = options.amplitude * kernel_matrix(x, kernel);
  a.diagonal().array() += noise_var;
  if (!factorize(a, s.chol_)) {
    bool ok = false;
    for (double jitter : kJitterLadder) {
      Eigen::MatrixXd aj = a;
      aj.diagonal().array() += jitter;
      if (factorize(aj, s.chol_)) {
        s.jitter_ = jitter;
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw IllConditionedError("Cholesky factorization failed after maximum jitter " +
                                std::to_string(kJitterLadder[std::size(kJitterLadder) - 1]));
    }
  }
  const Eigen::VectorXd z = s.chol_.triangularView<Eigen::Lower>().solve(s.y_std_);
  s.alpha_ = s.chol_.transpose().triangularView<Eigen::Upper>().solve(z);
  return s;
}

PosteriorMoments posterior(const GPState& state, std::span<const double> x) {
  if (x.size() != state.dim()) {
    throw DimensionMismatch("posterior: query has dimension " + std::to_string(x.size()) +
                            ", model has " + std::to_string(state.dim()));
  }
  const Eigen::MatrixXd q =
      Eigen::Map<const Eigen::RowVectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  const auto b = posterior_batch(state, q);
  return {b.mean(0), b.variance(0)};
}

BatchMoments posterior_batch(const GPState& state, const Eigen::MatrixXd& queries) {
  if (static_cast<std::size_t>(queries.cols()) != state.dim()) {
    throw DimensionMismatch("posterior: query dimension does not match the model");
  }
  // n x m cross-covariance
  const Eigen::MatrixXd kx =
      state.amplitude() * cross_kernel(state.design(), queries, state.kernel());
  const Eigen::VectorXd prior = state.amplitude() * kernel_diagonal(queries, state.kernel());
  const Eigen::MatrixXd v = state.chol().triangularView<Eigen::Lower>().solve(kx);
  BatchMoments out;
  const double scale = state.target_scale();
  out.mean = (kx.transpose() * state.alpha()).array() * scale + state.target_offset();
  out.variance =
      ((prior - v.colwise().squaredNorm().transpose()).array().max(0.0)) * (scale * scale);
  return out;
}

double log_marginal_likelihood(const GPState& state) {
  const double t = static_cast<double>(state.size());
  return -0.5 * state.standardized_targets().dot(state.alpha()) -
         state.chol().diagonal().array().log().sum() -
         0.5 * t * std::log(2.0 * std::numbers::pi);
}

// ---- hyperparameters ----------------------------------------------------------

namespace {

struct LogBounds {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> min; // the same box before taking logs
  std::vector<double> max;
};

void push_bound(LogBounds& b, double min, double max) {
  b.lo.push_back(std::log(min));
  b.hi.push_back(std::log(max));
  b.min.push_back(min);
  b.max.push_back(max);
}

LogBounds log_bounds(KernelKind kind, std::size_t d, const HyperfitOptions& o) {
  LogBounds b;
  const std::size_t n_kernel =
      kind == KernelKind::Beta ? (o.shared_bandwidth ? 1 : d) : std::size_t{1};
  for (std::size_t i = 0; i < n_kernel; ++i) {
    if (kind == KernelKind::Beta) {
      push_bound(b, o.box.h_min, o.box.h_max);
    } else {
      push_bound(b, o.box.ell_min, o.box.ell_max);
    }
  }
  if (o.learn_noise) push_bound(b, o.box.noise_min, o.box.noise_max);
  return b;
}

} // namespace

std::size_t hyperparameter_count(KernelKind kind, std::size_t d, const HyperfitOptions& options) {
  return log_bounds(kind, d, options).lo.size();
}

std::pair<KernelSpec, double> decode_hyperparameters(KernelKind kind, std::size_t d,
                                                     std::span<const double> log_params,
                                                     const HyperfitOptions& options) {
  const auto b = log_bounds(kind, d, options);
  if (log_params.size() != b.lo.size()) {
    throw DimensionMismatch("decode_hyperparameters: expected " + std::to_string(b.lo.size()) +
                            " parameters");
  }
  std::vector<double> v(log_params.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    // clamped in linear space so the box edges are attained exactly
    v[i] = std::clamp(std::exp(log_params[i]), b.min[i], b.max[i]);
  }
  const double noise = options.learn_noise ? v.back() : options.noise_var;
  switch (kind) {
  case KernelKind::Beta:
    if (options.shared_bandwidth) return {KernelSpec::beta_shared(v[0], d), noise};
    return {KernelSpec::beta(std::vector<double>(v.begin(), v.begin() + d)), noise};
  case KernelKind::Rbf:
    return {KernelSpec::rbf(v[0]), noise};
  case KernelKind::Matern:
    return {KernelSpec::matern(v[0], options.nu), noise};
  }
  throw DomainError("unknown kernel kind");
}

HyperfitResult optimize_hyperparameters(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                        KernelKind kind, const HyperfitOptions& options) {
  if (x.rows() < 2) {
    throw std::invalid_argument("optimize_hyperparameters needs at least two observations");
  }
  if (options.restarts < 1) throw std::invalid_argument("need at least one restart");
  const auto d = static_cast<std::size_t>(x.cols());
  const auto bounds = log_bounds(kind, d, options);
  const std::size_t p = bounds.lo.size();

  std::size_t evaluations = 0;
  auto negative_lml = [&](std::span<const double> theta) {
    ++evaluations;
    try {
      const auto [kernel, noise] = decode_hyperparameters(kind, d, theta, options);
      return -log_marginal_likelihood(fit(x, y, kernel, noise, options.fit));
    } catch (const IllConditionedError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::vector<std::vector<double>> starts;
  SobolSequence sobol(p, options.seed);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    const auto u = sobol.next();
    std::vector<double> theta(p);
    for (std::size_t i = 0; i < p; ++i) theta[i] = bounds.lo[i] + u[i] * (bounds.hi[i] - bounds.lo[i]);
    starts.push_back(std::move(theta));
  }
  if (options.warm_start && options.warm_start->size() == p) {
    auto w = *options.warm_start;
    for (std::size_t i = 0; i < p; ++i) w[i] = std::clamp(w[i], bounds.lo[i], bounds.hi[i]);
    starts.push_back(std::move(w));
  }

  std::vector<double> step(p);
  for (std::size_t i = 0; i < p; ++i) step[i] = 0.15 * (bounds.hi[i] - bounds.lo[i]);

  HyperfitResult best{KernelSpec::rbf(1.0), 0.0, -std::numeric_limits<double>::infinity(), {}, {}, 0};
  bool found = false;
  const detail::NelderMeadOptions nm{.max_evals = options.max_evals_per_restart,
                                     .ftol = 1e-7,
                                     .xtol = 1e-5};
  for (const auto& start : starts) {
    best.start_log_likelihoods.push_back(-negative_lml(start));
    auto res = detail::nelder_mead_minimize(negative_lml, start, step, nm);
    for (std::size_t i = 0; i < p; ++i) res.x[i] = std::clamp(res.x[i], bounds.lo[i], bounds.hi[i]);
    const double lml = -res.value;
    if (std::isfinite(lml) && (!found || lml > best.log_likelihood)) {
      found = true;
      best.log_likelihood = lml;
      best.log_params = res.x;
    }
  }
  if (!found) {
    throw IllConditionedError("hyperparameter search: every restart failed to fit");
  }
  auto [kernel, noise] = decode_hyperparameters(kind, d, best.log_params, options);
  best.kernel = std::move(kernel);
  best.noise_var = noise;
  best.evaluations = evaluations;
  return best;
}

} // namespace betabo
