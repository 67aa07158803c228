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

#include "betabo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "betabo/detail/nelder_mead.hpp"
#include "betabo/error.hpp"
#include "betabo/sobol.hpp"

namespace betabo {

const char* acquisition_name(AcquisitionKind kind) noexcept {
  switch (kind) {
  case AcquisitionKind::Ucb:
    return "ucb";
  case AcquisitionKind::Ei:
    return "ei";
  case AcquisitionKind::Pi:
    return "pi";
  }
  return "?";
}

AcquisitionKind acquisition_from_name(const std::string& name) {
  if (name == "ucb") return AcquisitionKind::Ucb;
  if (name == "ei") return AcquisitionKind::Ei;
  if (name == "pi") return AcquisitionKind::Pi;
  throw ConfigError("unknown acquisition '" + name + "' (expected ucb, ei or pi)");
}

void AcquisitionSpec::validate() const {
  if (!(beta_t > 0.0)) throw DomainError("UCB beta_t must be positive");
  if (!(xi >= 0.0)) throw DomainError("improvement margin xi must be nonnegative");
}

double normal_pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ucb_score(const PosteriorMoments& m, const AcquisitionSpec& spec) {
  return -(m.mean - std::sqrt(spec.beta_t) * m.stddev());
}

double ei_score(const PosteriorMoments& m, double best_so_far, const AcquisitionSpec& spec) {
  const double improvement = best_so_far - spec.xi - m.mean;
  const double sigma = m.stddev();
  if (sigma <= 0.0) return std::max(0.0, improvement);
  const double z = improvement / sigma;
  return std::max(0.0, improvement * normal_cdf(z) + sigma * normal_pdf(z));
}

double pi_score(const PosteriorMoments& m, double best_so_far, const AcquisitionSpec& spec) {
  const double improvement = best_so_far - spec.xi - m.mean;
  const double sigma = m.stddev();
  if (sigma <= 0.0) return improvement > 0.0 ? 1.0 : 0.0;
  return normal_cdf(improvement / sigma);
}

double acquisition_score(const PosteriorMoments& m, double best_so_far,
                         const AcquisitionSpec& spec) {
  switch (spec.kind) {
  case AcquisitionKind::Ucb:
    return ucb_score(m, spec);
  case AcquisitionKind::Ei:
    return ei_score(m, best_so_far, spec);
  case AcquisitionKind::Pi:
    return pi_score(m, best_so_far, spec);
  }
  return 0.0;
}

Eigen::VectorXd acquisition_scores(const GPState& state, const AcquisitionSpec& spec,
                                   const Eigen::MatrixXd& points) {
  const auto moments = posterior_batch(state, points);
  const double best = state.targets().minCoeff();
  Eigen::VectorXd scores(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    scores(i) = acquisition_score({moments.mean(i), moments.variance(i)}, best, spec);
  }
  return scores;
}

AcquisitionResult maximize_acquisition(const GPState& state, const AcquisitionSpec& spec,
                                       std::size_t d, std::uint64_t seed,
                                       const MaximizerOptions& options) {
  spec.validate();
  if (d != state.dim()) throw DimensionMismatch("maximize_acquisition: dimension mismatch");
  const std::size_t n_candidates = std::max<std::size_t>(1, options.candidates_per_dim * d);

  const auto raw = sobol_points(d, n_candidates, seed);
  Eigen::MatrixXd candidates(static_cast<Eigen::Index>(n_candidates), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n_candidates; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      candidates(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = raw[i][j];
    }
  }
  const Eigen::VectorXd scores = acquisition_scores(state, spec, candidates);
  std::size_t evaluations = n_candidates;

  std::vector<Eigen::Index> order(n_candidates);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n_top = std::min(options.refine_starts, n_candidates);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_top), order.end(),
                    [&](Eigen::Index a, Eigen::Index b) {
                      return scores(a) > scores(b) || (scores(a) == scores(b) && a < b);
                    });

  std::vector<double> best_point = raw[static_cast<std::size_t>(order[0])];
  double best_score = scores(order[0]);

  const double best_target = state.targets().minCoeff();
  auto clamp_unit = [](std::span<const double> u) {
    std::vector<double> c(u.begin(), u.end());
    for (auto& v : c) v = std::clamp(v, 0.0, 1.0);
    return c;
  };
  auto negative_score = [&](std::span<const double> u) {
    const auto c = clamp_unit(u);
    return -acquisition_score(posterior(state, c), best_target, spec);
  };
  const std::vector<double> step(d, 0.05);
  for (std::size_t k = 0; k < n_top && options.refine_evals > 0; ++k) {
    const auto start = raw[static_cast<std::size_t>(order[k])];
    const auto res = detail::nelder_mead_minimize(negative_score, start, step,
                                                  {.max_evals = options.refine_evals,
                                                   .ftol = 1e-12,
                                                   .xtol = 1e-10});
    evaluations += res.evals;
    if (-res.value > best_score) {
      best_score = -res.value;
      best_point = clamp_unit(res.x);
    }
  }
  return {UnitPoint(std::move(best_point)), best_score, evaluations};
}

} // namespace betabo
