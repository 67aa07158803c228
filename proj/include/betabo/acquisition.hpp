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

#ifndef BETABO_ACQUISITION_HPP
#define BETABO_ACQUISITION_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "betabo/gp.hpp"
#include "betabo/kernels.hpp"

namespace betabo {

enum class AcquisitionKind { Ucb, Ei, Pi };

const char* acquisition_name(AcquisitionKind kind) noexcept;
AcquisitionKind acquisition_from_name(const std::string& name);

/// Acquisition choice. Everything is oriented for minimization of the
/// objective: the next query is always the maximizer of the score.
struct AcquisitionSpec {
  AcquisitionKind kind = AcquisitionKind::Ucb;
  double beta_t = 4.0; ///< UCB exploration weight (sqrt(beta_t) multiplies sigma)
  double xi = 0.01;    ///< EI / PI improvement margin

  void validate() const;
};

/// -(mu - sqrt(beta_t) sigma): the negated lower confidence bound.
double ucb_score(const PosteriorMoments& m, const AcquisitionSpec& spec);

/// Expected improvement below best_so_far - xi. Always >= 0.
double ei_score(const PosteriorMoments& m, double best_so_far, const AcquisitionSpec& spec);

/// Probability of falling below best_so_far - xi.
double pi_score(const PosteriorMoments& m, double best_so_far, const AcquisitionSpec& spec);

double acquisition_score(const PosteriorMoments& m, double best_so_far,
                         const AcquisitionSpec& spec);

double normal_pdf(double z) noexcept;
double normal_cdf(double z) noexcept;

struct MaximizerOptions {
  std::size_t candidates_per_dim = 1024;
  std::size_t refine_starts = 4;
  std::size_t refine_evals = 200;
};

struct AcquisitionResult {
  UnitPoint point;
  double score;
  std::size_t evaluations;
};

/// Two-stage maximization over [0,1]^d: score a scrambled-Sobol candidate
/// batch, then refine the best few with bounded Nelder-Mead. The incumbent
/// for EI/PI is the smallest observed target. Deterministic in `seed`.
AcquisitionResult maximize_acquisition(const GPState& state, const AcquisitionSpec& spec,
                                       std::size_t d, std::uint64_t seed,
                                       const MaximizerOptions& options = {});

/// Scores for every row of `points` under the same conventions.
Eigen::VectorXd acquisition_scores(const GPState& state, const AcquisitionSpec& spec,
                                   const Eigen::MatrixXd& points);

} // namespace betabo

#endif // BETABO_ACQUISITION_HPP
