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

#ifndef BETABO_BO_LOOP_HPP
#define BETABO_BO_LOOP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "betabo/acquisition.hpp"
#include "betabo/benchmarks.hpp"
#include "betabo/gp.hpp"
#include "betabo/kernels.hpp"

namespace betabo {

/// n points of a seeded, scrambled Sobol sequence in [0,1)^d. With
/// scramble = false the textbook sequence (0, 1/2, 3/4, 1/4, ...) is returned.
std::vector<UnitPoint> sobol_init(std::size_t d, std::size_t n, std::uint64_t seed,
                                  bool scramble = true);

enum class UcbSchedule {
  Constant,   ///< beta_t fixed to AcquisitionSpec::beta_t
  Logarithmic ///< beta_t = 2 ln(d t^2 pi^2 / (6 delta)), delta = 0.1
};

struct HyperfitPolicy {
  /// Refit every k iterations; 0 keeps the initial hyperparameters forever.
  std::size_t refit_every = 1;
  std::size_t restarts = 8;
  std::size_t max_evals_per_restart = 200;
  double noise_var = 1e-6;
  bool learn_noise = false;
  bool shared_bandwidth = false;
  /// Seed the search with the previous optimum in addition to the restarts.
  bool warm_start = true;
  MaternNu nu = MaternNu::FiveHalves;
  HyperparameterBox box;
  /// Used until the first refit (and always, when refit_every == 0).
  double initial_bandwidth = 0.5;
  double initial_lengthscale = 0.5;
};

struct BoConfig {
  KernelKind kernel = KernelKind::Beta;
  AcquisitionSpec acquisition;
  UcbSchedule ucb_schedule = UcbSchedule::Constant;
  std::size_t n_init = 0; ///< 0 selects 3 d
  std::size_t n_iter = 300;
  std::uint64_t seed = 0;
  HyperfitPolicy hyperfit;
  MaximizerOptions maximizer;
};

struct TrajectoryRecord {
  std::size_t iteration;
  UnitPoint unit;
  std::vector<double> raw;
  double value;
  double best;
  double delta_boundary;
  /// Kernel hyperparameters (h per dimension or lengthscale) of the model that
  /// proposed this point; empty for initial design points.
  std::vector<double> hyperparameters;
};

struct Trajectory {
  BoConfig config;
  std::size_t dim = 0;
  std::vector<TrajectoryRecord> records;

  double final_best() const;
};

/// Black-box evaluation failed mid-run; carries everything recorded so far.
class BlackBoxFailure : public std::runtime_error {
public:
  BlackBoxFailure(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

private:
  Trajectory partial_;
};

/// Sobol initial design, then n_iter rounds of
/// (refit hyperparameters per policy, fit GP, maximize acquisition, evaluate).
/// The GP lives in unit coordinates for every kernel. Deterministic in seed.
Trajectory run_bo(const BlackBox& black_box, const BoConfig& config);

struct Summary {
  double mean_final_best;
  double stderr_final_best;
  std::vector<double> mean_best_curve;
  std::vector<double> mean_delta_boundary_curve;
};

/// Requires at least one trajectory; all must have the same length.
Summary summarize(std::span<const Trajectory> trajectories);

} // namespace betabo

#endif // BETABO_BO_LOOP_HPP
