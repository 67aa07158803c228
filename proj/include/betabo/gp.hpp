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

#ifndef BETABO_GP_HPP
#define BETABO_GP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "betabo/kernels.hpp"

namespace betabo {

struct PosteriorMoments {
  double mean;
  double variance; ///< clamped at zero

  double stddev() const noexcept;
};

struct FitOptions {
  // Standardize targets to zero mean / unit variance before fitting; moments
  // are reported back in target units.
  bool standardize = true;
  // Signal variance multiplying the (unscaled) kernel.
  double amplitude = 1.0;
};

/// Fitted exact GP posterior. Immutable once built by fit(); safe for
/// concurrent read-only queries.
class GPState {
public:
  const Eigen::MatrixXd& design() const noexcept { return x_; }
  const Eigen::VectorXd& targets() const noexcept { return y_; }
  const KernelSpec& kernel() const noexcept { return kernel_; }
  double noise_var() const noexcept { return noise_var_; }
  /// Diagonal inflation that made the Cholesky factorization succeed.
  double jitter() const noexcept { return jitter_; }
  double amplitude() const noexcept { return amplitude_; }
  double target_offset() const noexcept { return offset_; }
  double target_scale() const noexcept { return scale_; }
  /// Lower-triangular L with L L^T = amplitude * K + (noise + jitter) I.
  const Eigen::MatrixXd& chol() const noexcept { return chol_; }
  /// (amplitude * K + (noise + jitter) I)^{-1} y_std.
  const Eigen::VectorXd& alpha() const noexcept { return alpha_; }
  const Eigen::VectorXd& standardized_targets() const noexcept { return y_std_; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(x_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(x_.cols()); }

private:
  friend GPState fit(const Eigen::MatrixXd&, const Eigen::VectorXd&, const KernelSpec&, double,
                     const FitOptions&);
  explicit GPState(KernelSpec k) : kernel_(std::move(k)) {}

  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  Eigen::VectorXd y_std_;
  KernelSpec kernel_;
  double noise_var_ = 0.0;
  double jitter_ = 0.0;
  double amplitude_ = 1.0;
  double offset_ = 0.0;
  double scale_ = 1.0;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
};

/// Jitter ladder tried after a plain factorization fails.
inline constexpr double kJitterLadder[] = {1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};

/// Condition the GP on (X, y). X is t x d. Throws IllConditionedError when the
/// factorization fails even with the largest jitter.
GPState fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const KernelSpec& kernel,
            double noise_var, const FitOptions& options = {});

PosteriorMoments posterior(const GPState& state, std::span<const double> x);

/// Posterior moments for every row of `queries` (m x d).
struct BatchMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};
BatchMoments posterior_batch(const GPState& state, const Eigen::MatrixXd& queries);

/// -1/2 y^T alpha - sum ln L_ii - t/2 ln 2 pi, on the targets the state was
/// fitted to (standardized ones when standardization is on).
double log_marginal_likelihood(const GPState& state);

struct HyperparameterBox {
  double h_min = 0.05, h_max = 2.0;
  double ell_min = 0.01, ell_max = 10.0;
  double noise_min = 1e-8, noise_max = 1e-1;
};

struct HyperfitOptions {
  std::size_t restarts = 8;
  std::size_t max_evals_per_restart = 200;
  double noise_var = 1e-6; ///< used as-is unless learn_noise
  bool learn_noise = false;
  bool shared_bandwidth = false; ///< Beta: one h for all dimensions
  MaternNu nu = MaternNu::FiveHalves;
  HyperparameterBox box;
  std::uint64_t seed = 0;
  /// Extra start point in log-parameter space (e.g. the previous optimum).
  std::optional<std::vector<double>> warm_start;
  FitOptions fit;
};

struct HyperfitResult {
  KernelSpec kernel;
  double noise_var;
  double log_likelihood;
  std::vector<double> log_params;
  /// Likelihood at each multistart initial point (-inf where fitting failed).
  std::vector<double> start_log_likelihoods;
  std::size_t evaluations = 0;
};

/// Number of free log-parameters for a kernel kind and dimension.
std::size_t hyperparameter_count(KernelKind kind, std::size_t d, const HyperfitOptions& options);

/// Map a log-parameter vector to (kernel, noise); values are clamped to the box.
std::pair<KernelSpec, double> decode_hyperparameters(KernelKind kind, std::size_t d,
                                                     std::span<const double> log_params,
                                                     const HyperfitOptions& options);

/// Maximize the log marginal likelihood by multistart Nelder-Mead in the log
/// box. Restart initial points are scrambled-Sobol draws; ties in the final
/// likelihood resolve to the lowest restart index. Requires t >= 2.
HyperfitResult optimize_hyperparameters(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                        KernelKind kind, const HyperfitOptions& options = {});

} // namespace betabo

#endif // BETABO_GP_HPP
