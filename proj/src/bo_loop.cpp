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

#include "betabo/bo_loop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "betabo/rng.hpp"
#include "betabo/sobol.hpp"

namespace betabo {

std::vector<UnitPoint> sobol_init(std::size_t d, std::size_t n, std::uint64_t seed, bool scramble) {
  if (d < 1 || n < 1) throw std::invalid_argument("sobol_init needs d >= 1 and n >= 1");
  std::vector<UnitPoint> out;
  out.reserve(n);
  for (auto& p : sobol_points(d, n, scramble ? std::optional<std::uint64_t>(seed) : std::nullopt)) {
    out.emplace_back(std::move(p));
  }
  return out;
}

double Trajectory::final_best() const {
  if (records.empty()) throw std::logic_error("empty trajectory");
  return records.back().best;
}

namespace {

KernelSpec initial_kernel(KernelKind kind, std::size_t d, const HyperfitPolicy& p) {
  switch (kind) {
  case KernelKind::Beta:
    return KernelSpec::beta_shared(p.initial_bandwidth, d);
  case KernelKind::Rbf:
    return KernelSpec::rbf(p.initial_lengthscale);
  case KernelKind::Matern:
    return KernelSpec::matern(p.initial_lengthscale, p.nu);
  }
  throw std::invalid_argument("unknown kernel kind");
}

std::vector<double> kernel_hyperparameters(const KernelSpec& k) {
  if (k.kind() == KernelKind::Beta) return k.bandwidths();
  return {k.lengthscale()};
}

double ucb_beta(const BoConfig& c, std::size_t d, std::size_t t) {
  if (c.ucb_schedule == UcbSchedule::Constant) return c.acquisition.beta_t;
  constexpr double delta = 0.1;
  const double tt = static_cast<double>(std::max<std::size_t>(t, 1));
  return 2.0 * std::log(static_cast<double>(d) * tt * tt * std::numbers::pi * std::numbers::pi /
                        (6.0 * delta));
}

bool is_duplicate(const std::vector<TrajectoryRecord>& records, const UnitPoint& u) {
  for (const auto& r : records) {
    double dist = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) dist = std::max(dist, std::abs(r.unit[i] - u[i]));
    if (dist <= 1e-9) return true;
  }
  return false;
}

} // namespace

Trajectory run_bo(const BlackBox& black_box, const BoConfig& config) {
  config.acquisition.validate();
  const std::size_t d = black_box.domain.dim();
  const std::size_t n_init = config.n_init == 0 ? 3 * d : config.n_init;
  if (n_init + config.n_iter < 1) throw std::invalid_argument("run_bo: empty budget");

  Trajectory traj;
  traj.config = config;
  traj.config.n_init = n_init;
  traj.dim = d;
  traj.records.reserve(n_init + config.n_iter);

  const std::uint64_t acq_seed = derive_seed(config.seed, seed_stream::kAcquisition);
  const std::uint64_t hyper_seed = derive_seed(config.seed, seed_stream::kHyperfit);
  std::mt19937_64 perturb_rng(derive_seed(config.seed, seed_stream::kPerturbation));
  std::uniform_real_distribution<double> perturb(-1e-3, 1e-3);

  auto observe = [&](UnitPoint u, std::vector<double> hyper) {
    auto raw = from_unit(u, black_box.domain);
    double value;
    try {
      value = black_box.evaluate(raw);
    } catch (const std::exception& e) {
      throw BlackBoxFailure(std::string("black-box evaluation failed: ") + e.what(), traj);
    }
    if (!std::isfinite(value)) {
      throw BlackBoxFailure("black-box evaluation returned a non-finite value", traj);
    }
    const double best = traj.records.empty() ? value : std::min(traj.records.back().best, value);
    const double delta = boundary_distance(u);
    traj.records.push_back({traj.records.size(), std::move(u), std::move(raw), value, best, delta,
                            std::move(hyper)});
  };

  for (auto& u : sobol_init(d, n_init, derive_seed(config.seed, seed_stream::kSobolInit))) {
    observe(std::move(u), {});
  }

  HyperfitOptions hopts;
  hopts.restarts = config.hyperfit.restarts;
  hopts.max_evals_per_restart = config.hyperfit.max_evals_per_restart;
  hopts.noise_var = config.hyperfit.noise_var;
  hopts.learn_noise = config.hyperfit.learn_noise;
  hopts.shared_bandwidth = config.hyperfit.shared_bandwidth;
  hopts.nu = config.hyperfit.nu;
  hopts.box = config.hyperfit.box;

  KernelSpec kernel = initial_kernel(config.kernel, d, config.hyperfit);
  double noise = config.hyperfit.noise_var;
  std::optional<std::vector<double>> previous_optimum;

  for (std::size_t it = 0; it < config.n_iter; ++it) {
    const auto t = static_cast<Eigen::Index>(traj.records.size());
    Eigen::MatrixXd x(t, static_cast<Eigen::Index>(d));
    Eigen::VectorXd y(t);
    for (Eigen::Index i = 0; i < t; ++i) {
      const auto& r = traj.records[static_cast<std::size_t>(i)];
      x.row(i) = r.unit.as_vector().transpose();
      y(i) = r.value;
    }

    const auto every = config.hyperfit.refit_every;
    if (every > 0 && it % every == 0 && t >= 2) {
      hopts.seed = derive_seed(hyper_seed, it);
      hopts.warm_start = config.hyperfit.warm_start ? previous_optimum : std::nullopt;
      auto fitted = optimize_hyperparameters(x, y, config.kernel, hopts);
      kernel = fitted.kernel;
      noise = fitted.noise_var;
      previous_optimum = std::move(fitted.log_params);
    }
    const GPState state = fit(x, y, kernel, noise);

    AcquisitionSpec acq = config.acquisition;
    acq.beta_t = ucb_beta(config, d, static_cast<std::size_t>(t));
    auto proposal = maximize_acquisition(state, acq, d, derive_seed(acq_seed, it), config.maximizer);
    UnitPoint u = std::move(proposal.point);
    for (int attempt = 0; attempt < 100 && is_duplicate(traj.records, u); ++attempt) {
      std::vector<double> c(u.coords().begin(), u.coords().end());
      for (auto& v : c) v = std::clamp(v + perturb(perturb_rng), 0.0, 1.0);
      u = UnitPoint(std::move(c));
    }
    observe(std::move(u), kernel_hyperparameters(kernel));
  }
  return traj;
}

Summary summarize(std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) throw std::invalid_argument("summarize needs at least one trajectory");
  const std::size_t len = trajectories.front().records.size();
  if (len == 0) throw std::invalid_argument("summarize: empty trajectory");
  for (const auto& t : trajectories) {
    if (t.records.size() != len) throw std::invalid_argument("summarize: trajectory lengths differ");
  }
  const double n = static_cast<double>(trajectories.size());
  Summary s{0.0, 0.0, std::vector<double>(len, 0.0), std::vector<double>(len, 0.0)};
  for (const auto& t : trajectories) {
    s.mean_final_best += t.final_best() / n;
    for (std::size_t i = 0; i < len; ++i) {
      s.mean_best_curve[i] += t.records[i].best / n;
      s.mean_delta_boundary_curve[i] += t.records[i].delta_boundary / n;
    }
  }
  if (trajectories.size() > 1) {
    double ss = 0.0;
    for (const auto& t : trajectories) ss += std::pow(t.final_best() - s.mean_final_best, 2);
    s.stderr_final_best = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

} // namespace betabo
