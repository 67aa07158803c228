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

#include "betabo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/beta.hpp>

#include "betabo/rng.hpp"
#include "betabo/special_functions.hpp"

namespace betabo {

namespace {

constexpr int kMaxReplicateAttempts = 3;

Eigen::MatrixXd uniform_design(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = unif(rng);
  }
  return x;
}

bool try_sorted_eigenvalues(const Eigen::MatrixXd& m, std::vector<double>& out) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite()) return false;
  const auto& ev = solver.eigenvalues();
  out.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return true;
}

// ln I_x(a, b) via x^a (1-x)^b / (a B(a,b)) * (1 + sum_n B(a+1,n+1)/B(a+b,n+1) x^{n+1}),
// accurate for small x.
double log_ibeta_small_x(double log_x, double log_1mx, double x, double a, double b) {
  double sum = 1.0;
  double term = x * (a + b) / (a + 1.0);
  for (int n = 1; n < 10000 && term > 1e-17 * sum; ++n) {
    sum += term;
    term *= x * (a + b + n) / (a + n + 1.0);
  }
  return a * log_x + b * log_1mx - std::log(a) - log_beta_fn(PositiveReal(a), PositiveReal(b)) +
         std::log(sum);
}

} // namespace

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& symmetric) {
  std::vector<double> out;
  if (!try_sorted_eigenvalues(symmetric, out)) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  return out;
}

std::vector<double> expected_spectrum(const GramBuilder& gram, std::size_t d,
                                      const SpectrumOptions& options, std::uint64_t seed) {
  if (options.n_matrices < 1) throw std::invalid_argument("n_matrices must be >= 1");
  if (options.n_points < 2) throw std::invalid_argument("n_points must be >= 2");
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  std::vector<double> mean(options.n_points, 0.0);
  std::vector<double> ev;
  for (std::size_t r = 0; r < options.n_matrices; ++r) {
    bool ok = false;
    for (int attempt = 0; attempt < kMaxReplicateAttempts && !ok; ++attempt) {
      const std::uint64_t s = derive_seed(derive_seed(seed, r), static_cast<std::uint64_t>(attempt));
      ok = try_sorted_eigenvalues(gram(uniform_design(options.n_points, d, s)), ev);
    }
    if (!ok) {
      throw std::runtime_error("eigensolver failed on replicate " + std::to_string(r) +
                               " after retries");
    }
    for (std::size_t j = 0; j < mean.size(); ++j) {
      mean[j] += ev[j] / static_cast<double>(options.n_matrices);
    }
  }
  return mean;
}

std::vector<double> expected_spectrum(const KernelSpec& spec, std::size_t d,
                                      const SpectrumOptions& options, std::uint64_t seed) {
  return expected_spectrum([&spec](const Eigen::MatrixXd& x) { return kernel_matrix(x, spec); },
                           d, options, seed);
}

double student_t_two_sided_log10_p(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  const double at = std::abs(t);
  if (std::isnan(at)) return std::numeric_limits<double>::quiet_NaN();
  if (at == 0.0) return 0.0;
  if (std::isinf(at)) return -std::numeric_limits<double>::infinity();
  // P(|T| >= t) = I_x(df/2, 1/2) with x = df / (df + t^2).
  const double a = df / 2.0;
  const double b = 0.5;
  const double log_t2 = 2.0 * std::log(at);
  const double log_x = std::log(df) - (log_t2 + std::log1p(df / (at * at)));
  const double x = std::exp(log_x);
  if (x > 0.3) {
    return std::log10(boost::math::ibeta(a, b, x));
  }
  // 1 - x = t^2 / (df + t^2)
  const double log_1mx = log_t2 - (log_t2 + std::log1p(df / (at * at)));
  return log_ibeta_small_x(log_x, log_1mx, x, a, b) / std::numbers::ln10;
}

DecayRegression eigendecay_regression(std::span<const double> eigenvalues, double floor) {
  if (eigenvalues.empty()) throw std::invalid_argument("no eigenvalues to regress");
  const double cut = floor * eigenvalues[0];
  std::vector<double> logs;
  for (double v : eigenvalues) {
    if (!(v > cut) || !(v > 0.0)) break;
    logs.push_back(std::log(v));
  }
  const std::size_t n = logs.size();
  if (n < 3) {
    throw std::invalid_argument("eigendecay_regression needs at least 3 eigenvalues above the floor");
  }
  const double nd = static_cast<double>(n);
  const double mean_j = (nd + 1.0) / 2.0;
  double mean_y = 0.0;
  for (double y : logs) mean_y += y / nd;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dj = static_cast<double>(i + 1) - mean_j;
    const double dy = logs[i] - mean_y;
    sxx += dj * dj;
    sxy += dj * dy;
    syy += dy * dy;
  }
  DecayRegression r{};
  r.n_retained = n;
  r.slope = sxy / sxx;
  r.intercept = mean_y - r.slope * mean_j;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = logs[i] - (r.intercept + r.slope * static_cast<double>(i + 1));
    ss_res += e * e;
  }
  r.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  const double df = nd - 2.0;
  const double se = std::sqrt(ss_res / df / sxx);
  const double t = se > 0.0 ? r.slope / se
                            : (r.slope == 0.0 ? 0.0 : std::copysign(HUGE_VAL, r.slope));
  r.log10_p = student_t_two_sided_log10_p(t, df);
  r.p_value = std::pow(10.0, r.log10_p);
  return r;
}

SpectrumReport spectrum_report(const KernelSpec& spec, std::size_t d,
                               const SpectrumOptions& options, std::uint64_t seed, double floor) {
  auto mean = expected_spectrum(spec, d, options, seed);
  const auto reg = eigendecay_regression(mean, floor);
  return SpectrumReport{spec, d, options.n_matrices, options.n_points, std::move(mean), reg,
                        reg.n_retained};
}

std::vector<SpectrumReport> decay_report_suite(std::span<const double> h_grid,
                                               std::span<const std::size_t> d_grid,
                                               std::uint64_t seed, const SpectrumOptions& options,
                                               double floor) {
  if (h_grid.empty() || d_grid.empty()) {
    throw std::invalid_argument("decay_report_suite needs non-empty h and d grids");
  }
  std::vector<SpectrumReport> out;
  out.reserve(h_grid.size() * d_grid.size());
  std::uint64_t cell = 0;
  for (double h : h_grid) {
    for (std::size_t d : d_grid) {
      out.push_back(spectrum_report(KernelSpec::beta_shared(h, d), d, options,
                                    derive_seed(seed, cell++), floor));
    }
  }
  return out;
}

} // namespace betabo
