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

#ifndef BETABO_SPECTRAL_HPP
#define BETABO_SPECTRAL_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "betabo/kernels.hpp"

namespace betabo {

/// Builds the n x n Gram matrix for the rows of a sampled design.
using GramBuilder = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

struct SpectrumOptions {
  std::size_t n_matrices = 300;
  std::size_t n_points = 100;
};

/// Eigenvalues of a symmetric matrix, sorted descending.
std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& symmetric);

/// Average, over n_matrices replicate designs of n_points i.i.d. uniform
/// points in [0,1]^d, of the descending eigenvalues of the Gram matrix.
/// Replicate r draws from a generator seeded by (seed, r).
std::vector<double> expected_spectrum(const KernelSpec& spec, std::size_t d,
                                      const SpectrumOptions& options, std::uint64_t seed);

std::vector<double> expected_spectrum(const GramBuilder& gram, std::size_t d,
                                      const SpectrumOptions& options, std::uint64_t seed);

struct DecayRegression {
  double slope;
  double intercept;
  double p_value;  ///< two-sided t-test on the slope, df = n_retained - 2
  double log10_p;  ///< computed in log space; finite well below 1e-308
  double r_squared;
  std::size_t n_retained;
};

/// Default cut for the log regression, relative to the leading eigenvalue.
inline constexpr double kEigenFloor = 1e-12;

/// OLS of ln(lambda_j) on j = 1, 2, ... over the eigenvalues exceeding
/// floor * lambda_1. Needs at least three retained values.
DecayRegression eigendecay_regression(std::span<const double> eigenvalues,
                                      double floor = kEigenFloor);

/// log10 of the two-sided Student-t tail P(|T_df| >= |t|).
double student_t_two_sided_log10_p(double t, double df);

struct SpectrumReport {
  KernelSpec kernel;
  std::size_t d;
  std::size_t n_matrices;
  std::size_t n_points;
  std::vector<double> mean_eigenvalues;
  DecayRegression regression;
  std::size_t eigencount_used;
};

SpectrumReport spectrum_report(const KernelSpec& spec, std::size_t d,
                               const SpectrumOptions& options, std::uint64_t seed,
                               double floor = kEigenFloor);

/// One Beta-kernel report per (h, d) cell, h-major. Cell seeds derive from
/// `seed` and the cell position, so the table is reproducible.
std::vector<SpectrumReport> decay_report_suite(std::span<const double> h_grid,
                                               std::span<const std::size_t> d_grid,
                                               std::uint64_t seed,
                                               const SpectrumOptions& options = {},
                                               double floor = kEigenFloor);

} // namespace betabo

#endif // BETABO_SPECTRAL_HPP
