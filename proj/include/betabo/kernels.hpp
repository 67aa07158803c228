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

#ifndef BETABO_KERNELS_HPP
#define BETABO_KERNELS_HPP

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "betabo/error.hpp"

namespace betabo {

/// A point of the closed unit hypercube [0,1]^d, d >= 1.
class UnitPoint {
public:
  explicit UnitPoint(std::vector<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  Eigen::Map<const Eigen::VectorXd> as_vector() const {
    return {coords_.data(), static_cast<Eigen::Index>(coords_.size())};
  }

  friend bool operator==(const UnitPoint&, const UnitPoint&) = default;

private:
  std::vector<double> coords_;
};

/// Shape parameters of the Beta density whose mode is x under bandwidth h:
/// alpha = 1 + x/h, beta = 1 + (1-x)/h.
struct BetaShape {
  double alpha;
  double beta;

  static BetaShape from_mode(double x, double h);
};

enum class KernelKind { Beta, Rbf, Matern };

enum class MaternNu { Half, ThreeHalves, FiveHalves };

double nu_value(MaternNu nu) noexcept;
MaternNu matern_nu_from_value(double nu);

struct BetaParams {
  std::vector<double> bandwidths; ///< h_i > 0, one per dimension
};

struct RbfParams {
  double lengthscale;
};

struct MaternParams {
  double lengthscale;
  MaternNu nu = MaternNu::FiveHalves;
};

/// Kernel choice plus its hyperparameters. Validated on construction.
class KernelSpec {
public:
  using Params = std::variant<BetaParams, RbfParams, MaternParams>;

  static KernelSpec beta(std::vector<double> bandwidths);
  static KernelSpec beta_shared(double h, std::size_t d);
  static KernelSpec rbf(double lengthscale);
  static KernelSpec matern(double lengthscale, MaternNu nu = MaternNu::FiveHalves);

  KernelKind kind() const noexcept;
  const Params& params() const noexcept { return params_; }

  // Accessors throw std::bad_variant_access on a kind mismatch.
  const std::vector<double>& bandwidths() const { return std::get<BetaParams>(params_).bandwidths; }
  double lengthscale() const;
  MaternNu nu() const { return std::get<MaternParams>(params_).nu; }

private:
  explicit KernelSpec(Params p) : params_(std::move(p)) {}
  Params params_;
};

const char* kernel_name(KernelKind kind) noexcept;

// ---- Beta product kernel ---------------------------------------------------

/// Beta product kernel between two unit points with per-dimension bandwidths,
/// evaluated in log space and exponentiated once.
double beta_kernel(const UnitPoint& x, const UnitPoint& y, std::span<const double> h);

/// The same kernel computed from its defining integral: the product over
/// dimensions of int_0^1 Beta(s; a, b) Beta(s; a', b') ds, with each density
/// normalized by quadrature as well. Test-scale only: d <= 4, h_i >= 0.05.
double beta_kernel_quadrature_oracle(const UnitPoint& x, const UnitPoint& y,
                                     std::span<const double> h);

/// k(x, x) through the specialized diagonal form.
double beta_kernel_diag(const UnitPoint& x, std::span<const double> h);

/// Closed-form upper bound on k(x, x) for a shared bandwidth h, as stated in
/// the original derivation: 2^{3d - 2d/h} (1/h + 1)^d (1/(h pi) + 3/(2 pi))^{d/2}.
/// NOTE: the stated bound does not hold for h below roughly 0.6; see
/// beta_diag_upper_bound_corrected.
double beta_diag_upper_bound(int d, double h);

/// The same chain of inequalities with the factor 2^{2/h} per dimension that
/// the stated bound drops: 2^{3d} (1/h + 1)^d (1/(h pi) + 3/(2 pi))^{d/2}.
double beta_diag_upper_bound_corrected(int d, double h);

// ---- Stationary baselines --------------------------------------------------

double rbf_kernel(double r, double lengthscale);
double matern_kernel(double r, double lengthscale, MaternNu nu);

// ---- Matrices --------------------------------------------------------------

/// Per-point cache for repeated Beta kernel evaluation under fixed bandwidths.
/// Holds x_i/h_i, (1-x_i)/h_i and the per-point log normalizer.
class BetaFeatures {
public:
  BetaFeatures(const Eigen::MatrixXd& points, std::span<const double> h);

  Eigen::Index size() const noexcept { return scaled_x_.rows(); }
  double log_kernel(Eigen::Index i, const BetaFeatures& other, Eigen::Index j) const noexcept;

private:
  Eigen::MatrixXd scaled_x_;   // x / h, row per point
  Eigen::MatrixXd scaled_1mx_; // (1 - x) / h
  Eigen::VectorXd log_norm_;   // sum_i lnG(1 + x_i/h_i) + lnG(1 + (1-x_i)/h_i)
  double log_c_ = 0.0;         // sum_i 2 lnG(1/h_i + 2) - lnG(2/h_i + 2)
};

/// Kernel value between two points given as raw coordinate spans. Beta inputs
/// must lie in the unit cube; stationary kernels accept any coordinates.
double kernel_value(const KernelSpec& spec, std::span<const double> x, std::span<const double> y);

/// Symmetric n x n Gram matrix over the rows of `points` (n x d).
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& points, const KernelSpec& spec);

/// Overload for a list of unit points.
Eigen::MatrixXd kernel_matrix(std::span<const UnitPoint> points, const KernelSpec& spec);

/// Rectangular cross-covariance between rows of `a` (n x d) and `b` (m x d).
Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const KernelSpec& spec);

/// Prior variances k(x, x) for every row.
Eigen::VectorXd kernel_diagonal(const Eigen::MatrixXd& points, const KernelSpec& spec);

/// Pack unit points as rows of a matrix.
Eigen::MatrixXd to_matrix(std::span<const UnitPoint> points);

} // namespace betabo

#endif // BETABO_KERNELS_HPP
