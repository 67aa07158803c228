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

#include "betabo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "betabo/special_functions.hpp"

namespace betabo {

namespace {

// Exact 0/1 coordinates are admissible but are pulled inside so that vertex
// behavior is uniform. Moves values by < 1e-9.
constexpr double kCoordClamp = 1e-12;

double clamp_coord(double x) { return std::clamp(x, kCoordClamp, 1.0 - kCoordClamp); }

void check_bandwidths(std::span<const double> h) {
  if (h.empty()) {
    throw DimensionMismatch("Beta kernel needs at least one bandwidth");
  }
  for (double hi : h) {
    if (!(hi > 0.0) || !std::isfinite(hi)) {
      throw DomainError("Beta kernel bandwidths must be positive and finite");
    }
  }
}

void check_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

void check_unit(std::span<const double> x) {
  for (double xi : x) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw DomainError("Beta kernel input outside the unit hypercube");
    }
  }
}

// 2 lnG(1/h + 2) - lnG(2/h + 2)
double log_normalizer(double h) {
  return 2.0 * detail::lgamma_pos(1.0 / h + 2.0) - detail::lgamma_pos(2.0 / h + 2.0);
}

double beta_log_kernel(std::span<const double> x, std::span<const double> y,
                       std::span<const double> h) {
  double log_c = 0.0;
  double cross = 0.0;
  double norm_x = 0.0;
  double norm_y = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double xi = clamp_coord(x[i]);
    const double yi = clamp_coord(y[i]);
    const double ax = xi / h[i], bx = (1.0 - xi) / h[i];
    const double ay = yi / h[i], by = (1.0 - yi) / h[i];
    log_c += log_normalizer(h[i]);
    cross += detail::lgamma_pos(1.0 + (ax + ay)) + detail::lgamma_pos(1.0 + (bx + by));
    norm_x += detail::lgamma_pos(1.0 + ax) + detail::lgamma_pos(1.0 + bx);
    norm_y += detail::lgamma_pos(1.0 + ay) + detail::lgamma_pos(1.0 + by);
  }
  return log_c + cross - (norm_x + norm_y);
}

// int_0^{1/2} s^p (1-s)^q ds on a mesh graded geometrically toward s = 0,
// 20-point Gauss-Legendre per panel. Handles p close to zero, where the
// integrand has an unbounded derivative at the origin.
double half_moment(double p, double q) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  auto f = [p, q](double s) { return std::exp(p * std::log(s) + q * std::log1p(-s)); };
  constexpr int kGradedLevels = 50;
  constexpr int kUniformPanels = 8;
  double total = 0.0;
  double lo = std::ldexp(1.0, -kGradedLevels);
  total += Rule::integrate(f, 0.0, lo);
  for (int k = kGradedLevels; k > 2; --k) {
    const double hi = std::ldexp(1.0, -(k - 1));
    total += Rule::integrate(f, lo, hi);
    lo = hi;
  }
  const double width = (0.5 - 0.25) / kUniformPanels;
  for (int i = 0; i < kUniformPanels; ++i) {
    total += Rule::integrate(f, 0.25 + i * width, 0.25 + (i + 1) * width);
  }
  return total;
}

double unit_moment(double p, double q) { return half_moment(p, q) + half_moment(q, p); }

} // namespace

// ---- types -----------------------------------------------------------------

UnitPoint::UnitPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw DimensionMismatch("UnitPoint needs at least one coordinate");
  }
  for (double c : coords_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw DomainError("UnitPoint coordinate outside [0, 1]: " + std::to_string(c));
    }
  }
}

BetaShape BetaShape::from_mode(double x, double h) {
  if (!(h > 0.0)) {
    throw DomainError("bandwidth must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("mode must lie in [0, 1]");
  }
  return {1.0 + x / h, 1.0 + (1.0 - x) / h};
}

double nu_value(MaternNu nu) noexcept {
  switch (nu) {
  case MaternNu::Half:
    return 0.5;
  case MaternNu::ThreeHalves:
    return 1.5;
  case MaternNu::FiveHalves:
    return 2.5;
  }
  return 2.5;
}

MaternNu matern_nu_from_value(double nu) {
  if (nu == 0.5) return MaternNu::Half;
  if (nu == 1.5) return MaternNu::ThreeHalves;
  if (nu == 2.5) return MaternNu::FiveHalves;
  throw DomainError("unsupported Matern smoothness " + std::to_string(nu) +
                    " (supported: 0.5, 1.5, 2.5)");
}

KernelSpec KernelSpec::beta(std::vector<double> bandwidths) {
  check_bandwidths(bandwidths);
  return KernelSpec(BetaParams{std::move(bandwidths)});
}

KernelSpec KernelSpec::beta_shared(double h, std::size_t d) {
  return beta(std::vector<double>(d, h));
}

KernelSpec KernelSpec::rbf(double lengthscale) {
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
    throw DomainError("RBF lengthscale must be positive");
  }
  return KernelSpec(RbfParams{lengthscale});
}

KernelSpec KernelSpec::matern(double lengthscale, MaternNu nu) {
  if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
    throw DomainError("Matern lengthscale must be positive");
  }
  return KernelSpec(MaternParams{lengthscale, nu});
}

KernelKind KernelSpec::kind() const noexcept {
  switch (params_.index()) {
  case 0:
    return KernelKind::Beta;
  case 1:
    return KernelKind::Rbf;
  default:
    return KernelKind::Matern;
  }
}

double KernelSpec::lengthscale() const {
  if (const auto* p = std::get_if<RbfParams>(&params_)) return p->lengthscale;
  return std::get<MaternParams>(params_).lengthscale;
}

const char* kernel_name(KernelKind kind) noexcept {
  switch (kind) {
  case KernelKind::Beta:
    return "beta";
  case KernelKind::Rbf:
    return "rbf";
  case KernelKind::Matern:
    return "matern";
  }
  return "?";
}

// ---- Beta ------------------------------------------------------------------

double beta_kernel(const UnitPoint& x, const UnitPoint& y, std::span<const double> h) {
  check_dims(x.dim(), y.dim(), "beta_kernel");
  check_dims(x.dim(), h.size(), "beta_kernel bandwidths");
  check_bandwidths(h);
  return std::exp(beta_log_kernel(x.coords(), y.coords(), h));
}

double beta_kernel_quadrature_oracle(const UnitPoint& x, const UnitPoint& y,
                                     std::span<const double> h) {
  check_dims(x.dim(), y.dim(), "beta_kernel_quadrature_oracle");
  check_dims(x.dim(), h.size(), "beta_kernel_quadrature_oracle bandwidths");
  check_bandwidths(h);
  if (x.dim() > 4) {
    throw DomainError("quadrature oracle supports d <= 4");
  }
  double value = 1.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] < 0.05) {
      throw DomainError("quadrature oracle requires h >= 0.05");
    }
    const auto px = BetaShape::from_mode(clamp_coord(x[i]), h[i]);
    const auto py = BetaShape::from_mode(clamp_coord(y[i]), h[i]);
    const double norm_x = unit_moment(px.alpha - 1.0, px.beta - 1.0);
    const double norm_y = unit_moment(py.alpha - 1.0, py.beta - 1.0);
    const double overlap =
        unit_moment(px.alpha + py.alpha - 2.0, px.beta + py.beta - 2.0);
    value *= overlap / (norm_x * norm_y);
  }
  return value;
}

double beta_kernel_diag(const UnitPoint& x, std::span<const double> h) {
  check_dims(x.dim(), h.size(), "beta_kernel_diag");
  check_bandwidths(h);
  double log_k = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double xi = clamp_coord(x[i]);
    const double a = xi / h[i];
    const double b = (1.0 - xi) / h[i];
    log_k += log_normalizer(h[i]) + detail::lgamma_pos(2.0 * a + 1.0) +
             detail::lgamma_pos(2.0 * b + 1.0) -
             2.0 * (detail::lgamma_pos(a + 1.0) + detail::lgamma_pos(b + 1.0));
  }
  return std::exp(log_k);
}

double beta_diag_upper_bound(int d, double h) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  using std::numbers::pi;
  const double dd = d;
  return std::exp2(3.0 * dd - 2.0 * dd / h) * std::pow(1.0 / h + 1.0, dd) *
         std::pow(1.0 / (h * pi) + 3.0 / (2.0 * pi), dd / 2.0);
}

double beta_diag_upper_bound_corrected(int d, double h) {
  if (d < 1) throw DomainError("dimension must be >= 1");
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  using std::numbers::pi;
  const double dd = d;
  return std::exp2(3.0 * dd) * std::pow(1.0 / h + 1.0, dd) *
         std::pow(1.0 / (h * pi) + 3.0 / (2.0 * pi), dd / 2.0);
}

// ---- stationary --------------------------------------------------------------

double rbf_kernel(double r, double lengthscale) {
  if (!(lengthscale > 0.0)) throw DomainError("RBF lengthscale must be positive");
  if (!(r >= 0.0)) throw DomainError("distance must be nonnegative");
  return std::exp(-r * r / (2.0 * lengthscale * lengthscale));
}

double matern_kernel(double r, double lengthscale, MaternNu nu) {
  if (!(lengthscale > 0.0)) throw DomainError("Matern lengthscale must be positive");
  if (!(r >= 0.0)) throw DomainError("distance must be nonnegative");
  const double s = r / lengthscale;
  switch (nu) {
  case MaternNu::Half:
    return std::exp(-s);
  case MaternNu::ThreeHalves: {
    const double z = std::sqrt(3.0) * s;
    return (1.0 + z) * std::exp(-z);
  }
  case MaternNu::FiveHalves: {
    const double z = std::sqrt(5.0) * s;
    return (1.0 + z + z * z / 3.0) * std::exp(-z);
  }
  }
  throw DomainError("unsupported Matern smoothness");
}

// ---- matrices ----------------------------------------------------------------

BetaFeatures::BetaFeatures(const Eigen::MatrixXd& points, std::span<const double> h)
    : scaled_x_(points.rows(), points.cols()), scaled_1mx_(points.rows(), points.cols()),
      log_norm_(points.rows()) {
  check_dims(static_cast<std::size_t>(points.cols()), h.size(), "Beta kernel bandwidths");
  check_bandwidths(h);
  for (std::size_t i = 0; i < h.size(); ++i) log_c_ += log_normalizer(h[i]);
  for (Eigen::Index r = 0; r < points.rows(); ++r) {
    double norm = 0.0;
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      const double raw = points(r, c);
      if (!(raw >= 0.0 && raw <= 1.0)) {
        throw DomainError("Beta kernel input outside the unit hypercube");
      }
      const double x = clamp_coord(raw);
      const double a = x / h[c];
      const double b = (1.0 - x) / h[c];
      scaled_x_(r, c) = a;
      scaled_1mx_(r, c) = b;
      norm += detail::lgamma_pos(1.0 + a) + detail::lgamma_pos(1.0 + b);
    }
    log_norm_(r) = norm;
  }
}

double BetaFeatures::log_kernel(Eigen::Index i, const BetaFeatures& other,
                                Eigen::Index j) const noexcept {
  double cross = 0.0;
  for (Eigen::Index c = 0; c < scaled_x_.cols(); ++c) {
    cross += detail::lgamma_pos(1.0 + (scaled_x_(i, c) + other.scaled_x_(j, c))) +
             detail::lgamma_pos(1.0 + (scaled_1mx_(i, c) + other.scaled_1mx_(j, c)));
  }
  return log_c_ + cross - (log_norm_(i) + other.log_norm_(j));
}

namespace {

double stationary_value(const KernelSpec& spec, double r) {
  if (spec.kind() == KernelKind::Rbf) return rbf_kernel(r, spec.lengthscale());
  return matern_kernel(r, spec.lengthscale(), spec.nu());
}

double distance(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b,
                Eigen::Index j) {
  return (a.row(i) - b.row(j)).norm();
}

} // namespace

double kernel_value(const KernelSpec& spec, std::span<const double> x,
                    std::span<const double> y) {
  check_dims(x.size(), y.size(), "kernel_value");
  if (spec.kind() == KernelKind::Beta) {
    check_dims(x.size(), spec.bandwidths().size(), "kernel_value bandwidths");
    check_unit(x);
    check_unit(y);
    return std::exp(beta_log_kernel(x, y, spec.bandwidths()));
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - y[i]) * (x[i] - y[i]);
  return stationary_value(spec, std::sqrt(sq));
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& points, const KernelSpec& spec) {
  const Eigen::Index n = points.rows();
  if (n < 1) throw DimensionMismatch("kernel_matrix needs at least one point");
  Eigen::MatrixXd k(n, n);
  if (spec.kind() == KernelKind::Beta) {
    const BetaFeatures f(points, spec.bandwidths());
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        k(i, j) = k(j, i) = std::exp(f.log_kernel(i, f, j));
      }
    }
    return k;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      k(i, j) = k(j, i) = stationary_value(spec, distance(points, i, points, j));
    }
  }
  return k;
}

Eigen::MatrixXd kernel_matrix(std::span<const UnitPoint> points, const KernelSpec& spec) {
  return kernel_matrix(to_matrix(points), spec);
}

Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                             const KernelSpec& spec) {
  check_dims(static_cast<std::size_t>(a.cols()), static_cast<std::size_t>(b.cols()),
             "cross_kernel");
  Eigen::MatrixXd k(a.rows(), b.rows());
  if (spec.kind() == KernelKind::Beta) {
    const BetaFeatures fa(a, spec.bandwidths());
    const BetaFeatures fb(b, spec.bandwidths());
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        k(i, j) = std::exp(fa.log_kernel(i, fb, j));
      }
    }
    return k;
  }
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      k(i, j) = stationary_value(spec, distance(a, i, b, j));
    }
  }
  return k;
}

Eigen::VectorXd kernel_diagonal(const Eigen::MatrixXd& points, const KernelSpec& spec) {
  if (spec.kind() != KernelKind::Beta) return Eigen::VectorXd::Ones(points.rows());
  const BetaFeatures f(points, spec.bandwidths());
  Eigen::VectorXd diag(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) diag(i) = std::exp(f.log_kernel(i, f, i));
  return diag;
}

Eigen::MatrixXd to_matrix(std::span<const UnitPoint> points) {
  if (points.empty()) return {};
  const auto d = static_cast<Eigen::Index>(points.front().dim());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_dims(points[i].dim(), static_cast<std::size_t>(d), "to_matrix");
    m.row(static_cast<Eigen::Index>(i)) = points[i].as_vector().transpose();
  }
  return m;
}

} // namespace betabo
