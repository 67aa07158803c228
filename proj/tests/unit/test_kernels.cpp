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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include "betabo/error.hpp"
#include "betabo/kernels.hpp"

using namespace betabo;

namespace {

UnitPoint pt(std::initializer_list<double> c) { return UnitPoint(std::vector<double>(c)); }

std::vector<double> hs(std::size_t d, double h) { return std::vector<double>(d, h); }

// 1D probability product integral with Boost's Beta densities and tanh-sinh.
double tanh_sinh_oracle_1d(double x, double y, double h) {
  const boost::math::beta_distribution<double> p(1 + x / h, 1 + (1 - x) / h);
  const boost::math::beta_distribution<double> q(1 + y / h, 1 + (1 - y) / h);
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(
      [&](double s) { return boost::math::pdf(p, s) * boost::math::pdf(q, s); }, 0.0, 1.0);
}

// General-nu Matern through the modified Bessel function of the second kind.
double matern_bessel(double r, double ell, double nu) {
  if (r == 0.0) return 1.0;
  const double z = std::sqrt(2 * nu) * r / ell;
  return std::pow(2.0, 1 - nu) / boost::math::tgamma(nu) * std::pow(z, nu) *
         boost::math::cyl_bessel_k(nu, z);
}

double min_over_max_eigen(const Eigen::MatrixXd& k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff();
}

Eigen::MatrixXd uniform_design(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
  return x;
}

} // namespace

TEST_CASE("UnitPoint validation") {
  CHECK_NOTHROW(pt({0.0, 1.0, 0.5}));
  CHECK_THROWS_AS(pt({1.5}), DomainError);
  CHECK_THROWS_AS(pt({-0.1}), DomainError);
  CHECK_THROWS(UnitPoint(std::vector<double>{}));
}

TEST_CASE("BetaShape from a mode") {
  for (double x : {0.0, 0.3, 1.0}) {
    for (double h : {0.05, 0.5, 2.0}) {
      const auto s = BetaShape::from_mode(x, h);
      CHECK(s.alpha >= 1.0);
      CHECK(s.beta >= 1.0);
      CHECK(s.alpha + s.beta == doctest::Approx(2 + 1 / h).epsilon(1e-14));
    }
  }
  CHECK_THROWS(BetaShape::from_mode(0.5, 0.0));
}

TEST_CASE("KernelSpec invariants") {
  CHECK_THROWS(KernelSpec::beta({0.5, 0.0}));
  CHECK_THROWS(KernelSpec::beta({}));
  CHECK_THROWS(KernelSpec::rbf(0.0));
  CHECK_THROWS(KernelSpec::matern(-1.0));
  CHECK_THROWS_AS(matern_nu_from_value(1.0), DomainError);
  CHECK(matern_nu_from_value(2.5) == MaternNu::FiveHalves);
  CHECK(KernelSpec::beta_shared(0.3, 4).bandwidths() == hs(4, 0.3));
}

TEST_CASE("Beta kernel closed-form anchors at h = 1") {
  const auto h = hs(1, 1.0);
  const double center = 32.0 / (3.0 * std::numbers::pi * std::numbers::pi);
  CHECK(beta_kernel(pt({0.5}), pt({0.5}), h) == doctest::Approx(center).epsilon(1e-12));
  CHECK(beta_kernel(pt({0.5}), pt({0.5}), h) == doctest::Approx(1.080755).epsilon(1e-5));
  CHECK(beta_kernel(pt({0.0}), pt({1.0}), h) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(beta_kernel(pt({0.0}), pt({0.0}), h) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("Beta kernel product structure") {
  const auto v = beta_kernel(pt({0.5, 0.0}), pt({0.5, 1.0}), hs(2, 1.0));
  CHECK(v == doctest::Approx(beta_kernel(pt({0.5}), pt({0.5}), hs(1, 1.0)) *
                             beta_kernel(pt({0.0}), pt({1.0}), hs(1, 1.0)))
                 .epsilon(1e-12));
}

TEST_CASE("Beta kernel symmetry and reflection") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0), lh(std::log(0.05), std::log(2.0));
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 1 + i % 4;
    std::vector<double> a(d), b(d), ra(d), rb(d), h(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
      ra[k] = 1 - a[k];
      rb[k] = 1 - b[k];
      h[k] = std::exp(lh(rng));
    }
    const UnitPoint x(a), y(b);
    CHECK(beta_kernel(x, y, h) == beta_kernel(y, x, h));
    CHECK(beta_kernel(UnitPoint(ra), UnitPoint(rb), h) ==
          doctest::Approx(beta_kernel(x, y, h)).epsilon(1e-9));
  }
}

TEST_CASE("Beta kernel matches its defining integral") {
  const auto check = [](double x, double y, double h) {
    const double closed = beta_kernel(pt({x}), pt({y}), hs(1, h));
    const double gl = beta_kernel_quadrature_oracle(pt({x}), pt({y}), hs(1, h));
    const double ts = tanh_sinh_oracle_1d(x, y, h);
    CHECK(std::abs(closed - gl) <= 1e-6 * gl);
    CHECK(std::abs(closed - ts) <= 1e-6 * ts);
  };
  check(0.25, 0.75, 0.5);
  check(0.0, 0.0, 1.0);
  check(0.5, 0.5, 1.0);
  check(0.1, 0.9, 0.05);
  check(0.02, 0.03, 0.07);
  check(0.7, 0.2, 2.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0), lh(std::log(0.05), std::log(2.0));
  for (int i = 0; i < 100; ++i) {
    const std::size_t d = 1 + i % 3;
    std::vector<double> a(d), b(d), h(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
      h[k] = std::exp(lh(rng));
    }
    const double closed = beta_kernel(UnitPoint(a), UnitPoint(b), h);
    const double oracle = beta_kernel_quadrature_oracle(UnitPoint(a), UnitPoint(b), h);
    CHECK(std::abs(closed - oracle) <= 1e-6 * oracle);
  }
}

TEST_CASE("quadrature oracle guards its range") {
  CHECK_THROWS(beta_kernel_quadrature_oracle(pt({0.5}), pt({0.5}), hs(1, 0.01)));
  CHECK_THROWS(beta_kernel_quadrature_oracle(pt({0.5, 0.5, 0.5, 0.5, 0.5}),
                                             pt({0.5, 0.5, 0.5, 0.5, 0.5}), hs(5, 1.0)));
}

TEST_CASE("Beta kernel rejects mismatched dimensions and bad bandwidths") {
  CHECK_THROWS_AS(beta_kernel(pt({0.5}), pt({0.5, 0.5}), hs(1, 1.0)), DimensionMismatch);
  CHECK_THROWS_AS(beta_kernel(pt({0.5}), pt({0.5}), hs(2, 1.0)), DimensionMismatch);
  CHECK_THROWS(beta_kernel(pt({0.5}), pt({0.5}), hs(1, -1.0)));
}

TEST_CASE("Beta kernel stays finite for small h in high dimension") {
  std::vector<double> a(20, 0.3), b(20, 0.31);
  const double v = beta_kernel(UnitPoint(a), UnitPoint(b), hs(20, 0.01));
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
}

TEST_CASE("diagonal form") {
  CHECK(beta_kernel_diag(pt({0.0}), hs(1, 1.0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(beta_kernel_diag(pt({0.5}), hs(1, 1.0)) == doctest::Approx(1.080755).epsilon(1e-5));
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0), lh(std::log(0.05), std::log(2.0));
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = 1 + i % 6;
    std::vector<double> a(d), r(d), h(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = u(rng);
      r[k] = 1 - a[k];
      h[k] = std::exp(lh(rng));
    }
    const double diag = beta_kernel_diag(UnitPoint(a), h);
    CHECK(diag == doctest::Approx(beta_kernel(UnitPoint(a), UnitPoint(a), h)).epsilon(1e-12));
    CHECK(diag == doctest::Approx(beta_kernel_diag(UnitPoint(r), h)).epsilon(1e-9));
  }
}

TEST_CASE("non-stationarity witness") {
  const double corner = beta_kernel(pt({0.0}), pt({0.0}), hs(1, 1.0));
  const double middle = beta_kernel(pt({0.5}), pt({0.5}), hs(1, 1.0));
  CHECK(corner == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
  CHECK(middle == doctest::Approx(1.080755).epsilon(1e-5));
  CHECK(corner != doctest::Approx(middle));
}

TEST_CASE("stated diagonal bound: formula values") {
  CHECK(beta_diag_upper_bound(1, 1.0) ==
        doctest::Approx(4.0 * std::sqrt(2.5 / std::numbers::pi)).epsilon(1e-14));
  CHECK(beta_diag_upper_bound(1, 1.0) == doctest::Approx(3.5683).epsilon(1e-4));
  CHECK(beta_diag_upper_bound(2, 1.0) == doctest::Approx(12.733).epsilon(1e-4));
  CHECK(beta_kernel_diag(pt({0.0}), hs(1, 1.0)) <= beta_diag_upper_bound(1, 1.0));
  CHECK_THROWS(beta_diag_upper_bound(1, 0.0));
  CHECK_THROWS(beta_diag_upper_bound(0, 1.0));
}

TEST_CASE("stated diagonal bound holds for h >= 1 and fails at h = 0.5") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double h : {1.0, 1.5}) {
    for (int d = 1; d <= 10; ++d) {
      for (int i = 0; i < 50; ++i) {
        std::vector<double> x(d);
        for (auto& v : x) v = u(rng);
        CHECK(beta_kernel_diag(UnitPoint(x), hs(d, h)) <= beta_diag_upper_bound(d, h));
      }
    }
  }
  // At a vertex with h = 0.5 the diagonal is 1.8 while the stated bound is
  // 1.5 sqrt(3.5 / pi) ~ 1.583.
  CHECK(beta_kernel_diag(pt({0.0}), hs(1, 0.5)) == doctest::Approx(1.8).epsilon(1e-9));
  CHECK(beta_kernel_diag(pt({0.0}), hs(1, 0.5)) > beta_diag_upper_bound(1, 0.5));
}

TEST_CASE("corrected diagonal bound holds everywhere") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double h : {0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0}) {
    for (int d = 1; d <= 10; ++d) {
      for (int i = 0; i < 50; ++i) {
        std::vector<double> x(d);
        for (auto& v : x) v = (i < 5) ? static_cast<double>(i % 2) : u(rng);
        CHECK(beta_kernel_diag(UnitPoint(x), hs(d, h)) <= beta_diag_upper_bound_corrected(d, h));
      }
    }
  }
}

TEST_CASE("RBF values") {
  CHECK(rbf_kernel(0.0, 1.0) == 1.0);
  CHECK(rbf_kernel(1.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(rbf_kernel(3.0, 1.0) == doctest::Approx(0.011109).epsilon(1e-4));
  CHECK_THROWS(rbf_kernel(1.0, 0.0));
}

TEST_CASE("Matern values and Bessel cross-check") {
  for (auto nu : {MaternNu::Half, MaternNu::ThreeHalves, MaternNu::FiveHalves}) {
    CHECK(matern_kernel(0.0, 1.0, nu) == 1.0);
    for (double r : {0.01, 0.3, 1.0, 2.7, 8.0}) {
      for (double ell : {0.2, 1.0, 3.0}) {
        CHECK(matern_kernel(r, ell, nu) ==
              doctest::Approx(matern_bessel(r, ell, nu_value(nu))).epsilon(1e-10));
      }
    }
  }
  CHECK(matern_kernel(1.0, 1.0, MaternNu::Half) == doctest::Approx(std::exp(-1.0)));
  CHECK(matern_kernel(1.0, 1.0, MaternNu::FiveHalves) ==
        doctest::Approx((1 + std::sqrt(5.0) + 5.0 / 3.0) * std::exp(-std::sqrt(5.0))));
  CHECK(matern_kernel(1.0, 1.0, MaternNu::FiveHalves) == doctest::Approx(0.52399).epsilon(1e-5));
  CHECK_THROWS(matern_kernel(1.0, -1.0, MaternNu::Half));
}

TEST_CASE("kernel_matrix small cases") {
  for (const auto& spec : {KernelSpec::beta_shared(0.4, 2), KernelSpec::rbf(0.5),
                           KernelSpec::matern(0.5)}) {
    const std::vector<UnitPoint> one{pt({0.2, 0.7})};
    const auto k1 = kernel_matrix(one, spec);
    REQUIRE(k1.rows() == 1);
    CHECK(k1(0, 0) == doctest::Approx(kernel_value(spec, one[0].coords(), one[0].coords())));
  }
  const std::vector<UnitPoint> twin{pt({0.3}), pt({0.3})};
  for (const auto& spec : {KernelSpec::rbf(0.5), KernelSpec::matern(0.5)}) {
    const auto k = kernel_matrix(twin, spec);
    CHECK(k == Eigen::MatrixXd::Ones(2, 2));
  }
  const std::vector<UnitPoint> mixed{pt({0.3}), pt({0.3, 0.4})};
  CHECK_THROWS(kernel_matrix(mixed, KernelSpec::rbf(1.0)));
}

TEST_CASE("kernel_matrix is exactly symmetric and consistent with cross_kernel") {
  std::mt19937_64 rng(37);
  const auto x = uniform_design(30, 3, rng);
  for (const auto& spec : {KernelSpec::beta({0.2, 0.5, 1.3}), KernelSpec::rbf(0.3),
                           KernelSpec::matern(0.3, MaternNu::ThreeHalves)}) {
    const auto k = kernel_matrix(x, spec);
    CHECK(k == k.transpose());
    const auto c = cross_kernel(x, x, spec);
    CHECK((k - c).cwiseAbs().maxCoeff() <= 1e-12 * k.cwiseAbs().maxCoeff());
    const auto diag = kernel_diagonal(x, spec);
    CHECK((diag - k.diagonal()).cwiseAbs().maxCoeff() <= 1e-12 * diag.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("kernel matrices are numerically PSD") {
  std::mt19937_64 rng(41);
  const auto x50 = uniform_design(50, 3, rng);
  CHECK(min_over_max_eigen(kernel_matrix(x50, KernelSpec::beta_shared(0.25, 3))) >= -1e-8);
  for (std::size_t d : {1, 3, 10}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto x = uniform_design(40, d, rng);
      for (const auto& spec :
           {KernelSpec::beta_shared(0.3, d), KernelSpec::rbf(0.5), KernelSpec::matern(0.5)}) {
        CHECK(min_over_max_eigen(kernel_matrix(x, spec)) >= -1e-8);
      }
    }
  }
}
