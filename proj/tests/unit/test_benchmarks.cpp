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
#include <string>
#include <vector>

#include <doctest.h>

#include "betabo/benchmarks.hpp"
#include "betabo/error.hpp"

using namespace betabo;

namespace {

const std::string kData = BETABO_TEST_DATA_DIR;

constexpr FunctionName kAll[] = {FunctionName::Levy, FunctionName::Griewank, FunctionName::Ackley,
                                 FunctionName::BraninRepeated, FunctionName::Hartmann6Repeated};

std::size_t valid_dim(FunctionName f) {
  return f == FunctionName::Hartmann6Repeated ? 8 : 4;
}

} // namespace

TEST_CASE("function names round-trip") {
  for (auto f : kAll) CHECK(function_from_name(function_name(f)) == f);
  CHECK_THROWS_AS(function_from_name("rosenbrock"), ConfigError);
}

TEST_CASE("values at the global minima") {
  CHECK(evaluate_function(FunctionName::Levy, std::vector{1.0, 1.0}) == doctest::Approx(0.0));
  CHECK(std::abs(evaluate_function(FunctionName::Levy, std::vector(7, 1.0))) <= 1e-12);
  for (std::size_t d : {1, 2, 5, 20}) {
    CHECK(std::abs(evaluate_function(FunctionName::Ackley, std::vector(d, 0.0))) <= 1e-12);
    CHECK(std::abs(evaluate_function(FunctionName::Griewank, std::vector(d, 0.0))) <= 1e-12);
  }
  const std::vector<double> h6{0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573};
  CHECK(evaluate_function(FunctionName::Hartmann6Repeated, h6) ==
        doctest::Approx(-3.32237).epsilon(1e-6));
  CHECK(evaluate_function(FunctionName::BraninRepeated,
                          std::vector{-std::numbers::pi, 12.275, std::numbers::pi, 2.275}) ==
        doctest::Approx(2 * 0.39788735772973816).epsilon(1e-12));
}

TEST_CASE("values at generic points match an independent evaluation") {
  // Reference values from straightforward NumPy implementations of the
  // textbook formulas.
  CHECK(evaluate_function(FunctionName::Levy, std::vector{0.0, 0.0}) ==
        doctest::Approx(0.7158445541169746).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::Levy, std::vector{2.5, -3.1, 7.0}) ==
        doctest::Approx(11.908164219319568).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::Ackley, std::vector{1.0, 2.0}) ==
        doctest::Approx(5.422131717799509).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::Ackley, std::vector{0.5, -0.3, 4.1}) ==
        doctest::Approx(9.473724865711622).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::Griewank, std::vector{10.0, -20.0}) ==
        doctest::Approx(1.1208309370669414).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::Griewank, std::vector{100.0, 5.0, -7.0}) ==
        doctest::Approx(3.02344393141857).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::BraninRepeated, std::vector{1.0, 2.0}) ==
        doctest::Approx(21.62763539206238).epsilon(1e-13));
  CHECK(evaluate_function(FunctionName::Hartmann6Repeated, std::vector(6, 0.5)) ==
        doctest::Approx(-0.5053149917022333).epsilon(1e-13));
  // d = 8: one block of six plus two inactive coordinates
  CHECK(evaluate_function(FunctionName::Hartmann6Repeated,
                          std::vector{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.9, 0.0}) ==
        doctest::Approx(-1.4069105761385297).epsilon(1e-13));
}

TEST_CASE("Branin has three minimizers and the first is the smallest") {
  const double v = 0.39788735772973816;
  CHECK(evaluate_function(FunctionName::BraninRepeated, std::vector{-std::numbers::pi, 12.275}) ==
        doctest::Approx(v).epsilon(1e-12));
  CHECK(evaluate_function(FunctionName::BraninRepeated, std::vector{std::numbers::pi, 2.275}) ==
        doctest::Approx(v).epsilon(1e-12));
  CHECK(evaluate_function(FunctionName::BraninRepeated, std::vector{9.42478, 2.475}) ==
        doctest::Approx(v).epsilon(1e-9));
  const auto opt = first_optimum(FunctionName::BraninRepeated, 2);
  CHECK(opt.point[0] == doctest::Approx(-std::numbers::pi));
  CHECK(opt.point[1] == doctest::Approx(12.275));
}

TEST_CASE("dimension rules") {
  CHECK_THROWS_AS(check_dimension(FunctionName::BraninRepeated, 3), DimensionMismatch);
  CHECK_THROWS_AS(check_dimension(FunctionName::Hartmann6Repeated, 5), DimensionMismatch);
  CHECK_NOTHROW(check_dimension(FunctionName::Hartmann6Repeated, 20));
  CHECK_THROWS(check_dimension(FunctionName::Levy, 0));
  CHECK_THROWS(evaluate_function(FunctionName::BraninRepeated, std::vector{1.0, 2.0, 3.0}));
  CHECK_THROWS_AS(evaluate_function(FunctionName::Levy, std::vector{11.0, 0.0}), DomainError);
}

TEST_CASE("known optima are attained") {
  for (auto f : kAll) {
    for (std::size_t d : {valid_dim(f), f == FunctionName::Hartmann6Repeated ? std::size_t{20} : std::size_t{2}}) {
      const auto opt = first_optimum(f, d);
      CHECK(opt.point.size() == d);
      CHECK(std::abs(evaluate_function(f, opt.point) - opt.value) <= 1e-9);
      for (int s = 1; s <= 3; ++s) {
        const auto bb = make_benchmark({f, d, s, 0.05});
        REQUIRE(bb.known_optimum);
        CHECK(std::abs(bb.evaluate(bb.known_optimum->point) - bb.known_optimum->value) <= 1e-9);
      }
    }
  }
  CHECK(first_optimum(FunctionName::Levy, 3).value == doctest::Approx(0.0));
  CHECK(first_optimum(FunctionName::Hartmann6Repeated, 20).value ==
        doctest::Approx(3 * -3.32237 + 2 * 0.0).epsilon(1e-5));
}

TEST_CASE("canonical domains") {
  CHECK(canonical_domain(FunctionName::Levy, 2) == DomainBox({-10, -10}, {10, 10}));
  CHECK(canonical_domain(FunctionName::Ackley, 1) == DomainBox({-32.768}, {32.768}));
  CHECK(canonical_domain(FunctionName::Griewank, 1) == DomainBox({-600}, {600}));
  CHECK(canonical_domain(FunctionName::BraninRepeated, 4) ==
        DomainBox({-5, 0, -5, 0}, {10, 15, 10, 15}));
  CHECK(canonical_domain(FunctionName::Hartmann6Repeated, 6) ==
        DomainBox(std::vector(6, 0.0), std::vector(6, 1.0)));
}

TEST_CASE("optima-location settings") {
  const BenchmarkSpec s1{FunctionName::Levy, 2, 1, 0.05};
  CHECK(shift_domain(s1) == canonical_domain(FunctionName::Levy, 2));

  const auto b3 = shift_domain({FunctionName::Levy, 2, 3, 0.05});
  for (int i = 0; i < 2; ++i) {
    CHECK(b3.lower()[i] == doctest::Approx(0.5 / 0.95).epsilon(1e-14));
    CHECK(b3.upper()[i] == 10.0);
  }
  const auto b2 = shift_domain({FunctionName::Levy, 2, 2, 0.05});
  CHECK(b2.lower()[0] == b3.lower()[0]);
  CHECK(b2.lower()[1] == -10.0);
  CHECK(b2.upper() == b3.upper());
}

TEST_CASE("shifted boxes keep the optimum at relative position epsilon") {
  for (auto f : kAll) {
    const std::size_t d = valid_dim(f);
    for (double eps : {0.02, 0.05, 0.1}) {
      const auto opt = first_optimum(f, d);
      const auto canonical = canonical_domain(f, d);
      const auto b2 = shift_domain({f, d, 2, eps});
      const auto u2 = to_unit(opt.point, b2);
      CHECK(u2[0] == doctest::Approx(eps).epsilon(1e-9));
      const auto b3 = shift_domain({f, d, 3, eps});
      const auto u3 = to_unit(opt.point, b3);
      for (std::size_t i = 0; i < d; ++i) {
        CHECK(std::abs(u3[i] - eps) <= 1e-9);
        CHECK(b3.lower()[i] >= canonical.lower()[i]);
        CHECK(b3.upper()[i] == canonical.upper()[i]);
      }
      CHECK(std::abs(boundary_distance(u3) - 2 * eps) <= 1e-9);
    }
  }
}

TEST_CASE("settings that would leave the canonical domain are infeasible") {
  // Branin x1* = -pi: m = (-pi - 0.3 * 10) / 0.7 < -5
  CHECK_THROWS_AS(shift_domain({FunctionName::BraninRepeated, 2, 2, 0.3}), InfeasibleSetting);
  CHECK_THROWS_AS(make_benchmark({FunctionName::BraninRepeated, 2, 3, 0.3}), InfeasibleSetting);
  CHECK_NOTHROW(shift_domain({FunctionName::BraninRepeated, 2, 1, 0.3}));
}

TEST_CASE("BenchmarkSpec validation") {
  CHECK_THROWS(BenchmarkSpec{FunctionName::Levy, 2, 4, 0.05}.validate());
  CHECK_THROWS(BenchmarkSpec{FunctionName::Levy, 2, 1, 0.5}.validate());
  CHECK_THROWS(BenchmarkSpec{FunctionName::Levy, 2, 1, 0.0}.validate());
  CHECK_THROWS(BenchmarkSpec{FunctionName::BraninRepeated, 3, 1, 0.05}.validate());
}

TEST_CASE("unit-cube maps") {
  const DomainBox box({-2, 0, 5}, {2, 10, 6});
  const auto lo = to_unit(box.lower(), box);
  for (std::size_t i = 0; i < 3; ++i) CHECK(lo[i] == 0.0);
  const auto mid = to_unit(std::vector{0.0, 5.0, 5.5}, box);
  for (std::size_t i = 0; i < 3; ++i) CHECK(mid[i] == 0.5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    std::vector<double> x{-2 + 4 * u(rng), 10 * u(rng), 5 + u(rng)};
    const auto back = from_unit(to_unit(x, box), box);
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(back[i] - x[i]));
  }
  CHECK(worst <= 1e-12);
  CHECK_THROWS(to_unit(std::vector{3.0, 0.0, 5.0}, box));
  CHECK_THROWS(to_unit(std::vector{0.0, 0.0}, box));
  CHECK_THROWS(DomainBox({1.0}, {1.0}));
  CHECK_THROWS(DomainBox({0.0, 1.0}, {1.0}));
}

TEST_CASE("boundary distance") {
  CHECK(boundary_distance(UnitPoint({0.5, 0.5, 0.5})) == 1.0);
  CHECK(boundary_distance(UnitPoint({0.0, 0.5, 0.5})) == 0.0);
  CHECK(boundary_distance(UnitPoint({0.75, 0.5})) == doctest::Approx(0.5));
  CHECK(boundary_distance(UnitPoint({1.0, 0.5})) == 0.0);
}

TEST_CASE("partition volumes") {
  const auto v = partition_volumes(20, 0.05);
  CHECK(v.center == doctest::Approx(0.1216).epsilon(1e-3));
  CHECK(v.vertices == doctest::Approx(1e-20).epsilon(1e-12));
  CHECK(v.faces == doctest::Approx(0.8784).epsilon(1e-3));
  const auto w = partition_volumes(1, 0.25);
  CHECK(w.center == 0.5);
  CHECK(w.vertices == 0.5);
  CHECK(w.faces == 0.0);
  for (std::size_t d = 1; d <= 30; ++d) {
    for (double eps : {0.01, 0.05, 0.2, 0.45}) {
      const auto p = partition_volumes(d, eps);
      CHECK(std::abs(p.center + p.faces + p.vertices - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS(partition_volumes(0, 0.1));
  CHECK_THROWS(partition_volumes(2, 0.5));
}

TEST_CASE("external black box speaks the stdin/stdout protocol") {
  const DomainBox box({-1, -1}, {1, 1});
  const auto bb = make_external_black_box("python3 " + kData + "/shifted_sphere.py", box);
  const std::vector<double> x{0.1, -0.3};
  const double expect = (0.1 - 0.25) * (0.1 - 0.25) + (-0.3 - 0.25) * (-0.3 - 0.25);
  CHECK(bb.evaluate(x) == expect);
  CHECK(bb.domain == box);
  CHECK_FALSE(bb.known_optimum);
}

TEST_CASE("external black box failures") {
  const DomainBox box({0}, {1});
  const std::vector<double> x{0.5};
  CHECK_THROWS_AS(make_external_black_box("exit 3", box).evaluate(x), BlackBoxEvaluationError);
  CHECK_THROWS_AS(make_external_black_box("echo not-a-number", box).evaluate(x),
                  BlackBoxEvaluationError);
  CHECK_THROWS_AS(make_external_black_box("echo 1 2", box).evaluate(x), BlackBoxEvaluationError);
  CHECK(make_external_black_box("cat > /dev/null; echo ' 2.5 '", box).evaluate(x) == 2.5);
  CHECK_THROWS(make_external_black_box("", box));
}
