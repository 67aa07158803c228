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
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "betabo/bo_loop.hpp"
#include "betabo/rng.hpp"
#include "betabo/sobol.hpp"

using namespace betabo;

namespace {

BlackBox unit_box_1d(std::function<double(std::span<const double>)> f) {
  return BlackBox{"f", std::move(f), DomainBox({0.0}, {1.0}), std::nullopt};
}

BoConfig small_config(KernelKind kernel, std::size_t n_init, std::size_t n_iter,
                      std::uint64_t seed) {
  BoConfig c;
  c.kernel = kernel;
  c.n_init = n_init;
  c.n_iter = n_iter;
  c.seed = seed;
  return c;
}

Trajectory fake_trajectory(std::vector<double> values, double coord = 0.5) {
  Trajectory t;
  t.dim = 1;
  double best = values.front();
  for (std::size_t i = 0; i < values.size(); ++i) {
    best = std::min(best, values[i]);
    UnitPoint u({coord});
    t.records.push_back({i, u, {coord}, values[i], best, boundary_distance(u), {}});
  }
  return t;
}

void check_trajectory_invariants(const Trajectory& t, const BlackBox& box, std::size_t expected) {
  REQUIRE(t.records.size() == expected);
  double best = INFINITY;
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& r = t.records[i];
    CHECK(r.iteration == i);
    best = std::min(best, r.value);
    CHECK(r.best == best);
    CHECK(box.domain.contains(r.raw));
    for (double v : r.unit.coords()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(r.delta_boundary == boundary_distance(r.unit));
  }
}

} // namespace

TEST_CASE("seed derivation is a fixed function") {
  static_assert(splitmix64(0) == splitmix64(0));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
  CHECK(derive_seed(1, seed_stream::kSobolInit) != derive_seed(1, seed_stream::kAcquisition));
}

TEST_CASE("unscrambled Sobol matches the Joe-Kuo sequence") {
  const auto one = sobol_init(1, 2, 0, false);
  CHECK(one[0][0] == 0.0);
  CHECK(one[1][0] == 0.5);
  // First eight points in four dimensions, as produced by SciPy's unscrambled
  // Sobol generator.
  const double ref[8][4] = {{0.0, 0.0, 0.0, 0.0},         {0.5, 0.5, 0.5, 0.5},
                            {0.75, 0.25, 0.25, 0.25},     {0.25, 0.75, 0.75, 0.75},
                            {0.375, 0.375, 0.625, 0.875}, {0.875, 0.875, 0.125, 0.375},
                            {0.625, 0.125, 0.875, 0.625}, {0.125, 0.625, 0.375, 0.125}};
  const auto pts = sobol_points(4, 8, std::nullopt);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(pts[i][j] == ref[i][j]);
  }
}

TEST_CASE("scrambled Sobol is deterministic and stratified") {
  CHECK(sobol_init(3, 50, 9) == sobol_init(3, 50, 9));
  CHECK_FALSE(sobol_init(3, 50, 9) == sobol_init(3, 50, 10));
  // Owen scrambling keeps the net property: 2^k points put exactly one point
  // in every dyadic interval of length 2^-k, in every coordinate.
  for (std::uint64_t seed : {1u, 2u, 77u}) {
    const auto pts = sobol_init(4, 256, seed);
    for (std::size_t j = 0; j < 4; ++j) {
      std::set<int> cells;
      for (const auto& p : pts) {
        CHECK(p[j] >= 0.0);
        CHECK(p[j] < 1.0);
        cells.insert(static_cast<int>(std::floor(p[j] * 256)));
      }
      CHECK(cells.size() == 256);
    }
  }
}

TEST_CASE("scrambled Sobol means are near one half") {
  const auto pts = sobol_init(5, 1000, 2024);
  for (std::size_t j = 0; j < 5; ++j) {
    double m = 0;
    for (const auto& p : pts) m += p[j] / 1000.0;
    CHECK(std::abs(m - 0.5) <= 0.02);
  }
  CHECK_THROWS(sobol_init(0, 5, 1));
  CHECK_THROWS(sobol_init(2, 0, 1));
}

TEST_CASE("constant objective") {
  const auto box = unit_box_1d([](std::span<const double>) { return 7.0; });
  for (auto k : {KernelKind::Beta, KernelKind::Matern}) {
    const auto t = run_bo(box, small_config(k, 3, 6, 1));
    check_trajectory_invariants(t, box, 9);
    for (const auto& r : t.records) CHECK(r.best == 7.0);
  }
}

TEST_CASE("1D quadratic is solved") {
  const auto box = unit_box_1d([](std::span<const double> x) { return (x[0] - 0.3) * (x[0] - 0.3); });
  const auto t = run_bo(box, small_config(KernelKind::Beta, 3, 30, 0));
  check_trajectory_invariants(t, box, 33);
  CHECK(t.final_best() <= 1e-3);
}

TEST_CASE("runs are deterministic, distinct and inside the box") {
  const auto bb = make_benchmark({FunctionName::Levy, 3, 3, 0.05});
  for (auto k : {KernelKind::Beta, KernelKind::Rbf}) {
    auto cfg = small_config(k, 0, 8, 5);
    cfg.acquisition.kind = AcquisitionKind::Ei;
    const auto a = run_bo(bb, cfg);
    const auto b = run_bo(bb, cfg);
    check_trajectory_invariants(a, bb, 9 + 8);
    CHECK(a.config.n_init == 9);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].unit == b.records[i].unit);
      CHECK(a.records[i].value == b.records[i].value);
      CHECK(a.records[i].hyperparameters == b.records[i].hyperparameters);
    }
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double dist = 0;
        for (std::size_t c = 0; c < 3; ++c) {
          dist = std::max(dist, std::abs(a.records[i].unit[c] - a.records[j].unit[c]));
        }
        CHECK(dist > 1e-9);
      }
    }
    for (std::size_t i = 0; i < 9; ++i) CHECK(a.records[i].hyperparameters.empty());
    CHECK(a.records.back().hyperparameters.size() == (k == KernelKind::Beta ? 3u : 1u));
  }
}

TEST_CASE("refit cadence") {
  const auto box = unit_box_1d([](std::span<const double> x) { return std::sin(9 * x[0]); });
  auto cfg = small_config(KernelKind::Beta, 3, 6, 3);
  cfg.hyperfit.refit_every = 0;
  const auto frozen = run_bo(box, cfg);
  for (std::size_t i = 3; i < frozen.records.size(); ++i) {
    CHECK(frozen.records[i].hyperparameters == std::vector{cfg.hyperfit.initial_bandwidth});
  }
  cfg.hyperfit.refit_every = 3;
  const auto sparse = run_bo(box, cfg);
  // proposals 0-2 share one fit, 3-5 the next
  CHECK(sparse.records[3].hyperparameters == sparse.records[5].hyperparameters);
}

TEST_CASE("logarithmic UCB schedule runs") {
  const auto box = unit_box_1d([](std::span<const double> x) { return x[0]; });
  auto cfg = small_config(KernelKind::Matern, 3, 5, 2);
  cfg.ucb_schedule = UcbSchedule::Logarithmic;
  check_trajectory_invariants(run_bo(box, cfg), box, 8);
}

TEST_CASE("black-box failure keeps the partial trajectory") {
  int calls = 0;
  const auto box = unit_box_1d([&calls](std::span<const double> x) {
    if (++calls > 5) throw std::runtime_error("objective crashed");
    return x[0];
  });
  try {
    run_bo(box, small_config(KernelKind::Beta, 3, 10, 0));
    FAIL("expected BlackBoxFailure");
  } catch (const BlackBoxFailure& e) {
    CHECK(e.partial().records.size() == 5);
    CHECK(std::string(e.what()).find("objective crashed") != std::string::npos);
  }
  const auto nan_box = unit_box_1d([](std::span<const double>) { return NAN; });
  CHECK_THROWS_AS(run_bo(nan_box, small_config(KernelKind::Beta, 2, 1, 0)), BlackBoxFailure);
}

TEST_CASE("summaries") {
  const std::vector<Trajectory> one{fake_trajectory({4, 2, 3})};
  const auto s1 = summarize(one);
  CHECK(s1.mean_final_best == 2.0);
  CHECK(s1.stderr_final_best == 0.0);

  const std::vector<Trajectory> two{fake_trajectory({5, 1}), fake_trajectory({3, 4})};
  const auto s2 = summarize(two);
  CHECK(s2.mean_final_best == 2.0);
  CHECK(s2.stderr_final_best == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s2.mean_best_curve == std::vector{4.0, 2.0});

  const auto s3 = summarize(one);
  for (double v : s3.mean_delta_boundary_curve) CHECK(v == 1.0);

  const std::vector<Trajectory> ragged{fake_trajectory({1, 2}), fake_trajectory({1})};
  CHECK_THROWS(summarize(ragged));
  CHECK_THROWS(summarize(std::vector<Trajectory>{}));
}
