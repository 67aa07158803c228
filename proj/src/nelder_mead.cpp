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

#include "betabo/detail/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace betabo::detail {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double sanitize(double v) {
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

} // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, std::span<const double> step,
                                      const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return sanitize(f(x));
  };

  const double nd = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = n > 1 ? 1.0 + 2.0 / nd : 2.0;
  const double rho = n > 1 ? 0.75 - 1.0 / (2.0 * nd) : 0.5;
  const double sigma = n > 1 ? 1.0 - 1.0 / nd : 0.5;

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, eval(x0)});
  if (n == 0) return {x0, simplex[0].f, evals};
  for (std::size_t i = 0; i < n && evals < options.max_evals; ++i) {
    auto x = x0;
    x[i] += step[i];
    simplex.push_back({x, eval(x)});
  }
  // Budget exhausted before the simplex was built.
  if (simplex.size() < n + 1) {
    auto best = std::min_element(simplex.begin(), simplex.end(),
                                 [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    return {best->x, best->f, evals};
  }

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  auto combine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + t * (w[i] - c[i]);
    return out;
  };

  order();
  while (evals < options.max_evals) {
    const double fbest = simplex.front().f;
    const double fworst = simplex.back().f;
    double xspread = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      for (std::size_t i = 0; i < n; ++i) {
        xspread = std::max(xspread, std::abs(simplex[v].x[i] - simplex[0].x[i]));
      }
    }
    if (std::isfinite(fworst) &&
        std::abs(fworst - fbest) <= options.ftol * (1.0 + std::abs(fbest)) &&
        xspread <= options.xtol * 1e3) {
      break;
    }
    if (xspread <= options.xtol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / nd;
    }
    Vertex& worst = simplex.back();
    const auto xr = combine(centroid, worst.x, -alpha);
    const double fr = eval(xr);
    if (fr < simplex.front().f) {
      const auto xe = combine(centroid, worst.x, -alpha * gamma);
      const double fe = evals < options.max_evals ? eval(xe) : fr + 1.0;
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr < simplex[n - 1].f) {
      worst = {xr, fr};
    } else {
      const bool outside = fr < worst.f;
      const auto xc = combine(centroid, worst.x, outside ? -alpha * rho : rho);
      const double fc = evals < options.max_evals ? eval(xc) : std::numeric_limits<double>::infinity();
      if (fc < std::min(fr, worst.f)) {
        worst = {xc, fc};
      } else {
        for (std::size_t v = 1; v <= n && evals < options.max_evals; ++v) {
          simplex[v].x = combine(simplex[0].x, simplex[v].x, sigma);
          simplex[v].f = eval(simplex[v].x);
        }
      }
    }
    order();
  }
  return {simplex.front().x, simplex.front().f, evals};
}

} // namespace betabo::detail
