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

#include "betabo/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "betabo/error.hpp"

namespace betabo {

namespace {

using std::numbers::pi;

double levy(std::span<const double> x) {
  auto w = [](double xi) { return 1.0 + (xi - 1.0) / 4.0; };
  const std::size_t d = x.size();
  const double w1 = w(x[0]);
  double f = std::pow(std::sin(pi * w1), 2);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const double wi = w(x[i]);
    f += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * std::pow(std::sin(pi * wi + 1.0), 2));
  }
  const double wd = w(x[d - 1]);
  f += (wd - 1.0) * (wd - 1.0) * (1.0 + std::pow(std::sin(2.0 * pi * wd), 2));
  return f;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

double ackley(std::span<const double> x) {
  const double d = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double xi : x) {
    sq += xi * xi;
    cs += std::cos(2.0 * pi * xi);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
}

double branin(double x1, double x2) {
  constexpr double b = 5.1 / (4.0 * pi * pi);
  constexpr double c = 5.0 / pi;
  constexpr double t = 1.0 / (8.0 * pi);
  const double q = x2 - b * x1 * x1 + c * x1 - 6.0;
  return q * q + 10.0 * (1.0 - t) * std::cos(x1) + 10.0;
}

constexpr std::array<double, 4> kHartmannAlpha{1.0, 1.2, 3.0, 3.2};
constexpr double kHartmannA[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                     {0.05, 10, 17, 0.1, 8, 14},
                                     {3, 3.5, 1.7, 10, 17, 8},
                                     {17, 8, 0.05, 10, 0.1, 14}};
constexpr double kHartmannP[4][6] = {{1312, 1696, 5569, 124, 8283, 5886},
                                     {2329, 4135, 8307, 3736, 1004, 9991},
                                     {2348, 1451, 3522, 2883, 3047, 6650},
                                     {4047, 8828, 8732, 5743, 1091, 381}};
constexpr std::array<double, 6> kHartmannMinimizer{0.20169, 0.150011, 0.476874,
                                                   0.275332, 0.311652, 0.6573};

double hartmann6(std::span<const double> x) {
  double f = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double diff = x[j] - 1e-4 * kHartmannP[i][j];
      inner += kHartmannA[i][j] * diff * diff;
    }
    f -= kHartmannAlpha[i] * std::exp(-inner);
  }
  return f;
}

void check_bounds_tolerant(std::span<const double> x, const DomainBox& box) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double tol = 1e-9 * (box.upper()[i] - box.lower()[i]);
    if (!(x[i] >= box.lower()[i] - tol && x[i] <= box.upper()[i] + tol)) {
      throw DomainError("point outside the function's canonical domain at coordinate " +
                        std::to_string(i));
    }
  }
}

} // namespace

DomainBox::DomainBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw DimensionMismatch("DomainBox: lower and upper bounds differ in length");
  }
  if (lower_.empty()) throw DimensionMismatch("DomainBox needs at least one dimension");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw DomainError("DomainBox: need finite lower < upper in dimension " + std::to_string(i));
    }
  }
}

bool DomainBox::contains(std::span<const double> x) const noexcept {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

const char* function_name(FunctionName f) noexcept {
  switch (f) {
  case FunctionName::Levy:
    return "levy";
  case FunctionName::Griewank:
    return "griewank";
  case FunctionName::Ackley:
    return "ackley";
  case FunctionName::BraninRepeated:
    return "branin";
  case FunctionName::Hartmann6Repeated:
    return "hartmann6";
  }
  return "?";
}

FunctionName function_from_name(const std::string& name) {
  if (name == "levy") return FunctionName::Levy;
  if (name == "griewank") return FunctionName::Griewank;
  if (name == "ackley") return FunctionName::Ackley;
  if (name == "branin") return FunctionName::BraninRepeated;
  if (name == "hartmann6" || name == "hartmann") return FunctionName::Hartmann6Repeated;
  throw ConfigError("unknown benchmark function '" + name + "'");
}

void BenchmarkSpec::validate() const {
  check_dimension(name, d);
  if (setting < 1 || setting > 3) throw ConfigError("setting must be 1, 2 or 3");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw ConfigError("epsilon must lie in (0, 0.5)");
}

void check_dimension(FunctionName name, std::size_t d) {
  if (d < 1) throw DimensionMismatch("benchmark dimension must be >= 1");
  if (name == FunctionName::BraninRepeated && d % 2 != 0) {
    throw DimensionMismatch("repeated Branin needs an even dimension");
  }
  if (name == FunctionName::Hartmann6Repeated && d < 6) {
    throw DimensionMismatch("repeated Hartmann6 needs dimension >= 6");
  }
}

DomainBox canonical_domain(FunctionName name, std::size_t d) {
  check_dimension(name, d);
  std::vector<double> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    switch (name) {
    case FunctionName::Levy:
      lo[i] = -10.0, hi[i] = 10.0;
      break;
    case FunctionName::Griewank:
      lo[i] = -600.0, hi[i] = 600.0;
      break;
    case FunctionName::Ackley:
      lo[i] = -32.768, hi[i] = 32.768;
      break;
    case FunctionName::BraninRepeated:
      if (i % 2 == 0) lo[i] = -5.0, hi[i] = 10.0;
      else lo[i] = 0.0, hi[i] = 15.0;
      break;
    case FunctionName::Hartmann6Repeated:
      lo[i] = 0.0, hi[i] = 1.0;
      break;
    }
  }
  return {std::move(lo), std::move(hi)};
}

double evaluate_function(FunctionName name, std::span<const double> x_raw) {
  check_dimension(name, x_raw.size());
  check_bounds_tolerant(x_raw, canonical_domain(name, x_raw.size()));
  switch (name) {
  case FunctionName::Levy:
    return levy(x_raw);
  case FunctionName::Griewank:
    return griewank(x_raw);
  case FunctionName::Ackley:
    return ackley(x_raw);
  case FunctionName::BraninRepeated: {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < x_raw.size(); i += 2) f += branin(x_raw[i], x_raw[i + 1]);
    return f;
  }
  case FunctionName::Hartmann6Repeated: {
    double f = 0.0;
    for (std::size_t i = 0; i + 6 <= x_raw.size(); i += 6) f += hartmann6(x_raw.subspan(i, 6));
    return f;
  }
  }
  throw DomainError("unknown function");
}

KnownOptimum first_optimum(FunctionName name, std::size_t d) {
  check_dimension(name, d);
  std::vector<double> x(d);
  for (std::size_t i = 0; i < d; ++i) {
    switch (name) {
    case FunctionName::Levy:
      x[i] = 1.0;
      break;
    case FunctionName::Griewank:
    case FunctionName::Ackley:
      x[i] = 0.0;
      break;
    case FunctionName::BraninRepeated:
      x[i] = i % 2 == 0 ? -pi : 12.275;
      break;
    case FunctionName::Hartmann6Repeated:
      x[i] = i < (d / 6) * 6 ? kHartmannMinimizer[i % 6] : 0.5;
      break;
    }
  }
  const double value = evaluate_function(name, x);
  return {std::move(x), value};
}

DomainBox shift_domain(const BenchmarkSpec& spec) {
  spec.validate();
  const DomainBox canonical = canonical_domain(spec.name, spec.d);
  if (spec.setting == 1) return canonical;
  const auto opt = first_optimum(spec.name, spec.d);
  auto lower = canonical.lower();
  const auto& upper = canonical.upper();
  const std::size_t n_shift = spec.setting == 2 ? 1 : spec.d;
  for (std::size_t i = 0; i < n_shift; ++i) {
    const double xs = opt.point[i];
    if (!(xs < upper[i])) {
      throw InfeasibleSetting("optimum coordinate " + std::to_string(i) +
                              " is not below the upper bound; the setting cannot be built");
    }
    // x* - m = eps (M - m), upper bound held fixed.
    lower[i] = (xs - spec.epsilon * upper[i]) / (1.0 - spec.epsilon);
    if (lower[i] < canonical.lower()[i]) {
      throw InfeasibleSetting("shifted lower bound of coordinate " + std::to_string(i) +
                              " falls outside the canonical domain");
    }
  }
  return {std::move(lower), upper};
}

BlackBox make_benchmark(const BenchmarkSpec& spec) {
  auto domain = shift_domain(spec);
  const FunctionName name = spec.name;
  return BlackBox{
      .name = function_name(name),
      .evaluate = [name](std::span<const double> x) { return evaluate_function(name, x); },
      .domain = std::move(domain),
      .known_optimum = first_optimum(name, spec.d),
  };
}

UnitPoint to_unit(std::span<const double> x_raw, const DomainBox& box) {
  if (x_raw.size() != box.dim()) throw DimensionMismatch("to_unit: dimension mismatch");
  if (!box.contains(x_raw)) throw DomainError("to_unit: point outside the box");
  std::vector<double> u(x_raw.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = std::clamp((x_raw[i] - box.lower()[i]) / (box.upper()[i] - box.lower()[i]), 0.0, 1.0);
  }
  return UnitPoint(std::move(u));
}

std::vector<double> from_unit(const UnitPoint& u, const DomainBox& box) {
  if (u.dim() != box.dim()) throw DimensionMismatch("from_unit: dimension mismatch");
  std::vector<double> x(u.dim());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = box.lower()[i];
    const double hi = box.upper()[i];
    x[i] = std::clamp(lo + u[i] * (hi - lo), lo, hi);
  }
  return x;
}

double boundary_distance(const UnitPoint& u) {
  double inf_norm = 0.0;
  for (double c : u.coords()) inf_norm = std::max(inf_norm, std::abs(c - 0.5));
  return 1.0 - 2.0 * inf_norm;
}

PartitionVolumes partition_volumes(std::size_t d, double epsilon) {
  if (d < 1) throw DomainError("partition_volumes: d must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw DomainError("epsilon must lie in (0, 0.5)");
  const double dd = static_cast<double>(d);
  const double center = std::pow(1.0 - 2.0 * epsilon, dd);
  const double vertices = std::pow(2.0 * epsilon, dd);
  return {center, 1.0 - center - vertices, vertices};
}

} // namespace betabo
