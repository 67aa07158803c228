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

#ifndef BETABO_BENCHMARKS_HPP
#define BETABO_BENCHMARKS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "betabo/kernels.hpp"

namespace betabo {

/// Axis-aligned box [lower_i, upper_i] with lower_i < upper_i.
class DomainBox {
public:
  DomainBox(std::vector<double> lower, std::vector<double> upper);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  bool contains(std::span<const double> x) const noexcept;

  friend bool operator==(const DomainBox&, const DomainBox&) = default;

private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

enum class FunctionName { Levy, Griewank, Ackley, BraninRepeated, Hartmann6Repeated };

const char* function_name(FunctionName f) noexcept;
FunctionName function_from_name(const std::string& name);

/// Where the first global optimum sits in the search box.
///   1: canonical domain (optimum near the center)
///   2: first coordinate cropped so the optimum sits near a face
///   3: every coordinate cropped so the optimum sits near a vertex
struct BenchmarkSpec {
  FunctionName name = FunctionName::Levy;
  std::size_t d = 2;
  int setting = 1;
  double epsilon = 0.05;

  void validate() const;
};

struct KnownOptimum {
  std::vector<double> point;
  double value;
};

/// A deterministic (for benchmarks) objective over a raw-coordinate box.
struct BlackBox {
  std::string name;
  std::function<double(std::span<const double>)> evaluate;
  DomainBox domain;
  std::optional<KnownOptimum> known_optimum;
};

/// Standard-literature value. Repeated Branin / Hartmann6 sum the base
/// function over consecutive blocks of 2 / 6 coordinates; trailing
/// Hartmann coordinates that do not fill a block are inactive.
double evaluate_function(FunctionName name, std::span<const double> x_raw);

void check_dimension(FunctionName name, std::size_t d);
DomainBox canonical_domain(FunctionName name, std::size_t d);

/// The first global optimizer: Branin uses its lexicographically smallest
/// minimizer (-pi, 12.275); inactive Hartmann coordinates are placed at 0.5.
KnownOptimum first_optimum(FunctionName name, std::size_t d);

/// Crop the canonical box per the setting by moving lower bounds only, so that
/// x*_i - m_i = epsilon (M_i - m_i) on the affected coordinates.
DomainBox shift_domain(const BenchmarkSpec& spec);

BlackBox make_benchmark(const BenchmarkSpec& spec);

UnitPoint to_unit(std::span<const double> x_raw, const DomainBox& box);
std::vector<double> from_unit(const UnitPoint& u, const DomainBox& box);

/// 1 - 2 ||u - c||_inf with c the cube center: 1 at the center, 0 on a face.
double boundary_distance(const UnitPoint& u);

struct PartitionVolumes {
  double center;   ///< (1 - 2 eps)^d
  double faces;    ///< 1 - center - vertices
  double vertices; ///< (2 eps)^d
};

PartitionVolumes partition_volumes(std::size_t d, double epsilon);

/// Objective run as a subprocess: the raw point goes to stdin as
/// whitespace-separated decimals, one decimal is read back from stdout.
/// A nonzero exit status or unparsable output throws BlackBoxEvaluationError.
BlackBox make_external_black_box(std::string command, DomainBox domain);

class BlackBoxEvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace betabo

#endif // BETABO_BENCHMARKS_HPP
