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
#ifndef BETABO_CLI_CONFIG_HPP
#define BETABO_CLI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "betabo/acquisition.hpp"
#include "betabo/benchmarks.hpp"
#include "betabo/bo_loop.hpp"
#include "betabo/kernels.hpp"

namespace betabo::cli {

/// [spectrum]: the eigendecay table. Beta cells come from h_grid x d_grid,
/// RBF / Matern cells from lengthscales x d_grid.
struct SpectrumConfig {
  std::vector<KernelKind> kernels{KernelKind::Beta};
  std::vector<double> h_grid{0.1, 0.25, 0.5, 0.75, 1.0, 1.5};
  std::vector<std::size_t> d_grid{5, 10, 20, 50};
  std::vector<double> lengthscales{1.0};
  MaternNu nu = MaternNu::FiveHalves;
  std::size_t n_matrices = 300;
  std::size_t n_points = 100;
  double floor = 1e-12;
  std::uint64_t seed = 0;
};

/// Settings shared by [optimize] and [bench].
struct BoSettings {
  std::vector<KernelKind> kernels{KernelKind::Beta};
  std::vector<AcquisitionKind> acquisitions{AcquisitionKind::Ucb};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  double ucb_beta = 4.0;
  UcbSchedule ucb_schedule = UcbSchedule::Constant;
  double xi = 0.01;
  std::size_t n_init = 0; ///< 0: 3 d for benchmarks, 5 for external black boxes
  std::size_t n_iter = 300;
  HyperfitPolicy hyperfit;
  MaximizerOptions maximizer;
  double epsilon = 0.05;
};

struct OptimizeConfig {
  BoSettings bo;
  FunctionName function = FunctionName::Levy;
  std::size_t d = 2;
  int setting = 1;
  /// When non-empty the objective is this shell command over [lower, upper].
  std::string external_command;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct BenchConfig {
  BoSettings bo;
  std::vector<FunctionName> functions{FunctionName::Levy};
  std::size_t d = 8;
  std::vector<int> settings{1, 2, 3};
};

struct ExperimentConfig {
  SpectrumConfig spectrum;
  OptimizeConfig optimize;
  BenchConfig bench;
};

/// Applies one `key = value`. Keys are `section.key`; a bare key refers to
/// `default_section`. Throws ConfigError on unknown keys or bad values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value,
                   const std::string& default_section);

/// Defaults, then the INI file (if any), then each `key=value` override.
ExperimentConfig load_config(const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides,
                             const std::string& default_section);

/// Cross-field checks that need no computation (non-empty grids, dimensions,
/// feasible settings). Throws ConfigError.
void validate(const SpectrumConfig& config);
void validate(const OptimizeConfig& config);
void validate(const BenchConfig& config);

KernelKind kernel_from_name(const std::string& name);

} // namespace betabo::cli

#endif // BETABO_CLI_CONFIG_HPP
