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
#ifndef BETABO_CLI_COMMANDS_HPP
#define BETABO_CLI_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "betabo/bo_loop.hpp"
#include "betabo/cli/config.hpp"
#include "betabo/cli/csv.hpp"

namespace betabo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct RunOptions {
  std::filesystem::path out_dir = "betabo_out";
  std::size_t workers = 1;
};

/// Writes spectrum.csv and spectrum_regression.csv.
int cmd_spectrum(const SpectrumConfig& config, const RunOptions& run);

/// Writes trajectory_<seed>.csv per seed and summary.csv. With more than one
/// (kernel, acquisition) pair, trajectories go to <kernel>_<acq>/ subfolders.
int cmd_optimize(const OptimizeConfig& config, const RunOptions& run);

/// Writes table2_style.csv, one row per (function, setting, kernel, acq) cell,
/// and each job's trajectory under <function>_d<d>_s<setting>_<kernel>_<acq>/.
int cmd_bench(const BenchConfig& config, const RunOptions& run);

/// Dispatches on "spectrum", "optimize" or "bench".
int run_command(const std::string& command, const ExperimentConfig& config,
                const RunOptions& run);

/// The BoConfig a command builds for one job.
BoConfig make_bo_config(const BoSettings& settings, KernelKind kernel, AcquisitionKind acq,
                        std::uint64_t seed, std::size_t default_n_init);

/// Columns: iter, x_unit_1..d, x_raw_1..d, y, best, delta_boundary.
CsvTable trajectory_table(const Trajectory& trajectory);

} // namespace betabo::cli

#endif // BETABO_CLI_COMMANDS_HPP
