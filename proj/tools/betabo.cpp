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

// Command-line front end:
//   betabo spectrum|optimize|bench [--config FILE] [--set key=value ...]
//                                  [--out DIR] [--workers N]

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "betabo/cli/commands.hpp"
#include "betabo/cli/config.hpp"
#include "betabo/error.hpp"

namespace {

void setup_logging() {
  const char* no_color = std::getenv("NO_COLOR");
  const auto mode = (no_color && *no_color) ? spdlog::color_mode::never : spdlog::color_mode::automatic;
  auto logger = spdlog::stderr_color_mt("betabo", mode);
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
}

} // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Bayesian optimization with the Beta product kernel"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  betabo::cli::RunOptions run;
  std::string out_dir = run.out_dir.string();

  app.add_option("command", command, "spectrum, optimize or bench")
      ->required()
      ->check(CLI::IsMember({"spectrum", "optimize", "bench"}));
  app.add_option("--config", config_path, "INI file with [spectrum], [optimize], [bench] sections")
      ->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override as section.key=value (bare key: this command)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--workers", run.workers, "parallel jobs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return betabo::cli::kExitConfig;
  }
  run.out_dir = out_dir;

  betabo::cli::ExperimentConfig config;
  try {
    config = betabo::cli::load_config(
        config_path.empty() ? std::nullopt : std::optional<std::string>(config_path), overrides,
        command);
  } catch (const betabo::ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return betabo::cli::kExitConfig;
  }
  return betabo::cli::run_command(command, config, run);
}
