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

#include "betabo/cli/commands.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <tuple>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "betabo/error.hpp"
#include "betabo/rng.hpp"
#include "betabo/spectral.hpp"

namespace betabo::cli {

namespace {

/// Runs job(0..n-1) on up to `workers` threads. Jobs must not throw.
void run_jobs(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& job) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Maps exceptions escaping a command body to exit codes.
int guarded(const char* command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    spdlog::error("{}: configuration error: {}", command, e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitRuntime;
  }
}

std::string combo_label(KernelKind k, AcquisitionKind a) {
  return fmt::format("{}_{}", kernel_name(k), acquisition_name(a));
}

std::string trajectory_file(std::uint64_t seed) { return fmt::format("trajectory_{}.csv", seed); }

struct JobOutcome {
  std::optional<Trajectory> trajectory;
  std::string error;
};

/// Runs one BO job and writes its trajectory (partial, on black-box failure).
JobOutcome run_bo_job(const BlackBox& box, const BoConfig& cfg, const std::filesystem::path& file) {
  JobOutcome out;
  try {
    Trajectory t = run_bo(box, cfg);
    write_csv(file, trajectory_table(t));
    out.trajectory = std::move(t);
  } catch (const BlackBoxFailure& e) {
    out.error = e.what();
    try {
      write_csv(file, trajectory_table(e.partial()));
    } catch (const std::exception& w) {
      out.error += fmt::format(" (partial trajectory not written: {})", w.what());
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

} // namespace

BoConfig make_bo_config(const BoSettings& s, KernelKind kernel, AcquisitionKind acq,
                        std::uint64_t seed, std::size_t default_n_init) {
  BoConfig c;
  c.kernel = kernel;
  c.acquisition = AcquisitionSpec{acq, s.ucb_beta, s.xi};
  c.ucb_schedule = s.ucb_schedule;
  c.n_init = s.n_init == 0 ? default_n_init : s.n_init;
  c.n_iter = s.n_iter;
  c.seed = seed;
  c.hyperfit = s.hyperfit;
  c.maximizer = s.maximizer;
  return c;
}

CsvTable trajectory_table(const Trajectory& t) {
  CsvTable table;
  table.header.push_back("iter");
  for (std::size_t i = 1; i <= t.dim; ++i) table.header.push_back(fmt::format("x_unit_{}", i));
  for (std::size_t i = 1; i <= t.dim; ++i) table.header.push_back(fmt::format("x_raw_{}", i));
  for (const char* c : {"y", "best", "delta_boundary"}) table.header.emplace_back(c);
  for (const auto& r : t.records) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    row.push_back(std::to_string(r.iteration));
    for (double v : r.unit.coords()) row.push_back(format_number(v));
    for (double v : r.raw) row.push_back(format_number(v));
    row.push_back(format_number(r.value));
    row.push_back(format_number(r.best));
    row.push_back(format_number(r.delta_boundary));
    table.rows.push_back(std::move(row));
  }
  return table;
}

int cmd_spectrum(const SpectrumConfig& config, const RunOptions& run) {
  return guarded("spectrum", [&] {
    validate(config);
    struct Cell {
      KernelSpec spec;
      std::size_t d;
      double param;
    };
    std::vector<Cell> cells;
    for (KernelKind k : config.kernels) {
      if (k == KernelKind::Beta) {
        for (double h : config.h_grid) {
          for (std::size_t d : config.d_grid) cells.push_back({KernelSpec::beta_shared(h, d), d, h});
        }
        continue;
      }
      for (double ell : config.lengthscales) {
        for (std::size_t d : config.d_grid) {
          auto spec = k == KernelKind::Rbf ? KernelSpec::rbf(ell) : KernelSpec::matern(ell, config.nu);
          cells.push_back({spec, d, ell});
        }
      }
    }

    const SpectrumOptions opts{config.n_matrices, config.n_points};
    std::vector<std::optional<SpectrumReport>> reports(cells.size());
    std::vector<std::string> errors(cells.size());
    run_jobs(cells.size(), run.workers, [&](std::size_t i) {
      try {
        reports[i] = spectrum_report(cells[i].spec, cells[i].d, opts,
                                     derive_seed(config.seed, i), config.floor);
        spdlog::info("spectrum {} d={} param={}: slope {:.4g}, log10 p {:.4g}",
                     kernel_name(cells[i].spec.kind()), cells[i].d, cells[i].param,
                     reports[i]->regression.slope, reports[i]->regression.log10_p);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!errors[i].empty()) {
        throw std::runtime_error(fmt::format("{} d={} param={}: {}",
                                             kernel_name(cells[i].spec.kind()), cells[i].d,
                                             cells[i].param, errors[i]));
      }
    }

    CsvTable spectrum{{"kernel", "d", "h_or_ell", "j", "mean_eigenvalue"}, {}};
    CsvTable regression{
        {"kernel", "d", "h_or_ell", "slope", "intercept", "p_value", "log10_p", "r2", "n_retained"},
        {}};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& r = *reports[i];
      const std::string kname = kernel_name(cells[i].spec.kind());
      const std::string d = std::to_string(cells[i].d);
      const std::string p = format_number(cells[i].param);
      for (std::size_t j = 0; j < r.mean_eigenvalues.size(); ++j) {
        spectrum.rows.push_back(
            {kname, d, p, std::to_string(j + 1), format_number(r.mean_eigenvalues[j])});
      }
      const auto& g = r.regression;
      regression.rows.push_back({kname, d, p, format_number(g.slope), format_number(g.intercept),
                                 format_number(g.p_value), format_number(g.log10_p),
                                 format_number(g.r_squared), std::to_string(g.n_retained)});
    }
    write_csv(run.out_dir / "spectrum.csv", spectrum);
    write_csv(run.out_dir / "spectrum_regression.csv", regression);
    spdlog::info("spectrum: wrote {} cells to {}", cells.size(), run.out_dir.string());
    return kExitOk;
  });
}

int cmd_optimize(const OptimizeConfig& config, const RunOptions& run) {
  return guarded("optimize", [&] {
    validate(config);
    const bool external = !config.external_command.empty();
    const BlackBox box =
        external ? make_external_black_box(config.external_command,
                                           DomainBox(config.lower, config.upper))
                 : make_benchmark({config.function, config.d, config.setting, config.bo.epsilon});
    const std::size_t default_n_init = external ? 5 : 3 * box.domain.dim();
    const std::string setting = external ? "external" : std::to_string(config.setting);

    std::vector<std::pair<KernelKind, AcquisitionKind>> combos;
    for (auto k : config.bo.kernels) {
      for (auto a : config.bo.acquisitions) combos.emplace_back(k, a);
    }
    const auto& seeds = config.bo.seeds;
    auto combo_dir = [&](std::size_t c) {
      return combos.size() == 1
                 ? run.out_dir
                 : run.out_dir / combo_label(combos[c].first, combos[c].second);
    };

    std::vector<JobOutcome> outcomes(combos.size() * seeds.size());
    run_jobs(outcomes.size(), run.workers, [&](std::size_t j) {
      const std::size_t c = j / seeds.size();
      const std::uint64_t seed = seeds[j % seeds.size()];
      const auto cfg =
          make_bo_config(config.bo, combos[c].first, combos[c].second, seed, default_n_init);
      outcomes[j] = run_bo_job(box, cfg, combo_dir(c) / trajectory_file(seed));
      if (outcomes[j].error.empty()) {
        spdlog::info("optimize {} seed {}: final best {}", combo_label(combos[c].first, combos[c].second),
                     seed, format_number(outcomes[j].trajectory->final_best()));
      } else {
        spdlog::error("optimize {} seed {}: {}", combo_label(combos[c].first, combos[c].second),
                      seed, outcomes[j].error);
      }
    });

    bool failed = false;
    CsvTable summary{{"kernel", "acq", "setting", "mean_final_best", "stderr"}, {}};
    for (std::size_t c = 0; c < combos.size(); ++c) {
      std::vector<Trajectory> done;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        auto& o = outcomes[c * seeds.size() + s];
        if (o.trajectory) done.push_back(std::move(*o.trajectory));
      }
      if (done.size() != seeds.size()) {
        failed = true;
        continue;
      }
      const Summary sm = summarize(done);
      summary.rows.push_back({kernel_name(combos[c].first), acquisition_name(combos[c].second),
                              setting, format_number(sm.mean_final_best),
                              format_number(sm.stderr_final_best)});
    }
    write_csv(run.out_dir / "summary.csv", summary);
    return failed ? kExitRuntime : kExitOk;
  });
}

int cmd_bench(const BenchConfig& config, const RunOptions& run) {
  return guarded("bench", [&] {
    validate(config);
    struct Cell {
      FunctionName function;
      int setting;
      KernelKind kernel;
      AcquisitionKind acq;
    };
    std::vector<Cell> cells;
    for (auto f : config.functions) {
      for (int s : config.settings) {
        for (auto k : config.bo.kernels) {
          for (auto a : config.bo.acquisitions) cells.push_back({f, s, k, a});
        }
      }
    }
    const auto& seeds = config.bo.seeds;
    auto cell_dir = [&](const Cell& c) {
      return run.out_dir / fmt::format("{}_d{}_s{}_{}", function_name(c.function), config.d,
                                       c.setting, combo_label(c.kernel, c.acq));
    };

    std::vector<JobOutcome> outcomes(cells.size() * seeds.size());
    run_jobs(outcomes.size(), run.workers, [&](std::size_t j) {
      const Cell& c = cells[j / seeds.size()];
      const std::uint64_t seed = seeds[j % seeds.size()];
      try {
        const BlackBox box = make_benchmark({c.function, config.d, c.setting, config.bo.epsilon});
        const auto cfg = make_bo_config(config.bo, c.kernel, c.acq, seed, 3 * config.d);
        outcomes[j] = run_bo_job(box, cfg, cell_dir(c) / trajectory_file(seed));
      } catch (const std::exception& e) {
        outcomes[j].error = e.what();
      }
      if (outcomes[j].error.empty()) {
        spdlog::info("bench {} s{} {} seed {}: final best {}", function_name(c.function), c.setting,
                     combo_label(c.kernel, c.acq), seed,
                     format_number(outcomes[j].trajectory->final_best()));
      } else {
        spdlog::error("bench {} s{} {} seed {}: {}", function_name(c.function), c.setting,
                      combo_label(c.kernel, c.acq), seed, outcomes[j].error);
      }
    });

    bool failed = false;
    CsvTable table{{"function", "d", "setting", "kernel", "acq", "n_seeds", "mean_final_best",
                    "stderr", "status"},
                   {}};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Cell& c = cells[i];
      std::vector<Trajectory> done;
      std::string error;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        auto& o = outcomes[i * seeds.size() + s];
        if (o.trajectory) {
          done.push_back(std::move(*o.trajectory));
        } else if (error.empty()) {
          error = fmt::format("seed {}: {}", seeds[s], o.error);
        }
      }
      std::vector<std::string> row{function_name(c.function), std::to_string(config.d),
                                   std::to_string(c.setting), kernel_name(c.kernel),
                                   acquisition_name(c.acq), std::to_string(seeds.size())};
      if (error.empty()) {
        const Summary sm = summarize(done);
        row.insert(row.end(), {format_number(sm.mean_final_best),
                               format_number(sm.stderr_final_best), "ok"});
      } else {
        failed = true;
        row.insert(row.end(), {"", "", "failed: " + error});
      }
      table.rows.push_back(std::move(row));
    }
    write_csv(run.out_dir / "table2_style.csv", table);
    return failed ? kExitRuntime : kExitOk;
  });
}

int run_command(const std::string& command, const ExperimentConfig& config,
                const RunOptions& run) {
  if (command == "spectrum") return cmd_spectrum(config.spectrum, run);
  if (command == "optimize") return cmd_optimize(config.optimize, run);
  if (command == "bench") return cmd_bench(config.bench, run);
  spdlog::error("unknown command '{}'", command);
  return kExitConfig;
}

} // namespace betabo::cli
