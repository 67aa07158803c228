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

#include "betabo/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "betabo/error.hpp"

namespace betabo::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  T out{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (s.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError("invalid value '" + raw + "' for " + key);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  return parse_number<double>(s, key);
}

std::size_t parse_size(const std::string& s, const std::string& key) {
  if (trim(s).starts_with('-')) throw ConfigError("negative value '" + s + "' for " + key);
  return parse_number<std::size_t>(s, key);
}

bool parse_bool(const std::string& raw, const std::string& key) {
  std::string s = trim(raw);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("invalid boolean '" + raw + "' for " + key);
}

/// Comma-separated list; an empty value is an empty list.
template <typename F>
auto parse_list(const std::string& raw, F&& item) {
  std::vector<decltype(item(std::string{}))> out;
  if (trim(raw).empty()) return out;
  std::stringstream ss(raw);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(item(trim(tok)));
  return out;
}

MaternNu parse_nu(const std::string& s, const std::string& key) {
  try {
    return matern_nu_from_value(parse_double(s, key));
  } catch (const DomainError& e) {
    throw ConfigError(std::string(e.what()) + " for " + key);
  }
}

UcbSchedule parse_schedule(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  if (s == "constant") return UcbSchedule::Constant;
  if (s == "log" || s == "logarithmic") return UcbSchedule::Logarithmic;
  throw ConfigError("invalid UCB schedule '" + raw + "' for " + key + " (constant or log)");
}

FunctionName parse_function(const std::string& s) {
  try {
    return function_from_name(trim(s));
  } catch (const std::logic_error& e) {
    throw ConfigError(e.what());
  }
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

template <typename Owner>
void add_bo_keys(std::map<std::string, Setter>& m, const std::string& section,
                 Owner ExperimentConfig::*owner) {
  auto bo = [owner](ExperimentConfig& c) -> BoSettings& { return (c.*owner).bo; };
  const auto p = section + ".";
  m[p + "kernels"] = [bo](auto& c, auto& v, auto&) {
    bo(c).kernels = parse_list(v, [](const std::string& s) { return kernel_from_name(s); });
  };
  m[p + "acquisitions"] = [bo](auto& c, auto& v, auto&) {
    bo(c).acquisitions =
        parse_list(v, [](const std::string& s) { return acquisition_from_name(s); });
  };
  m[p + "seeds"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).seeds = parse_list(v, [&k](const std::string& s) {
      return static_cast<std::uint64_t>(parse_size(s, k));
    });
  };
  m[p + "ucb_beta"] = [bo](auto& c, auto& v, auto& k) { bo(c).ucb_beta = parse_double(v, k); };
  m[p + "ucb_schedule"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).ucb_schedule = parse_schedule(v, k);
  };
  m[p + "xi"] = [bo](auto& c, auto& v, auto& k) { bo(c).xi = parse_double(v, k); };
  m[p + "n_init"] = [bo](auto& c, auto& v, auto& k) { bo(c).n_init = parse_size(v, k); };
  m[p + "n_iter"] = [bo](auto& c, auto& v, auto& k) { bo(c).n_iter = parse_size(v, k); };
  m[p + "epsilon"] = [bo](auto& c, auto& v, auto& k) { bo(c).epsilon = parse_double(v, k); };
  m[p + "refit_every"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.refit_every = parse_size(v, k);
  };
  m[p + "restarts"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.restarts = parse_size(v, k);
  };
  m[p + "max_evals_per_restart"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.max_evals_per_restart = parse_size(v, k);
  };
  m[p + "noise_var"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.noise_var = parse_double(v, k);
  };
  m[p + "learn_noise"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.learn_noise = parse_bool(v, k);
  };
  m[p + "shared_bandwidth"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.shared_bandwidth = parse_bool(v, k);
  };
  m[p + "warm_start"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).hyperfit.warm_start = parse_bool(v, k);
  };
  m[p + "nu"] = [bo](auto& c, auto& v, auto& k) { bo(c).hyperfit.nu = parse_nu(v, k); };
  m[p + "candidates_per_dim"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).maximizer.candidates_per_dim = parse_size(v, k);
  };
  m[p + "refine_starts"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).maximizer.refine_starts = parse_size(v, k);
  };
  m[p + "refine_evals"] = [bo](auto& c, auto& v, auto& k) {
    bo(c).maximizer.refine_evals = parse_size(v, k);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    m["spectrum.kernels"] = [](auto& c, auto& v, auto&) {
      c.spectrum.kernels =
          parse_list(v, [](const std::string& s) { return kernel_from_name(s); });
    };
    m["spectrum.h_grid"] = [](auto& c, auto& v, auto& k) {
      c.spectrum.h_grid = parse_list(v, [&k](const std::string& s) { return parse_double(s, k); });
    };
    m["spectrum.d_grid"] = [](auto& c, auto& v, auto& k) {
      c.spectrum.d_grid = parse_list(v, [&k](const std::string& s) { return parse_size(s, k); });
    };
    m["spectrum.lengthscales"] = [](auto& c, auto& v, auto& k) {
      c.spectrum.lengthscales =
          parse_list(v, [&k](const std::string& s) { return parse_double(s, k); });
    };
    m["spectrum.nu"] = [](auto& c, auto& v, auto& k) { c.spectrum.nu = parse_nu(v, k); };
    m["spectrum.n_matrices"] = [](auto& c, auto& v, auto& k) {
      c.spectrum.n_matrices = parse_size(v, k);
    };
    m["spectrum.n_points"] = [](auto& c, auto& v, auto& k) {
      c.spectrum.n_points = parse_size(v, k);
    };
    m["spectrum.floor"] = [](auto& c, auto& v, auto& k) { c.spectrum.floor = parse_double(v, k); };
    m["spectrum.seed"] = [](auto& c, auto& v, auto& k) { c.spectrum.seed = parse_size(v, k); };

    add_bo_keys(m, "optimize", &ExperimentConfig::optimize);
    m["optimize.function"] = [](auto& c, auto& v, auto&) {
      c.optimize.function = parse_function(v);
    };
    m["optimize.d"] = [](auto& c, auto& v, auto& k) { c.optimize.d = parse_size(v, k); };
    m["optimize.setting"] = [](auto& c, auto& v, auto& k) {
      c.optimize.setting = static_cast<int>(parse_size(v, k));
    };
    m["optimize.external_command"] = [](auto& c, auto& v, auto&) {
      c.optimize.external_command = trim(v);
    };
    m["optimize.lower"] = [](auto& c, auto& v, auto& k) {
      c.optimize.lower = parse_list(v, [&k](const std::string& s) { return parse_double(s, k); });
    };
    m["optimize.upper"] = [](auto& c, auto& v, auto& k) {
      c.optimize.upper = parse_list(v, [&k](const std::string& s) { return parse_double(s, k); });
    };

    add_bo_keys(m, "bench", &ExperimentConfig::bench);
    m["bench.functions"] = [](auto& c, auto& v, auto&) { c.bench.functions = parse_list(v, parse_function); };
    m["bench.d"] = [](auto& c, auto& v, auto& k) { c.bench.d = parse_size(v, k); };
    m["bench.settings"] = [](auto& c, auto& v, auto& k) {
      c.bench.settings = parse_list(
          v, [&k](const std::string& s) { return static_cast<int>(parse_size(s, k)); });
    };
    return m;
  }();
  return table;
}

template <typename F>
void as_config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::logic_error& e) {
    throw ConfigError(e.what());
  }
}

void validate_bo(const BoSettings& bo) {
  if (bo.kernels.empty()) throw ConfigError("kernel list is empty");
  if (bo.acquisitions.empty()) throw ConfigError("acquisition list is empty");
  if (bo.seeds.empty()) throw ConfigError("seed list is empty");
  if (bo.hyperfit.restarts == 0) throw ConfigError("restarts must be >= 1");
  if (!(bo.hyperfit.noise_var > 0.0)) throw ConfigError("noise_var must be positive");
  if (bo.maximizer.candidates_per_dim == 0) throw ConfigError("candidates_per_dim must be >= 1");
  as_config_error([&] {
    AcquisitionSpec{AcquisitionKind::Ucb, bo.ucb_beta, bo.xi}.validate();
  });
}

} // namespace

KernelKind kernel_from_name(const std::string& name) {
  if (name == "beta") return KernelKind::Beta;
  if (name == "rbf") return KernelKind::Rbf;
  if (name == "matern") return KernelKind::Matern;
  throw ConfigError("unknown kernel '" + name + "' (expected beta, rbf or matern)");
}

void apply_setting(ExperimentConfig& config, const std::string& raw_key, const std::string& value,
                   const std::string& default_section) {
  std::string key = trim(raw_key);
  if (key.find('.') == std::string::npos) key = default_section + "." + key;
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  as_config_error([&] { it->second(config, value, key); });
}

ExperimentConfig load_config(const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides,
                             const std::string& default_section) {
  ExperimentConfig config;
  if (path) {
    boost::property_tree::ptree tree;
    try {
      boost::property_tree::ini_parser::read_ini(*path, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
      if (body.empty()) {
        throw ConfigError("config key '" + section + "' is outside any [section]");
      }
      for (const auto& [key, node] : body) {
        apply_setting(config, section + "." + key, node.get_value<std::string>(), default_section);
      }
    }
  }
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' is not key=value");
    apply_setting(config, o.substr(0, eq), o.substr(eq + 1), default_section);
  }
  return config;
}

void validate(const SpectrumConfig& c) {
  if (c.kernels.empty()) throw ConfigError("spectrum kernel list is empty");
  if (c.d_grid.empty()) throw ConfigError("spectrum d_grid is empty");
  for (auto d : c.d_grid) {
    if (d == 0) throw ConfigError("spectrum d_grid entries must be >= 1");
  }
  const bool beta = std::find(c.kernels.begin(), c.kernels.end(), KernelKind::Beta) != c.kernels.end();
  const bool stationary = std::any_of(c.kernels.begin(), c.kernels.end(),
                                      [](KernelKind k) { return k != KernelKind::Beta; });
  if (beta && c.h_grid.empty()) throw ConfigError("spectrum h_grid is empty");
  for (double h : c.h_grid) {
    if (!(h > 0.0)) throw ConfigError("spectrum h_grid entries must be positive");
  }
  if (stationary && c.lengthscales.empty()) throw ConfigError("spectrum lengthscales is empty");
  for (double l : c.lengthscales) {
    if (!(l > 0.0)) throw ConfigError("spectrum lengthscales must be positive");
  }
  if (c.n_matrices < 1) throw ConfigError("n_matrices must be >= 1");
  if (c.n_points < 3) throw ConfigError("n_points must be >= 3");
  if (!(c.floor > 0.0 && c.floor < 1.0)) throw ConfigError("floor must lie in (0, 1)");
}

void validate(const OptimizeConfig& c) {
  validate_bo(c.bo);
  if (!c.external_command.empty()) {
    if (c.lower.empty() || c.lower.size() != c.upper.size()) {
      throw ConfigError("external black box needs lower and upper bounds of equal, nonzero length");
    }
    as_config_error([&] { DomainBox(c.lower, c.upper); });
    return;
  }
  as_config_error([&] { shift_domain({c.function, c.d, c.setting, c.bo.epsilon}); });
}

void validate(const BenchConfig& c) {
  validate_bo(c.bo);
  if (c.functions.empty()) throw ConfigError("function list is empty");
  if (c.settings.empty()) throw ConfigError("setting list is empty");
  for (auto f : c.functions) {
    for (int s : c.settings) {
      as_config_error([&] { shift_domain({f, c.d, s, c.bo.epsilon}); });
    }
  }
}

} // namespace betabo::cli
