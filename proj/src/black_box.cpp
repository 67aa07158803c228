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

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iterator>
#include <string>

#include <boost/process.hpp>

#include "betabo/benchmarks.hpp"

namespace betabo {

namespace {

namespace bp = boost::process;

std::string format_point(std::span<const double> x) {
  std::string line;
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", x[i]);
    if (i > 0) line += ' ';
    line += buf;
  }
  line += '\n';
  return line;
}

double parse_single_real(const std::string& text, const std::string& command) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  bool ok = end != begin && errno == 0;
  for (const char* p = end; ok && *p != '\0'; ++p) {
    if (!std::isspace(static_cast<unsigned char>(*p))) ok = false;
  }
  if (!ok || !std::isfinite(v)) {
    throw BlackBoxEvaluationError("black box '" + command + "' printed '" + text +
                                  "', expected a single finite number");
  }
  return v;
}

double run_subprocess(const std::string& command, std::span<const double> x) {
  bp::opstream to_child;
  bp::ipstream from_child;
  std::string output;
  bp::child child;
  try {
    child = bp::child("/bin/sh", "-c", command, bp::std_in < to_child, bp::std_out > from_child);
    to_child << format_point(x);
    to_child.flush();
    to_child.pipe().close();
    output.assign(std::istreambuf_iterator<char>(from_child), std::istreambuf_iterator<char>());
    child.wait();
  } catch (const bp::process_error& e) {
    throw BlackBoxEvaluationError("black box '" + command + "' could not run: " + e.what());
  }
  if (child.exit_code() != 0) {
    throw BlackBoxEvaluationError("black box '" + command + "' exited with status " +
                                  std::to_string(child.exit_code()));
  }
  return parse_single_real(output, command);
}

} // namespace

BlackBox make_external_black_box(std::string command, DomainBox domain) {
  if (command.empty()) throw std::invalid_argument("external black box needs a command");
  return BlackBox{
      .name = "external",
      .evaluate = [command](std::span<const double> x) { return run_subprocess(command, x); },
      .domain = std::move(domain),
      .known_optimum = std::nullopt,
  };
}

} // namespace betabo
