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

#ifndef BETABO_DETAIL_NELDER_MEAD_HPP
#define BETABO_DETAIL_NELDER_MEAD_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace betabo::detail {

struct NelderMeadOptions {
  std::size_t max_evals = 200;
  // Stop once the simplex values spread less than this (absolute + relative).
  double ftol = 1e-9;
  double xtol = 1e-9;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  std::size_t evals;
};

/// Derivative-free minimization with dimension-adaptive coefficients. The
/// starting point is always evaluated, so the result is never worse than x0.
/// Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> x0, std::span<const double> step,
                                      const NelderMeadOptions& options = {});

} // namespace betabo::detail

#endif // BETABO_DETAIL_NELDER_MEAD_HPP
