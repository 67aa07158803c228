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

#ifndef BETABO_SPECIAL_FUNCTIONS_HPP
#define BETABO_SPECIAL_FUNCTIONS_HPP

#include <cmath>

#include "betabo/error.hpp"

namespace betabo {

/// A real number strictly greater than zero. Construction rejects anything
/// else (including NaN) with DomainError.
class PositiveReal {
public:
  explicit PositiveReal(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

private:
  double value_;
};

/// ln Gamma(x) for x > 0, relative error <= 1e-12 on (0, 1e6].
double log_gamma(PositiveReal x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta_fn(PositiveReal a, PositiveReal b);

/// Absolute log-space residual of the duplication identity
///   Gamma(2x+1) / Gamma(x+1)^2 = 2^{2x} Gamma(x+1/2) / (sqrt(pi) Gamma(x+1)).
/// Should be at round-off level for any correct log_gamma. Requires x >= 0.
double duplication_identity_residual(double x);

struct WendelBounds {
  double lower; ///< sqrt(2 / (2x + 1))
  double ratio; ///< Gamma(x + 1/2) / Gamma(x + 1)
  double upper; ///< 2
};

/// Wendel-type sandwich for Gamma(x + 1/2) / Gamma(x + 1), x >= 0.
WendelBounds wendel_ratio_bounds(double x);

namespace detail {

// Unchecked hot-path variant for kernel evaluation. Caller guarantees x > 0.
inline double lgamma_pos(double x) noexcept {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

} // namespace detail

} // namespace betabo

#endif // BETABO_SPECIAL_FUNCTIONS_HPP
