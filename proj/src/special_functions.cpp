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

#include "betabo/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace betabo {

PositiveReal::PositiveReal(double value) : value_(value) {
  if (!(value > 0.0)) {
    throw DomainError("expected a strictly positive real, got " + std::to_string(value));
  }
}

double log_gamma(PositiveReal x) { return detail::lgamma_pos(x.value()); }

double log_beta_fn(PositiveReal a, PositiveReal b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(PositiveReal(a.value() + b.value()));
}

double duplication_identity_residual(double x) {
  if (!(x >= 0.0)) {
    throw DomainError("duplication_identity_residual requires x >= 0");
  }
  const double lhs = detail::lgamma_pos(2.0 * x + 1.0) - 2.0 * detail::lgamma_pos(x + 1.0);
  const double rhs = 2.0 * x * std::numbers::ln2 + detail::lgamma_pos(x + 0.5) -
                     0.5 * std::log(std::numbers::pi) - detail::lgamma_pos(x + 1.0);
  return std::abs(lhs - rhs);
}

WendelBounds wendel_ratio_bounds(double x) {
  if (!(x >= 0.0)) {
    throw DomainError("wendel_ratio_bounds requires x >= 0");
  }
  return WendelBounds{
      .lower = std::sqrt(2.0 / (2.0 * x + 1.0)),
      .ratio = std::exp(detail::lgamma_pos(x + 0.5) - detail::lgamma_pos(x + 1.0)),
      .upper = 2.0,
  };
}

} // namespace betabo
