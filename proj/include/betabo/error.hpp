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

#ifndef BETABO_ERROR_HPP
#define BETABO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace betabo {

// Argument outside the mathematical domain of an operation (x <= 0 for
// log-gamma, h <= 0 for the Beta kernel, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Cholesky factorization failed even after the full jitter ladder.
class IllConditionedError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A benchmark setting whose shifted box cannot contain the optimum.
class InfeasibleSetting : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Bad or unknown configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace betabo

#endif // BETABO_ERROR_HPP
