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

#ifndef BETABO_SOBOL_HPP
#define BETABO_SOBOL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace betabo {

/// Sobol low-discrepancy sequence in [0,1)^d starting from the origin, with
/// optional Owen-style nested uniform scrambling keyed by a seed.
class SobolSequence {
public:
  SobolSequence(std::size_t dim, std::optional<std::uint64_t> scramble_seed);
  ~SobolSequence();
  SobolSequence(SobolSequence&&) noexcept;
  SobolSequence& operator=(SobolSequence&&) noexcept;

  std::size_t dim() const noexcept { return dim_; }
  std::vector<double> next();

private:
  struct Engine;
  std::size_t dim_;
  std::unique_ptr<Engine> engine_;
  std::vector<std::uint32_t> dim_seeds_;
  bool scrambled_;
  bool emitted_origin_ = false;
};

/// First n points of a (possibly scrambled) Sobol sequence, one row per point.
std::vector<std::vector<double>> sobol_points(std::size_t dim, std::size_t n,
                                              std::optional<std::uint64_t> scramble_seed);

} // namespace betabo

#endif // BETABO_SOBOL_HPP
