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

#ifndef BETABO_RNG_HPP
#define BETABO_RNG_HPP

#include <cstdint>

namespace betabo {

/// SplitMix64 finalizer. Used to derive independent child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for a numbered stream of a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x5851f42d4c957f2dULL));
}

// Fixed stream ids used when splitting a run's master seed.
namespace seed_stream {
inline constexpr std::uint64_t kSobolInit = 1;
inline constexpr std::uint64_t kAcquisition = 2;
inline constexpr std::uint64_t kPerturbation = 3;
inline constexpr std::uint64_t kHyperfit = 4;
} // namespace seed_stream

} // namespace betabo

#endif // BETABO_RNG_HPP
