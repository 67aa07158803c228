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

#include "betabo/sobol.hpp"

#include <bit>
#include <stdexcept>

#include <boost/random/sobol.hpp>

#include "betabo/rng.hpp"

namespace betabo {

namespace {

std::uint32_t reverse_bits(std::uint32_t x) {
  x = ((x >> 1) & 0x55555555u) | ((x & 0x55555555u) << 1);
  x = ((x >> 2) & 0x33333333u) | ((x & 0x33333333u) << 2);
  x = ((x >> 4) & 0x0f0f0f0fu) | ((x & 0x0f0f0f0fu) << 4);
  x = ((x >> 8) & 0x00ff00ffu) | ((x & 0x00ff00ffu) << 8);
  return (x >> 16) | (x << 16);
}

// Hash-based permutation in which every bit depends only on lower bits.
// Applied to bit-reversed values it realizes a nested uniform scramble.
std::uint32_t laine_karras_permutation(std::uint32_t x, std::uint32_t seed) {
  x += seed;
  x ^= x * 0x6c50b47cu;
  x ^= x * 0xb82f1e52u;
  x ^= x * 0xc7afe638u;
  x ^= x * 0x8d22f6e6u;
  return x;
}

std::uint32_t nested_uniform_scramble(std::uint32_t x, std::uint32_t seed) {
  return reverse_bits(laine_karras_permutation(reverse_bits(x), seed));
}

constexpr double kTwoToMinus32 = 1.0 / 4294967296.0;

} // namespace

struct SobolSequence::Engine {
  explicit Engine(std::size_t d) : sobol(static_cast<unsigned>(d)) {}
  boost::random::sobol sobol;
};

SobolSequence::SobolSequence(std::size_t dim, std::optional<std::uint64_t> scramble_seed)
    : dim_(dim), scrambled_(scramble_seed.has_value()) {
  if (dim == 0) throw std::invalid_argument("Sobol dimension must be >= 1");
  engine_ = std::make_unique<Engine>(dim);
  if (scrambled_) {
    dim_seeds_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      dim_seeds_.push_back(static_cast<std::uint32_t>(derive_seed(*scramble_seed, i) >> 32));
    }
  }
}

SobolSequence::~SobolSequence() = default;
SobolSequence::SobolSequence(SobolSequence&&) noexcept = default;
SobolSequence& SobolSequence::operator=(SobolSequence&&) noexcept = default;

std::vector<double> SobolSequence::next() {
  std::vector<std::uint32_t> raw(dim_, 0u);
  // Boost's engine starts at the second point of the sequence; the origin is
  // emitted here so indexing matches the textbook sequence.
  if (emitted_origin_) {
    for (auto& r : raw) r = static_cast<std::uint32_t>(engine_->sobol() >> 32);
  }
  emitted_origin_ = true;
  std::vector<double> point(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const std::uint32_t v = scrambled_ ? nested_uniform_scramble(raw[i], dim_seeds_[i]) : raw[i];
    point[i] = static_cast<double>(v) * kTwoToMinus32;
  }
  return point;
}

std::vector<std::vector<double>> sobol_points(std::size_t dim, std::size_t n,
                                              std::optional<std::uint64_t> scramble_seed) {
  SobolSequence seq(dim, scramble_seed);
  std::vector<std::vector<double>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(seq.next());
  return out;
}

} // namespace betabo
