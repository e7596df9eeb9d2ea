// Copyright 2026 The PACF Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PACF_RNG_HPP_
#define PACF_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace pacf {

// std::mt19937_64 is fully specified by the standard; the distributions in
// <random> are not, so the helpers below are written out to keep every
// stochastic result reproducible across standard libraries.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Counter-based seed derivation: stream and counter select an independent
// generator state, so draw k yields the same value regardless of how the
// work is partitioned across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter = 0);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0,
                    std::uint64_t counter = 0) {
  return Rng(derive_seed(seed, stream, counter));
}

// Uniform in [0, 1) with 53 random bits.
double uniform01(Rng& rng);
double uniform(Rng& rng, double lo, double hi);
// Unbiased integer in [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);
double standard_normal(Rng& rng);
int random_sign(Rng& rng);

// Uniform point in the closed Euclidean ball of the given radius.
std::vector<double> uniform_in_ball(Rng& rng, std::size_t dim,
                                    double radius = 1.0);

template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = uniform_index(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace pacf

#endif  // PACF_RNG_HPP_
