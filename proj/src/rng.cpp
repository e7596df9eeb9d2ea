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

#include "pacf/rng.hpp"

#include <cmath>
#include <numbers>

namespace pacf {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) {
  return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Lemire's nearly divisionless method with rejection.
  std::uint64_t x = rng();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      x = rng();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double standard_normal(Rng& rng) {
  // Box-Muller; u1 is kept away from zero.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int random_sign(Rng& rng) { return (rng() >> 63) != 0 ? 1 : -1; }

std::vector<double> uniform_in_ball(Rng& rng, std::size_t dim, double radius) {
  std::vector<double> x(dim);
  if (dim == 0) return x;
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : x) {
      v = standard_normal(rng);
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double r = radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(dim));
  const double scale = r / std::sqrt(norm2);
  for (auto& v : x) v *= scale;
  return x;
}

}  // namespace pacf
