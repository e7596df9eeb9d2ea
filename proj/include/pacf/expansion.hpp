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

#ifndef PACF_EXPANSION_HPP_
#define PACF_EXPANSION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pacf/dataset.hpp"

namespace pacf {

// Bits stored one per byte, each 0 or 1.
using BitString = std::vector<std::uint8_t>;

// Expands an (n-1)-bit seed to 2n bits with SHAKE256. The XOF input is the
// seed length as a 4-byte little-endian integer followed by the seed bits
// packed MSB-first.
BitString expand_seed(std::span<const std::uint8_t> seed_bits);
// Same, checking |seed| = n - 1.
BitString expand_seed(std::span<const std::uint8_t> seed_bits, std::size_t n);

enum class HardnessMode { kU, kV };

std::string_view hardness_mode_name(HardnessMode mode);
HardnessMode parse_hardness_mode(std::string_view text);

// Describes one metric drawn from U (y = E(s) for a stored s) or from V
// (y uniformly random).
struct HardnessMetricHandle {
  std::size_t n = 0;
  BitString y;                  // 2n bits
  HardnessMode mode = HardnessMode::kV;
  std::optional<BitString> seed;  // present in mode U
};

HardnessMetricHandle make_u_handle(std::size_t n, BitString seed);
HardnessMetricHandle make_v_handle(std::size_t n, BitString y);
void validate_handle(const HardnessMetricHandle& handle);

// Distance in {0, 1}: 0 for identical points; 1 when the last coordinates
// share a sign; otherwise 0 iff expanding the sign-disagreement pattern of
// coordinates 1..n-1 reproduces y. Throws InvalidArgument on a dimension
// mismatch or a zero coordinate.
//
// Not a pseudometric on all of X: if x' differs from x only in the
// magnitudes of its coordinates, a point x'' can be at distance 0 from both
// while d(x, x') = 1. Sampled points have continuous coordinates, so such
// triples occur with probability zero.
double hardness_distance(const HardnessMetricHandle& handle,
                         std::span<const double> x, std::span<const double> xp);

}  // namespace pacf

#endif  // PACF_EXPANSION_HPP_
