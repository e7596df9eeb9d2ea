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

#ifndef PACF_SYNTH_HPP_
#define PACF_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pacf/dataset.hpp"
#include "pacf/expansion.hpp"

namespace pacf {

struct UnitBallUniform {};
struct SeparableWithMargin {
  double margin = 0.5;      // (0, 1]
  double noise_rate = 0.0;  // [0, 1): probability of flipping a label
};
struct HardnessPairs {
  HardnessMode mode = HardnessMode::kU;
};

using Generator = std::variant<UnitBallUniform, SeparableWithMargin, HardnessPairs>;

struct SyntheticSpec {
  Generator generator;
  std::size_t n = 2;  // dimension
  std::size_t m = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticData {
  LabeledDataset dataset;
  // SeparableWithMargin: the hidden unit separator and which labels were flipped.
  std::optional<std::vector<double>> w_star;
  std::vector<bool> noisy;
  // HardnessPairs: the metric handle the pairs were built for.
  std::shared_ptr<const HardnessMetricHandle> handle;
};

// UnitBallUniform labels points by a fair coin. SeparableWithMargin draws
// x = t w* + u with u orthogonal to w*, |t| uniform in [margin, 1] and
// ||u||^2 <= 1 - t^2, labels y = sign(t) and flips a noise_rate fraction.
// HardnessPairs needs even m and n >= 4 and yields m/2 counterpart pairs.
SyntheticData generate_dataset(const SyntheticSpec& spec);

}  // namespace pacf

#endif  // PACF_SYNTH_HPP_
