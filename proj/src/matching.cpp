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

#include "pacf/matching.hpp"

#include <numeric>
#include <string>

#include "pacf/error.hpp"
#include "pacf/rng.hpp"

namespace pacf {

Matching::Matching(std::vector<IndexPair> pairs, std::size_t sample_size)
    : pairs_(std::move(pairs)), sample_size_(sample_size) {
  std::vector<bool> used(sample_size, false);
  for (const auto& [i, j] : pairs_) {
    if (i >= sample_size || j >= sample_size) {
      throw InvalidArgument("matching index out of range");
    }
    if (i == j || used[i] || used[j]) {
      throw InvalidArgument("matching indices must be pairwise disjoint");
    }
    used[i] = used[j] = true;
  }
}

Matching build_matching(std::size_t m, MatchingStrategy strategy) {
  if (m < 2) throw InvalidArgument("insufficient examples for matching");
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (const auto* r = std::get_if<RandomPermutationStrategy>(&strategy)) {
    Rng rng = make_rng(r->seed, /*stream=*/0x3a7c);
    shuffle(std::span<std::size_t>(order), rng);
  }
  std::vector<IndexPair> pairs;
  pairs.reserve(m / 2);
  for (std::size_t k = 0; k + 1 < m; k += 2) pairs.emplace_back(order[k], order[k + 1]);
  return Matching(std::move(pairs), m);
}

Matching build_matching(const LabeledDataset& dataset, MatchingStrategy strategy) {
  return build_matching(dataset.size(), strategy);
}

}  // namespace pacf
