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

#ifndef PACF_MATCHING_HPP_
#define PACF_MATCHING_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "pacf/dataset.hpp"

namespace pacf {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Disjoint index pairs over a sample; the edges of the empirical fairness
// estimator.
class Matching {
 public:
  // Throws InvalidArgument if an index is >= sample_size or repeats.
  Matching(std::vector<IndexPair> pairs, std::size_t sample_size);

  const std::vector<IndexPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::size_t sample_size() const { return sample_size_; }

 private:
  std::vector<IndexPair> pairs_;
  std::size_t sample_size_;
};

struct ConsecutiveStrategy {};
struct RandomPermutationStrategy {
  std::uint64_t seed = 0;
};
using MatchingStrategy = std::variant<ConsecutiveStrategy, RandomPermutationStrategy>;

// floor(m/2) pairs; with odd m the last element of the (possibly shuffled)
// order stays unmatched.
Matching build_matching(const LabeledDataset& dataset, MatchingStrategy strategy);
Matching build_matching(std::size_t sample_size, MatchingStrategy strategy);

}  // namespace pacf

#endif  // PACF_MATCHING_HPP_
