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

#ifndef PACF_DATASET_HPP_
#define PACF_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pacf {

// Tolerance on Euclidean norms for the unit-ball domain.
inline constexpr double kUnitBallTolerance = 1e-9;

// A labeled point of the unit ball. `source_row` is the row the example had
// in the dataset it was loaded or generated with; precomputed metrics and
// Gram matrices are indexed through it.
struct Example {
  std::vector<double> features;
  int label = 1;
  std::optional<std::size_t> source_row;

  std::size_t dimension() const { return features.size(); }
  // Label mapped to predictor space: (1 + y) / 2.
  double target() const { return label > 0 ? 1.0 : 0.0; }
};

double euclidean_norm(std::span<const double> x);

// Throws InvalidArgument when the norm exceeds 1 + kUnitBallTolerance or the
// label is not +1/-1.
void validate_example(const Example& example);

// Non-empty, fixed-dimension, validated sample S. Immutable once built.
class LabeledDataset {
 public:
  // Examples without a source_row get their position.
  explicit LabeledDataset(std::vector<Example> examples);

  std::size_t size() const { return examples_.size(); }
  std::size_t dimension() const { return dimension_; }
  const Example& operator[](std::size_t i) const { return examples_[i]; }
  const std::vector<Example>& examples() const { return examples_; }
  auto begin() const { return examples_.begin(); }
  auto end() const { return examples_.end(); }

  // Row-major size() x dimension() copy of the features.
  std::vector<double> feature_matrix() const;
  // Labels in predictor space, one per example.
  std::vector<double> targets() const;

  // Subset preserving source rows.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<Example> examples_;
  std::size_t dimension_ = 0;
};

// CSV with header `x1,...,xn,y`. Values are written with 17 significant
// digits so that a save/load round trip is exact.
LabeledDataset read_dataset_csv(const std::filesystem::path& path);
LabeledDataset parse_dataset_csv(const std::string& text);
std::string format_dataset_csv(const LabeledDataset& dataset);
void write_dataset_csv(const LabeledDataset& dataset,
                       const std::filesystem::path& path);

}  // namespace pacf

#endif  // PACF_DATASET_HPP_
