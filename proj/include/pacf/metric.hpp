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

#ifndef PACF_METRIC_HPP_
#define PACF_METRIC_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pacf/dataset.hpp"
#include "pacf/expansion.hpp"

namespace pacf {

// d(x, x') = min(1, scale * ||x - x'||).
struct EuclideanScaledMetric {
  double scale = 1.0;
};

// d(x, x) = 0, and c for every pair of distinct points.
struct ConstantMetric {
  double value = 1.0;
};

// Square matrix over dataset rows. `row_to_source[r]` is the dataset row of
// matrix row r; lookups go through Example::source_row.
struct DistanceMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // row-major size x size
  std::vector<std::size_t> row_to_source;
  std::unordered_map<std::size_t, std::size_t> source_to_row;

  DistanceMatrix(std::vector<double> values, std::size_t size,
                 std::vector<std::size_t> row_to_source);
  double at(std::size_t r, std::size_t c) const { return values[r * size + c]; }
};

struct PrecomputedMetric {
  std::shared_ptr<const DistanceMatrix> matrix;
};

struct HardnessMetric {
  std::shared_ptr<const HardnessMetricHandle> handle;
};

// A pseudometric with values in [0, 1]. Immutable and cheap to copy.
class SimilarityMetric {
 public:
  using Kind = std::variant<EuclideanScaledMetric, ConstantMetric,
                            PrecomputedMetric, HardnessMetric>;

  static SimilarityMetric euclidean(double scale);
  static SimilarityMetric constant(double value);
  static SimilarityMetric precomputed(std::shared_ptr<const DistanceMatrix> m);
  static SimilarityMetric hardness(std::shared_ptr<const HardnessMetricHandle> h);

  // Throws InvalidArgument("metric undefined for pair") when a precomputed
  // matrix has no row for either example.
  double operator()(const Example& a, const Example& b) const;

  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  explicit SimilarityMetric(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

// Matrix CSV (no header, one row per line) plus an index file with one
// dataset row number per line, in matrix row order. Without an index file
// the identity mapping is used.
std::shared_ptr<const DistanceMatrix> read_distance_matrix(
    const std::filesystem::path& matrix_path,
    const std::filesystem::path& index_path);

struct TriangleViolation {
  std::size_t i, j, k;  // d(i,j) > d(i,k) + d(k,j)
  double d_ij, d_ik, d_kj;
};

struct PairViolation {
  std::size_t i, j;
  double d_ij, d_ji;
};

struct ValidationReport {
  std::size_t triples_checked = 0;
  std::vector<PairViolation> reflexivity_violations;
  std::vector<PairViolation> symmetry_violations;
  std::vector<PairViolation> range_violations;
  std::vector<TriangleViolation> triangle_violations;

  bool ok() const {
    return reflexivity_violations.empty() && symmetry_violations.empty() &&
           range_violations.empty() && triangle_violations.empty();
  }
};

// Samples n_triples index triples of the dataset (distinct when the dataset
// has at least three rows) and checks reflexivity, symmetry, range and all
// three triangle inequalities of each, with tolerance 1e-12.
ValidationReport validate_metric(const SimilarityMetric& metric,
                                 const LabeledDataset& dataset,
                                 std::size_t n_triples, std::uint64_t seed);

}  // namespace pacf

#endif  // PACF_METRIC_HPP_
