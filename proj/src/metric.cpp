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

#include "pacf/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pacf/error.hpp"
#include "pacf/rng.hpp"

namespace pacf {

DistanceMatrix::DistanceMatrix(std::vector<double> vals, std::size_t n,
                               std::vector<std::size_t> rows)
    : size(n), values(std::move(vals)), row_to_source(std::move(rows)) {
  if (values.size() != size * size) {
    throw InvalidArgument("distance matrix must be square");
  }
  if (row_to_source.size() != size) {
    throw InvalidArgument("distance matrix index has " +
                          std::to_string(row_to_source.size()) +
                          " entries, expected " + std::to_string(size));
  }
  for (std::size_t r = 0; r < size; ++r) {
    if (!source_to_row.emplace(row_to_source[r], r).second) {
      throw InvalidArgument("distance matrix index repeats dataset row " +
                            std::to_string(row_to_source[r]));
    }
  }
}

SimilarityMetric SimilarityMetric::euclidean(double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("euclidean metric scale must be finite and >= 0");
  }
  return SimilarityMetric(EuclideanScaledMetric{scale});
}

SimilarityMetric SimilarityMetric::constant(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidArgument("constant metric value must lie in [0, 1]");
  }
  return SimilarityMetric(ConstantMetric{value});
}

SimilarityMetric SimilarityMetric::precomputed(
    std::shared_ptr<const DistanceMatrix> m) {
  if (!m) throw InvalidArgument("null distance matrix");
  return SimilarityMetric(PrecomputedMetric{std::move(m)});
}

SimilarityMetric SimilarityMetric::hardness(
    std::shared_ptr<const HardnessMetricHandle> h) {
  if (!h) throw InvalidArgument("null hardness handle");
  validate_handle(*h);
  return SimilarityMetric(HardnessMetric{std::move(h)});
}

double SimilarityMetric::operator()(const Example& a, const Example& b) const {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EuclideanScaledMetric>) {
          if (a.dimension() != b.dimension()) {
            throw InvalidArgument("metric: dimension mismatch");
          }
          double s = 0.0;
          for (std::size_t i = 0; i < a.dimension(); ++i) {
            const double diff = a.features[i] - b.features[i];
            s += diff * diff;
          }
          return std::min(1.0, m.scale * std::sqrt(s));
        } else if constexpr (std::is_same_v<T, ConstantMetric>) {
          return a.features == b.features ? 0.0 : m.value;
        } else if constexpr (std::is_same_v<T, PrecomputedMetric>) {
          if (!a.source_row || !b.source_row) {
            throw InvalidArgument("metric undefined for pair");
          }
          const auto ia = m.matrix->source_to_row.find(*a.source_row);
          const auto ib = m.matrix->source_to_row.find(*b.source_row);
          if (ia == m.matrix->source_to_row.end() ||
              ib == m.matrix->source_to_row.end()) {
            throw InvalidArgument("metric undefined for pair");
          }
          return m.matrix->at(ia->second, ib->second);
        } else {
          return hardness_distance(*m.handle, a.features, b.features);
        }
      },
      kind_);
}

std::string SimilarityMetric::describe() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        std::ostringstream out;
        if constexpr (std::is_same_v<T, EuclideanScaledMetric>) {
          out << "euclidean:" << m.scale;
        } else if constexpr (std::is_same_v<T, ConstantMetric>) {
          out << "constant:" << m.value;
        } else if constexpr (std::is_same_v<T, PrecomputedMetric>) {
          out << "matrix[" << m.matrix->size << "]";
        } else {
          out << "hardness[n=" << m.handle->n
              << ",mode=" << hardness_mode_name(m.handle->mode) << "]";
        }
        return out.str();
      },
      kind_);
}

std::shared_ptr<const DistanceMatrix> read_distance_matrix(
    const std::filesystem::path& matrix_path,
    const std::filesystem::path& index_path) {
  std::ifstream in(matrix_path);
  if (!in) throw RuntimeError("cannot open metric matrix " + matrix_path.string());
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    std::string field;
    std::size_t c = 0;
    while (std::getline(fields, field, ',')) {
      try {
        values.push_back(std::stod(field));
      } catch (const std::exception&) {
        throw InvalidArgument("metric matrix: cannot parse '" + field + "'");
      }
      ++c;
    }
    if (rows == 0) cols = c;
    if (c != cols) throw InvalidArgument("metric matrix rows differ in length");
    ++rows;
  }
  if (rows != cols) throw InvalidArgument("metric matrix must be square");
  std::vector<std::size_t> index;
  if (!index_path.empty() && std::filesystem::exists(index_path)) {
    std::ifstream idx(index_path);
    std::string entry;
    while (idx >> entry) {
      try {
        index.push_back(static_cast<std::size_t>(std::stoull(entry)));
      } catch (const std::exception&) {
        throw InvalidArgument("metric index: cannot parse '" + entry + "'");
      }
    }
  } else {
    for (std::size_t r = 0; r < rows; ++r) index.push_back(r);
  }
  return std::make_shared<const DistanceMatrix>(std::move(values), rows,
                                                std::move(index));
}

ValidationReport validate_metric(const SimilarityMetric& metric,
                                 const LabeledDataset& dataset,
                                 std::size_t n_triples, std::uint64_t seed) {
  constexpr double kTol = 1e-12;
  ValidationReport report;
  Rng rng = make_rng(seed, /*stream=*/0x7a11);
  const std::size_t m = dataset.size();
  for (std::size_t t = 0; t < n_triples; ++t) {
    std::array<std::size_t, 3> idx{};
    idx[0] = uniform_index(rng, m);
    do {
      idx[1] = uniform_index(rng, m);
    } while (m >= 3 && idx[1] == idx[0]);
    do {
      idx[2] = uniform_index(rng, m);
    } while (m >= 3 && (idx[2] == idx[0] || idx[2] == idx[1]));

    std::array<std::array<double, 3>, 3> d{};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) d[a][b] = metric(dataset[idx[a]], dataset[idx[b]]);
    }
    for (int a = 0; a < 3; ++a) {
      if (std::fabs(d[a][a]) > kTol) {
        report.reflexivity_violations.push_back({idx[a], idx[a], d[a][a], d[a][a]});
      }
      for (int b = a + 1; b < 3; ++b) {
        if (std::fabs(d[a][b] - d[b][a]) > kTol) {
          report.symmetry_violations.push_back({idx[a], idx[b], d[a][b], d[b][a]});
        }
        if (d[a][b] < -kTol || d[a][b] > 1.0 + kTol) {
          report.range_violations.push_back({idx[a], idx[b], d[a][b], d[b][a]});
        }
      }
    }
    // i-j through k, for each choice of the middle vertex.
    constexpr std::array<std::array<int, 3>, 3> kOrders{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    for (const auto& o : kOrders) {
      const double lhs = d[o[0]][o[1]];
      const double rhs = d[o[0]][o[2]] + d[o[2]][o[1]];
      if (lhs > rhs + kTol) {
        report.triangle_violations.push_back({idx[o[0]], idx[o[1]], idx[o[2]], lhs,
                                              d[o[0]][o[2]], d[o[2]][o[1]]});
      }
    }
    ++report.triples_checked;
  }
  return report;
}

}  // namespace pacf
