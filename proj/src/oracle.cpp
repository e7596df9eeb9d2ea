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

// Grid-search reference for the 2-D linear program. Deliberately written with
// plain loops and no calls into the learner or SIMD code.

#include <cmath>
#include <limits>

#include "pacf/error.hpp"
#include "pacf/learners.hpp"

namespace pacf {

OracleResult brute_force_oracle_2d(const LabeledDataset& sample, const SimilarityMetric& d,
                                   const Matching& matching, double tau,
                                   double grid_resolution) {
  if (sample.dimension() != 2) throw InvalidArgument("oracle requires dimension 2");
  if (!(grid_resolution > 0.0 && grid_resolution <= 1.0)) {
    throw InvalidArgument("grid resolution must lie in (0, 1]");
  }
  if (matching.empty()) throw InvalidArgument("empty matching");

  const std::size_t m = sample.size();
  std::vector<double> x0(m), x1(m), t(m);
  for (std::size_t i = 0; i < m; ++i) {
    x0[i] = sample[i].features[0];
    x1[i] = sample[i].features[1];
    t[i] = sample[i].label > 0 ? 1.0 : 0.0;
  }
  const auto& edges = matching.pairs();
  std::vector<double> dist(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    dist[e] = d(sample[edges[e].first], sample[edges[e].second]);
  }

  OracleResult best;
  best.objective = std::numeric_limits<double>::infinity();
  const long steps = static_cast<long>(std::floor(1.0 / grid_resolution + 1e-9));
  for (long a = -steps; a <= steps; ++a) {
    for (long b = -steps; b <= steps; ++b) {
      const double w0 = static_cast<double>(a) * grid_resolution;
      const double w1 = static_cast<double>(b) * grid_resolution;
      if (w0 * w0 + w1 * w1 > 1.0) continue;
      ++best.grid_points;

      double l1 = 0.0;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::size_t i = edges[e].first;
        const std::size_t j = edges[e].second;
        const double hi = (1.0 + w0 * x0[i] + w1 * x1[i]) / 2.0;
        const double hj = (1.0 + w0 * x0[j] + w1 * x1[j]) / 2.0;
        const double v = std::fabs(hi - hj) - dist[e];
        if (v > 0.0) l1 += v;
      }
      l1 /= static_cast<double>(edges.size());
      if (l1 > tau) continue;

      double obj = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        obj += std::fabs((1.0 + w0 * x0[i] + w1 * x1[i]) / 2.0 - t[i]);
      }
      obj /= static_cast<double>(m);
      if (obj < best.objective) {
        best.objective = obj;
        best.w = {w0, w1};
      }
    }
  }
  if (best.w.empty()) throw RuntimeError("no feasible grid point");
  return best;
}

}  // namespace pacf
