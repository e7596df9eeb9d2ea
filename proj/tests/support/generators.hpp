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

#ifndef PACF_TESTS_GENERATORS_HPP_
#define PACF_TESTS_GENERATORS_HPP_

// Hand-rolled random instance generators shared by the unit and acceptance
// tests. Everything is driven by pacf::Rng so failures replay from a seed.

#include <cmath>
#include <cstddef>
#include <vector>

#include "pacf/dataset.hpp"
#include "pacf/metric.hpp"
#include "pacf/predictor.hpp"
#include "pacf/rng.hpp"

namespace pacf::testing {

inline Example random_example(Rng& rng, std::size_t n, double radius = 1.0) {
  Example e{uniform_in_ball(rng, n, radius), 0, std::nullopt};
  e.label = random_sign(rng);
  return e;
}

inline LabeledDataset random_dataset(Rng& rng, std::size_t m, std::size_t n) {
  std::vector<Example> ex;
  ex.reserve(m);
  for (std::size_t i = 0; i < m; ++i) ex.push_back(random_example(rng, n));
  return LabeledDataset(std::move(ex));
}

// Labels from a hidden unit direction with a fraction of flips.
inline LabeledDataset noisy_linear_dataset(Rng& rng, std::size_t m, std::size_t n,
                                           double flip = 0.1) {
  std::vector<double> w(n);
  double norm = 0.0;
  for (auto& v : w) {
    v = standard_normal(rng);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  std::vector<Example> ex;
  for (std::size_t i = 0; i < m; ++i) {
    Example e{uniform_in_ball(rng, n), 1, std::nullopt};
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) s += w[c] * e.features[c] / norm;
    e.label = s >= 0.0 ? 1 : -1;
    if (uniform01(rng) < flip) e.label = -e.label;
    ex.push_back(std::move(e));
  }
  return LabeledDataset(std::move(ex));
}

inline std::vector<double> random_in_ball(Rng& rng, std::size_t n, double radius = 1.0) {
  return uniform_in_ball(rng, n, radius);
}

// Constant, linear, logistic or halfspace predictor on dimension n.
inline Predictor random_predictor(Rng& rng, std::size_t n) {
  switch (uniform_index(rng, 4)) {
    case 0:
      return Predictor::constant(uniform01(rng));
    case 1:
      return Predictor::linear(random_in_ball(rng, n));
    case 2:
      return Predictor::logistic(random_in_ball(rng, n), uniform(rng, 0.1, 5.0));
    default:
      return Predictor::halfspace(random_in_ball(rng, n));
  }
}

// A non-constant predictor with outputs spread over [0, 1].
inline Predictor random_spread_predictor(Rng& rng, std::size_t n) {
  std::vector<double> w = random_in_ball(rng, n);
  double norm = 0.0;
  for (double v : w) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& v : w) v /= norm;
  }
  if (uniform_index(rng, 2) == 0) return Predictor::linear(std::move(w));
  return Predictor::logistic(std::move(w), uniform(rng, 1.0, 5.0));
}

// Euclidean with a random scale or a random constant.
inline SimilarityMetric random_metric(Rng& rng) {
  if (uniform_index(rng, 3) == 0) return SimilarityMetric::constant(uniform01(rng));
  return SimilarityMetric::euclidean(uniform(rng, 0.0, 2.0));
}

}  // namespace pacf::testing

#endif  // PACF_TESTS_GENERATORS_HPP_
