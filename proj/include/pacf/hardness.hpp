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

#ifndef PACF_HARDNESS_HPP_
#define PACF_HARDNESS_HPP_

// Paired hard distribution for perfect metric-fairness, the two metric
// families built on the expansion function, and an experiment comparing them.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pacf/dataset.hpp"
#include "pacf/expansion.hpp"
#include "pacf/learners.hpp"
#include "pacf/matching.hpp"
#include "pacf/metric.hpp"
#include "pacf/predictor.hpp"

namespace pacf {

// Examples are stored as [x_0, x'_0, x_1, x'_1, ...] so that the consecutive
// matching pairs every point with its counterpart.
struct HardPairedDataset {
  LabeledDataset data;
  std::vector<std::pair<Example, Example>> pairs;

  Matching counterpart_matching() const;
};

struct HardnessSample {
  HardPairedDataset dataset;
  std::shared_ptr<const HardnessMetricHandle> handle;

  SimilarityMetric metric() const { return SimilarityMetric::hardness(handle); }
};

// x has coordinates 1..n-1 uniform in the ball of radius sqrt(3)/2 and
// x_n = +-1/2 with label sign(x_n). The counterpart flips the signs of the
// coordinates selected by the hidden seed (mode U) or by a fresh random
// pattern per pair (mode V), and negates x_n. Requires n >= 4, k_pairs >= 1.
HardnessSample sample_hardness_distribution(std::size_t n, std::size_t k_pairs,
                                            HardnessMode mode, std::uint64_t seed);

// Reference classifier h(x) = 1[x_n > 0] (weights e_n).
Predictor hardness_reference_classifier(std::size_t n);

// Mean |h(x) - (1+y)/2| over the dataset.
double l1_error(const Predictor& h, const LabeledDataset& data);

// Mean l1 error after replacing h(x), h(x') by their average on every
// counterpart pair at distance 0 (pairs at positive distance are left alone).
double fair_projection_error(const Predictor& h, const HardnessSample& sample);

struct LearnerOutcome {
  double error = 0.0;             // l1 error on the training sample
  double empirical_mf_loss = 0.0;  // at gamma, on the counterpart matching
  double empirical_l1_loss = 0.0;
  double tau = 0.0;
  std::size_t iterations = 0;
};

struct HardnessModeReport {
  HardnessMode mode = HardnessMode::kU;
  std::size_t zero_distance_pairs = 0;
  double fair_projection_error = 0.0;  // of the reference classifier
  double reference_error = 0.0;
  std::size_t audited_pairs = 0;
  std::size_t reference_violations = 0;
  std::optional<LearnerOutcome> linear;
  std::optional<LearnerOutcome> kernel;
};

struct HardnessOptions {
  std::size_t n = 32;
  std::size_t k_pairs = 500;
  std::uint64_t seed = 0;
  // Pairs audited for the reference classifier: all counterpart pairs plus
  // random pairs of the sample, up to this total.
  std::size_t audit_pairs = 10000;
  bool train_linear = true;
  bool train_kernel = true;
  // Pairs used for training (a prefix of the sample); 0 means all of them.
  std::size_t train_pairs = 0;
  TrainConfig trainer;
};

HardnessModeReport run_hardness_mode(const HardnessOptions& options, HardnessMode mode);

struct HardnessReport {
  HardnessOptions options;
  std::optional<HardnessModeReport> u;
  std::optional<HardnessModeReport> v;
  // error(U) - error(V) for each learner, when both modes ran.
  std::optional<double> linear_gap;
  std::optional<double> kernel_gap;
};

HardnessReport run_hardness_experiment(const HardnessOptions& options, bool run_u = true,
                                       bool run_v = true);

}  // namespace pacf

#endif  // PACF_HARDNESS_HPP_
