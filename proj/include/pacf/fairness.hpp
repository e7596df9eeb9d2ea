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

#ifndef PACF_FAIRNESS_HPP_
#define PACF_FAIRNESS_HPP_

// Metric-fairness losses and audits. All losses are per-edge averages over a
// matching; predictions enter only through |h(x) - h(x')|.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pacf/dataset.hpp"
#include "pacf/matching.hpp"
#include "pacf/metric.hpp"
#include "pacf/predictor.hpp"
#include "pacf/rng.hpp"

namespace pacf {

struct FairnessParams {
  double alpha = 0.1;
  double gamma = 0.1;
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::optional<double> tau;
  std::optional<double> sigma;

  // Throws InvalidArgument when a field is outside its range.
  void validate() const;
  // True when alpha1 * alpha2 >= alpha, i.e. (alpha, gamma)-fairness implies
  // (alpha1, alpha2; gamma)-fairness.
  bool group_implication_applies() const;
};

// sigma_gamma(u) = 1 if u > gamma else 0.
inline double threshold_indicator(double u, double gamma) {
  return u > gamma ? 1.0 : 0.0;
}

// Piecewise-linear G-Lipschitz ramp between the thresholds at gamma and
// gamma + 1/G: sigma_{gamma+1/G}(u) <= ramp(u) <= sigma_gamma(u).
double surrogate_ramp(double u, double gamma, double lipschitz_g);

// 1 iff |h(x) - h(x')| > d(x, x') + gamma (strict).
int pair_mf_loss(const Predictor& h, const Example& x, const Example& xp,
                 const SimilarityMetric& d, double gamma);
// max(0, |h(x) - h(x')| - d(x, x')).
double pair_l1_loss(const Predictor& h, const Example& x, const Example& xp,
                    const SimilarityMetric& d);
// Ramp applied to u = |h(x) - h(x')| - d(x, x'). Requires G >= 1.
double surrogate_loss(const Predictor& h, const Example& x, const Example& xp,
                      const SimilarityMetric& d, double gamma, double lipschitz_g);

// Prediction differences and distances on each matching edge.
struct EdgeTable {
  std::vector<double> diff;  // h(x_i) - h(x_j)
  std::vector<double> dist;  // d(x_i, x_j)
  std::size_t size() const { return diff.size(); }
};

EdgeTable make_edge_table(std::span<const double> predictions,
                          const LabeledDataset& sample, const Matching& matching,
                          const SimilarityMetric& d);

// Throw InvalidArgument on an empty matching or one built for another sample.
double empirical_mf_loss(const Predictor& h, const LabeledDataset& sample,
                         const Matching& matching, const SimilarityMetric& d,
                         double gamma);
double empirical_l1_loss(const Predictor& h, const LabeledDataset& sample,
                         const Matching& matching, const SimilarityMetric& d);
double empirical_mf_loss(const EdgeTable& edges, double gamma);
double empirical_l1_loss(const EdgeTable& edges);

// Entry e: max(0, |h(x) - h(x')| - d - gamma) clamped to [0, 1].
struct ViolationVector {
  std::vector<double> values;

  std::size_t l0() const;
  double l1() const;
};

ViolationVector violation_vector(const Predictor& h, const LabeledDataset& sample,
                                 const Matching& matching, const SimilarityMetric& d,
                                 double gamma);

// Draws one example per call.
using ExampleSampler = std::function<Example(Rng&)>;

struct PopulationEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // two-sided Hoeffding at 95%
  std::size_t n_pairs = 0;
};

// sqrt(ln(2 / (1 - confidence)) / (2 n)).
double hoeffding_half_width(std::size_t n, double confidence = 0.95);

// Monte-Carlo estimate of Pr[|h(x) - h(x')| > d(x, x') + gamma] over i.i.d.
// pairs. Pair k is drawn from a generator seeded by (seed, k), so the result
// does not depend on `threads`.
PopulationEstimate population_mf_estimate(const Predictor& h,
                                          const ExampleSampler& sampler,
                                          const SimilarityMetric& d, double gamma,
                                          std::size_t n_pairs, std::uint64_t seed,
                                          unsigned threads = 1);

// Violation rate over all ordered pairs of S x S (the diagonal included).
// Same draws thresholded at every gamma in `gammas`.
std::vector<PopulationEstimate> population_mf_estimates(
    const Predictor& h, const ExampleSampler& sampler, const SimilarityMetric& d,
    std::span<const double> gammas, std::size_t n_pairs, std::uint64_t seed,
    unsigned threads = 1);

double all_pairs_mf_loss(const Predictor& h, const LabeledDataset& sample,
                         const SimilarityMetric& d, double gamma);

struct GroupProfilePoint {
  double alpha2 = 0.0;
  double alpha1 = 0.0;  // fraction of x whose violation rate exceeds alpha2
};

// Per-individual violation rates use the uniform distribution on S for x'
// (all ordered pairs, x' = x included).
std::vector<GroupProfilePoint> group_fairness_profile(
    const Predictor& h, const LabeledDataset& sample, const SimilarityMetric& d,
    double gamma, std::span<const double> alpha2_grid);

struct PerfectFairnessResult {
  bool fair = true;
  std::vector<std::size_t> violating_pairs;  // indices into the input pairs
};

PerfectFairnessResult is_perfectly_fair(
    const Predictor& h, std::span<const std::pair<Example, Example>> pairs,
    const SimilarityMetric& d, double tolerance);

struct FairnessReport {
  double gamma = 0.0;
  double empirical_mf_loss = 0.0;
  double empirical_l1_loss = 0.0;
  std::optional<PopulationEstimate> population;
  std::vector<GroupProfilePoint> group_profile;
  std::size_t n_edges = 0;
};

struct AuditOptions {
  double gamma = 0.1;
  std::vector<double> alpha2_grid;
  std::size_t population_pairs = 0;  // 0 skips the Monte-Carlo estimate
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

FairnessReport audit(const Predictor& h, const LabeledDataset& sample,
                     const Matching& matching, const SimilarityMetric& d,
                     const AuditOptions& options,
                     const ExampleSampler* population_sampler = nullptr);

}  // namespace pacf

#endif  // PACF_FAIRNESS_HPP_
