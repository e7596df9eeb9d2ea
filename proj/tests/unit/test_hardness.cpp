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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "pacf/error.hpp"
#include "pacf/fairness.hpp"
#include "pacf/hardness.hpp"

namespace pacf {
namespace {

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

TEST(HardnessSamplerTest, PairStructure) {
  for (HardnessMode mode : {HardnessMode::kU, HardnessMode::kV}) {
    const HardnessSample hs = sample_hardness_distribution(16, 300, mode, 1);
    const auto& pairs = hs.dataset.pairs;
    ASSERT_EQ(pairs.size(), 300u);
    ASSERT_EQ(hs.dataset.data.size(), 600u);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [x, xp] = pairs[k];
      EXPECT_EQ(std::abs(x.features[15]), 0.5);
      EXPECT_EQ(xp.features[15], -x.features[15]);
      EXPECT_EQ(x.label, -xp.label);
      EXPECT_EQ(x.label, x.features[15] > 0 ? 1 : -1);
      EXPECT_LE(norm(x.features), 1.0 + 1e-12);
      EXPECT_EQ(hs.dataset.data[2 * k].features, x.features);
      EXPECT_EQ(hs.dataset.data[2 * k + 1].features, xp.features);
      for (std::size_t i = 0; i + 1 < 16; ++i) {
        EXPECT_EQ(std::abs(x.features[i]), std::abs(xp.features[i]));
        EXPECT_NE(x.features[i], 0.0);
      }
    }
  }
}

TEST(HardnessSamplerTest, ModeUCounterpartsAtDistanceZero) {
  const HardnessSample hs = sample_hardness_distribution(32, 500, HardnessMode::kU, 2);
  const SimilarityMetric d = hs.metric();
  for (const auto& [x, xp] : hs.dataset.pairs) ASSERT_EQ(d(x, xp), 0.0);
  // The hidden flip pattern is the stored seed.
  ASSERT_TRUE(hs.handle->seed.has_value());
  const auto& [x, xp] = hs.dataset.pairs.front();
  for (std::size_t i = 0; i + 1 < 32; ++i) {
    EXPECT_EQ((*hs.handle->seed)[i], x.features[i] != xp.features[i] ? 1 : 0);
  }
}

TEST(HardnessSamplerTest, ModeVHasNoZeroDistancePairs) {
  const HardnessSample hs = sample_hardness_distribution(16, 10000, HardnessMode::kV, 3);
  const SimilarityMetric d = hs.metric();
  std::size_t zeros = 0;
  for (const auto& [x, xp] : hs.dataset.pairs) zeros += d(x, xp) == 0.0;
  EXPECT_EQ(zeros, 0u);
}

TEST(HardnessSamplerTest, DeterministicAndValidated) {
  const auto a = sample_hardness_distribution(8, 20, HardnessMode::kU, 4);
  const auto b = sample_hardness_distribution(8, 20, HardnessMode::kU, 4);
  EXPECT_EQ(a.handle->y, b.handle->y);
  EXPECT_EQ(a.dataset.pairs.back().second.features, b.dataset.pairs.back().second.features);
  EXPECT_THROW(sample_hardness_distribution(3, 20, HardnessMode::kU, 4), InvalidArgument);
  EXPECT_THROW(sample_hardness_distribution(8, 0, HardnessMode::kU, 4), InvalidArgument);
}

TEST(HardnessMetricPropertyTest, SymmetricOnSampledPairs) {
  const HardnessSample hs = sample_hardness_distribution(12, 200, HardnessMode::kU, 5);
  const SimilarityMetric d = hs.metric();
  const auto& s = hs.dataset.data;
  Rng rng = make_rng(6);
  for (int k = 0; k < 20000; ++k) {
    const auto i = uniform_index(rng, s.size()), j = uniform_index(rng, s.size());
    ASSERT_EQ(d(s[i], s[j]), d(s[j], s[i]));
  }
}

TEST(ProjectionTest, ModeUForcesHalfErrorPerPair) {
  const HardnessSample hs = sample_hardness_distribution(16, 200, HardnessMode::kU, 7);
  Rng rng = make_rng(8);
  for (int t = 0; t < 20; ++t) {
    const Predictor h = testing::random_predictor(rng, 16);
    EXPECT_NEAR(fair_projection_error(h, hs), 0.5, 1e-12);
    // Per pair, with labels +-1: averaged outputs a on both points give
    // |a - 1| + |a - 0| = 1.
    for (const auto& [x, xp] : hs.dataset.pairs) {
      const double a = 0.5 * (h.predict(x) + h.predict(xp));
      ASSERT_NEAR(std::abs(a - x.target()) + std::abs(a - xp.target()), 1.0, 1e-12);
    }
  }
  EXPECT_NEAR(fair_projection_error(hardness_reference_classifier(16), hs), 0.5, 1e-12);
}

TEST(ProjectionTest, ModeVLeavesReferenceExact) {
  const HardnessSample hs = sample_hardness_distribution(16, 200, HardnessMode::kV, 9);
  const Predictor w = hardness_reference_classifier(16);
  EXPECT_EQ(l1_error(w, hs.dataset.data), 0.0);
  EXPECT_EQ(fair_projection_error(w, hs), 0.0);
}

TEST(ProjectionTest, ModeVEveryPredictorIsPerfectlyFairOnSampledPairs) {
  const HardnessSample hs = sample_hardness_distribution(16, 500, HardnessMode::kV, 10);
  Rng rng = make_rng(11);
  for (int t = 0; t < 20; ++t) {
    const Predictor h = testing::random_predictor(rng, 16);
    EXPECT_TRUE(is_perfectly_fair(h, hs.dataset.pairs, hs.metric(), 0.0).fair);
  }
}

TEST(HardnessExperimentTest, SmallRun) {
  HardnessOptions o;
  o.n = 16;
  o.k_pairs = 100;
  o.seed = 12;
  o.audit_pairs = 2000;
  o.trainer.alpha = 0.05;
  o.trainer.gamma = 0.1;
  o.trainer.eps_alpha = o.trainer.eps_gamma = o.trainer.eps = 0.05;
  o.trainer.solver.max_iters = 1500;
  const HardnessReport r = run_hardness_experiment(o);
  ASSERT_TRUE(r.u && r.v);
  EXPECT_EQ(r.u->zero_distance_pairs, 100u);
  EXPECT_EQ(r.v->zero_distance_pairs, 0u);
  EXPECT_NEAR(r.u->fair_projection_error, 0.5, 1e-12);
  EXPECT_EQ(r.v->reference_error, 0.0);
  EXPECT_EQ(r.v->reference_violations, 0u);
  EXPECT_EQ(r.v->audited_pairs, 2000u);
  ASSERT_TRUE(r.u->linear && r.v->linear && r.u->kernel && r.v->kernel);
  // Fair on the counterpart matching in mode U, within the l1 budget.
  EXPECT_LE(r.u->linear->empirical_l1_loss, r.u->linear->tau + 1e-6);
  EXPECT_LE(r.u->kernel->empirical_l1_loss, r.u->kernel->tau + 1e-6);
  EXPECT_NEAR(*r.linear_gap, r.u->linear->error - r.v->linear->error, 1e-15);
  EXPECT_GT(r.u->linear->error, 0.45);
  EXPECT_GT(*r.kernel_gap, 0.3);
}

}  // namespace
}  // namespace pacf
