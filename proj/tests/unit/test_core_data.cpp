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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "pacf/dataset.hpp"
#include "pacf/error.hpp"
#include "pacf/expansion.hpp"
#include "pacf/learners.hpp"
#include "pacf/matching.hpp"
#include "pacf/metric.hpp"
#include "pacf/predictor.hpp"
#include "pacf/rademacher.hpp"

namespace pacf {
namespace {

Example ex(std::vector<double> f, int y = 1) { return Example{std::move(f), y, std::nullopt}; }

// --- dataset ---------------------------------------------------------------

TEST(DatasetTest, RejectsBadExamples) {
  EXPECT_THROW(LabeledDataset({}), InvalidArgument);
  EXPECT_THROW(LabeledDataset({ex({0.1, 0.2}), ex({0.1})}), InvalidArgument);
  EXPECT_THROW(LabeledDataset({ex({0.9, 0.9})}), InvalidArgument);
  EXPECT_THROW(LabeledDataset({ex({0.1}, 0)}), InvalidArgument);
  EXPECT_NO_THROW(LabeledDataset({ex({1.0 + 1e-10})}));
}

TEST(DatasetTest, AssignsSourceRowsAndSubsetKeepsThem) {
  const LabeledDataset d({ex({0.1}), ex({0.2}, -1), ex({0.3})});
  EXPECT_EQ(d[2].source_row, 2u);
  const std::vector<std::size_t> idx{2, 0};
  const LabeledDataset s = d.subset(idx);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].source_row, 2u);
  EXPECT_EQ(s[1].source_row, 0u);
}

TEST(DatasetTest, CsvRoundTripIsExact) {
  Rng rng = make_rng(5);
  const LabeledDataset d = testing::random_dataset(rng, 50, 4);
  const LabeledDataset back = parse_dataset_csv(format_dataset_csv(d));
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back[i].features, d[i].features);
    EXPECT_EQ(back[i].label, d[i].label);
  }
  EXPECT_EQ(format_dataset_csv(back), format_dataset_csv(d));
}

TEST(DatasetTest, CsvHeaderAndLabelsChecked) {
  EXPECT_EQ(format_dataset_csv(LabeledDataset({ex({0.5, -0.25}, -1)})).substr(0, 8), "x1,x2,y\n");
  EXPECT_THROW(parse_dataset_csv("x1,y\n0.1,2\n"), InvalidArgument);
  EXPECT_THROW(parse_dataset_csv("x1,y\nabc,1\n"), InvalidArgument);
}

// --- metric ----------------------------------------------------------------

TEST(MetricTest, EuclideanIsScaledAndCapped) {
  const auto d = SimilarityMetric::euclidean(2.0);
  EXPECT_DOUBLE_EQ(d(ex({0.0, 0.0}), ex({0.3, 0.4})), 1.0);
  EXPECT_DOUBLE_EQ(d(ex({0.0, 0.0}), ex({0.03, 0.04})), 0.1);
  EXPECT_THROW(SimilarityMetric::euclidean(-1.0), InvalidArgument);
}

TEST(MetricTest, ConstantIsZeroOnIdenticalPoints) {
  const auto d = SimilarityMetric::constant(0.7);
  EXPECT_EQ(d(ex({0.1}), ex({0.1})), 0.0);
  EXPECT_EQ(d(ex({0.1}), ex({0.2})), 0.7);
  EXPECT_THROW(SimilarityMetric::constant(1.5), InvalidArgument);
}

TEST(MetricTest, ConstantOneHasNoViolations) {
  Rng rng = make_rng(6);
  const LabeledDataset s = testing::random_dataset(rng, 30, 3);
  const ValidationReport r = validate_metric(SimilarityMetric::constant(1.0), s, 2000, 1);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.triples_checked, 2000u);
}

TEST(MetricTest, BuiltInMetricsValidate) {
  Rng rng = make_rng(7);
  const LabeledDataset s = testing::random_dataset(rng, 40, 3);
  for (double scale : {0.1, 1.0, 5.0}) {
    EXPECT_TRUE(validate_metric(SimilarityMetric::euclidean(scale), s, 3000, 2).ok());
  }
}

TEST(MetricTest, MatrixTriangleViolationReported) {
  // a=0, b=1, c=2: d(a,b)=0.9, d(b,c)=0.05, d(a,c)=1.0 > 0.95.
  auto m = std::make_shared<const DistanceMatrix>(
      std::vector<double>{0.0, 0.9, 1.0, 0.9, 0.0, 0.05, 1.0, 0.05, 0.0}, 3,
      std::vector<std::size_t>{0, 1, 2});
  const LabeledDataset s({ex({0.1}), ex({0.2}), ex({0.3})});
  const ValidationReport r = validate_metric(SimilarityMetric::precomputed(m), s, 50, 3);
  ASSERT_FALSE(r.triangle_violations.empty());
  const auto& t = r.triangle_violations.front();
  EXPECT_GT(t.d_ij, t.d_ik + t.d_kj);
}

TEST(MetricTest, MatrixMissingIndexIsUndefined) {
  auto m = std::make_shared<const DistanceMatrix>(std::vector<double>{0.0, 0.5, 0.5, 0.0}, 2,
                                                  std::vector<std::size_t>{0, 1});
  const auto d = SimilarityMetric::precomputed(m);
  const LabeledDataset s({ex({0.1}), ex({0.2}), ex({0.3})});
  EXPECT_DOUBLE_EQ(d(s[0], s[1]), 0.5);
  try {
    d(s[0], s[2]);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "metric undefined for pair");
  }
  EXPECT_THROW(d(ex({0.1}), s[0]), InvalidArgument);
}

TEST(MetricTest, ReadsMatrixWithIndexFile) {
  const auto dir = std::filesystem::temp_directory_path() / "pacf_metric_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "m.csv") << "0,0.25\n0.25,0\n";
    std::ofstream(dir / "m.csv.index") << "1\n0\n";
  }
  const auto m = read_distance_matrix(dir / "m.csv", dir / "m.csv.index");
  EXPECT_EQ(m->row_to_source, (std::vector<std::size_t>{1, 0}));
  const LabeledDataset s({ex({0.1}), ex({0.2})});
  EXPECT_DOUBLE_EQ(SimilarityMetric::precomputed(m)(s[0], s[1]), 0.25);
  std::ofstream(dir / "bad.csv") << "0,0.25\n";
  EXPECT_THROW(read_distance_matrix(dir / "bad.csv", ""), InvalidArgument);
}

// --- predictor -------------------------------------------------------------

TEST(PredictorTest, SpecExamples) {
  EXPECT_DOUBLE_EQ(Predictor::linear({0.0, 0.0}).predict(ex({0.3, -0.4})), 0.5);
  EXPECT_DOUBLE_EQ(Predictor::logistic({0.6, 0.0}, 2.5).predict(ex({0.0, 0.9})), 0.5);
  // <w, x> = 1 with l = 1: 1 / (1 + e^-4).
  const double want = 1.0 / (1.0 + std::exp(-4.0));
  EXPECT_NEAR(Predictor::logistic({1.0, 0.0}, 1.0).predict(ex({1.0, 0.0})), want, 1e-15);
  EXPECT_NEAR(want, 0.98201, 1e-5);
}

TEST(PredictorTest, RejectsBadParameters) {
  EXPECT_THROW(Predictor::linear({1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(Predictor::constant(1.5), InvalidArgument);
  EXPECT_THROW(Predictor::linear({0.1}).predict(ex({0.1, 0.1})), InvalidArgument);
}

TEST(PredictorTest, OutputsInUnitIntervalForEveryVariant) {
  Rng rng = make_rng(8);
  const std::size_t n = 3;
  std::vector<Predictor> hs{Predictor::constant(0.3), Predictor::linear(testing::random_in_ball(rng, n)),
                            Predictor::logistic(testing::random_in_ball(rng, n), 4.0),
                            Predictor::halfspace(testing::random_in_ball(rng, n))};
  const LabeledDataset support = testing::random_dataset(rng, 6, n);
  std::vector<double> beta(6);
  for (auto& b : beta) b = uniform(rng, -3.0, 3.0);
  hs.push_back(Predictor::kernel(support.examples(), beta, KernelSpec::vovk_half()));
  for (const auto& h : hs) {
    for (int k = 0; k < 10000; ++k) {
      const double p = h.predict(testing::random_example(rng, n));
      ASSERT_GE(p, 0.0) << h.variant_name();
      ASSERT_LE(p, 1.0) << h.variant_name();
    }
  }
}

TEST(PredictorTest, LinearIsHalfLipschitz) {
  Rng rng = make_rng(9);
  for (int k = 0; k < 5000; ++k) {
    const Predictor h = Predictor::linear(testing::random_in_ball(rng, 4));
    const Example a = testing::random_example(rng, 4), b = testing::random_example(rng, 4);
    double dist = 0.0;
    for (int c = 0; c < 4; ++c) dist += (a.features[c] - b.features[c]) * (a.features[c] - b.features[c]);
    ASSERT_LE(std::abs(h.predict(a) - h.predict(b)), 0.5 * std::sqrt(dist) + 1e-15);
  }
}

TEST(PredictorTest, LogisticLinkIsMonotoneAndLipschitz) {
  Rng rng = make_rng(10);
  for (int k = 0; k < 5000; ++k) {
    const double l = uniform(rng, 0.0, 5.0);
    const double a = uniform(rng, -1.0, 1.0), b = uniform(rng, -1.0, 1.0);
    if (a <= b) {
      ASSERT_LE(logistic_link(a, l), logistic_link(b, l));
    }
    ASSERT_LE(std::abs(logistic_link(a, l) - logistic_link(b, l)), l * std::abs(a - b) + 1e-15);
  }
}

TEST(PredictorTest, KernelRawAndClamped) {
  const LabeledDataset sup({ex({0.0, 0.0})});
  const Predictor h = Predictor::kernel(sup.examples(), {1.5}, KernelSpec::vovk_half());
  EXPECT_DOUBLE_EQ(h.raw_score(ex({0.5, 0.5})), 1.5);  // K(0, x) = 1
  EXPECT_DOUBLE_EQ(h.predict(ex({0.5, 0.5})), 1.0);
}

TEST(PredictorTest, HalfspaceIsIndicator) {
  const Predictor h = Predictor::halfspace({0.0, 1.0});
  EXPECT_EQ(h.predict(ex({0.3, 0.5})), 1.0);
  EXPECT_EQ(h.predict(ex({0.3, -0.5})), 0.0);
  EXPECT_EQ(h.predict(ex({0.3, 0.0})), 0.0);
}

// --- kernel spec and Gram ----------------------------------------------------

TEST(KernelTest, VovkValuesAndRange) {
  const KernelSpec k = KernelSpec::vovk_half();
  EXPECT_DOUBLE_EQ(k(ex({1.0, 0.0}), ex({1.0, 0.0})), 2.0);
  EXPECT_DOUBLE_EQ(k(ex({1.0, 0.0}), ex({-1.0, 0.0})), 2.0 / 3.0);
  EXPECT_EQ(k.sup_value(), 2.0);
  Rng rng = make_rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double v = k(testing::random_example(rng, 3), testing::random_example(rng, 3));
    ASSERT_GE(v, 2.0 / 3.0 - 1e-15);
    ASSERT_LE(v, 2.0 + 1e-15);
  }
}

TEST(KernelTest, GramExamples) {
  const LabeledDataset zeros({ex({0.0, 0.0}), ex({0.0, 0.0}), ex({0.0, 0.0})});
  EXPECT_TRUE(gram_matrix(zeros, KernelSpec::vovk_half()).isApprox(Eigen::MatrixXd::Ones(3, 3)));
  const LabeledDataset anti({ex({1.0, 0.0}), ex({-1.0, 0.0})});
  const Eigen::MatrixXd g = gram_matrix(anti, KernelSpec::vovk_half());
  EXPECT_DOUBLE_EQ(g(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(g(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(g(0, 1), 2.0 / 3.0);
}

TEST(KernelTest, RandomGramsArePsd) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = make_rng(12, t);
    const LabeledDataset s = testing::random_dataset(rng, 5 + uniform_index(rng, 40), 1 + uniform_index(rng, 5));
    const Eigen::MatrixXd g = gram_matrix(s, KernelSpec::vovk_half());
    EXPECT_NO_THROW(check_psd(g));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8 * es.eigenvalues().maxCoeff());
  }
}

// --- matching --------------------------------------------------------------

TEST(MatchingTest, ConsecutiveExamples) {
  const Matching m5 = build_matching(5, ConsecutiveStrategy{});
  EXPECT_EQ(m5.pairs(), (std::vector<IndexPair>{{0, 1}, {2, 3}}));
  const Matching m4 = build_matching(4, ConsecutiveStrategy{});
  EXPECT_EQ(m4.pairs(), (std::vector<IndexPair>{{0, 1}, {2, 3}}));
}

TEST(MatchingTest, RandomIsDeterministic) {
  EXPECT_EQ(build_matching(5, RandomPermutationStrategy{7}).pairs(),
            build_matching(5, RandomPermutationStrategy{7}).pairs());
}

TEST(MatchingTest, TooSmallSample) {
  try {
    build_matching(1, ConsecutiveStrategy{});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "insufficient examples for matching");
  }
}

TEST(MatchingTest, RejectsOverlappingPairs) {
  EXPECT_THROW(Matching({{0, 1}, {1, 2}}, 3), InvalidArgument);
  EXPECT_THROW(Matching({{0, 3}}, 3), InvalidArgument);
  EXPECT_THROW(Matching({{1, 1}}, 3), InvalidArgument);
}

TEST(MatchingTest, RandomPermutationCoversAllButAtMostOne) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t m = 2 + seed % 37;
    const Matching mt = build_matching(m, RandomPermutationStrategy{seed});
    ASSERT_EQ(mt.size(), m / 2);
    std::set<std::size_t> seen;
    for (const auto& [i, j] : mt.pairs()) {
      ASSERT_TRUE(seen.insert(i).second);
      ASSERT_TRUE(seen.insert(j).second);
    }
    ASSERT_GE(seen.size() + 1, m);
    ASSERT_LT(*seen.rbegin(), m);
  }
}

// --- expansion and hardness metric -------------------------------------------

BitString bits_of(std::uint64_t v, std::size_t len) {
  BitString b(len);
  for (std::size_t i = 0; i < len; ++i) b[i] = (v >> (i % 64)) & 1u;
  return b;
}

TEST(ExpansionTest, DeterministicWithExactLength) {
  for (std::size_t n : {8u, 32u, 128u}) {
    const BitString s = bits_of(0x5a5a5a5a12345678ull, n - 1);
    const BitString a = expand_seed(s, n), b = expand_seed(s, n);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), 2 * n);
    EXPECT_TRUE(std::all_of(a.begin(), a.end(), [](auto v) { return v <= 1; }));
  }
  EXPECT_THROW(expand_seed(bits_of(1, 5), 8), InvalidArgument);
}

TEST(ExpansionTest, NoCollisionsOverTenThousandSeeds) {
  std::set<BitString> outs;
  for (std::uint64_t v = 0; v < 10000; ++v) outs.insert(expand_seed(bits_of(v, 31), 32));
  EXPECT_EQ(outs.size(), 10000u);
}

TEST(ExpansionTest, SeedLengthIsPartOfTheInput) {
  // Same leading bits, different lengths.
  const BitString a = expand_seed(BitString(7, 0));
  const BitString b = expand_seed(BitString(8, 0));
  EXPECT_NE(BitString(a.begin(), a.begin() + 8), BitString(b.begin(), b.begin() + 8));
}

TEST(HardnessMetricTest, Cases) {
  const std::size_t n = 6;
  const BitString s{1, 0, 1, 1, 0};
  const HardnessMetricHandle u = make_u_handle(n, s);
  const std::vector<double> x{0.1, -0.2, 0.3, -0.1, 0.2, 0.5};
  std::vector<double> xp = x;
  for (std::size_t i = 0; i < n - 1; ++i) {
    if (s[i]) xp[i] = -xp[i];
  }
  xp[n - 1] = -0.5;
  EXPECT_EQ(hardness_distance(u, x, x), 0.0);
  EXPECT_EQ(hardness_distance(u, x, xp), 0.0);
  EXPECT_EQ(hardness_distance(u, xp, x), 0.0);
  std::vector<double> same = x;
  same[0] = 0.15;
  EXPECT_EQ(hardness_distance(u, x, same), 1.0);
  std::vector<double> other = xp;
  other[1] = -other[1];
  EXPECT_EQ(hardness_distance(u, x, other), 1.0);
  std::vector<double> zero = x;
  zero[2] = 0.0;
  try {
    hardness_distance(u, zero, xp);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("sign undefined"), std::string::npos);
  }
  EXPECT_THROW(hardness_distance(u, std::vector<double>(5, 0.1), xp), InvalidArgument);
}

TEST(HardnessMetricTest, HandleValidation) {
  EXPECT_THROW(make_u_handle(6, BitString(4, 0)), InvalidArgument);
  EXPECT_THROW(make_v_handle(6, BitString(11, 0)), InvalidArgument);
  HardnessMetricHandle h = make_u_handle(6, BitString(5, 1));
  h.y[0] ^= 1;
  EXPECT_THROW(validate_handle(h), InvalidArgument);
  EXPECT_EQ(parse_hardness_mode("u"), HardnessMode::kU);
  EXPECT_THROW(parse_hardness_mode("w"), InvalidArgument);
}

}  // namespace
}  // namespace pacf
