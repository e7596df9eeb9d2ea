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
#include <limits>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "generators.hpp"
#include "pacf/bounds.hpp"
#include "pacf/error.hpp"
#include "pacf/rademacher.hpp"

namespace pacf {
namespace {

using LD = long double;

LD rel(LD a, LD b) { return std::fabs(a - b) / std::fabs(b); }

// --- Rademacher -----------------------------------------------------------------

TEST(RademacherTest, IdentityGramIsExact) {
  const auto r = empirical_rademacher_kernel_ball(Eigen::MatrixXd::Identity(16, 16), 1.0, 500, 1);
  EXPECT_DOUBLE_EQ(r.value, 0.25);
  EXPECT_NEAR(r.mc_half_width, 0.0, 1e-15);
  EXPECT_EQ(r.n_draws, 500u);
}

TEST(RademacherTest, AllOnesTwoByTwo) {
  // Sign vectors: |s1 + s2| / 2 is 1 for two of four, 0 for the others.
  const auto r = empirical_rademacher_kernel_ball(Eigen::MatrixXd::Ones(2, 2), 1.0, 10000, 2);
  EXPECT_NEAR(r.value, 0.5, 0.01);
}

TEST(RademacherTest, ScalesLinearlyInC) {
  const Eigen::MatrixXd k = Eigen::MatrixXd::Identity(9, 9);
  EXPECT_DOUBLE_EQ(empirical_rademacher_kernel_ball(k, 0.5, 10, 3).value, 0.5 / 3.0);
}

TEST(RademacherTest, BelowPremiseBoundOnRandomGrams) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = make_rng(t, 0xbeef);
    const std::size_t m = 4 + uniform_index(rng, 40);
    const LabeledDataset s = testing::random_dataset(rng, m, 1 + uniform_index(rng, 4));
    const KernelSpec ks = uniform_index(rng, 2) ? KernelSpec::vovk_half() : KernelSpec::linear_dot();
    Eigen::MatrixXd k(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) k(i, j) = ks(s[i], s[j]);
    }
    const double c = uniform(rng, 0.05, 1.0);
    const double sup_m = k.diagonal().maxCoeff();
    const auto r = empirical_rademacher_kernel_ball(k, c, 2000, t);
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, std::sqrt(c * sup_m / m) + r.mc_half_width) << t;
  }
}

TEST(RademacherTest, DeterministicGivenSeed) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Constant(5, 5, 0.3) + Eigen::MatrixXd::Identity(5, 5);
  EXPECT_EQ(empirical_rademacher_kernel_ball(k, 1.0, 100, 4).value,
            empirical_rademacher_kernel_ball(k, 1.0, 100, 4).value);
}

TEST(RademacherTest, RejectsNonPsd) {
  Eigen::MatrixXd k(2, 2);
  k << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(check_psd(k), InvalidArgument);
  EXPECT_THROW(empirical_rademacher_kernel_ball(k, 1.0, 10, 1), InvalidArgument);
  EXPECT_THROW(empirical_rademacher_kernel_ball(Eigen::MatrixXd::Identity(2, 2), 0.0, 10, 1), InvalidArgument);
}

// --- generalization deltas --------------------------------------------------------

TEST(DeltaTest, MainExample) {
  const LD want = 2.0L * 10 * (4.0L * 0.001L + (4.0L + 17.0L * std::sqrt(std::log(4.0L / 0.05L))) / 1000.0L);
  const double got = mf_generalization_delta(10.0, 0.05, 1e6 + 1, 0.001);
  EXPECT_LT(rel(got, want), 1e-12);
  EXPECT_NEAR(got, 0.87173, 1e-5);
}

TEST(DeltaTest, LinearInGAtZeroRademacher) {
  for (double g : {1.0, 3.0, 17.5}) {
    EXPECT_NEAR(mf_generalization_delta(2 * g, 0.1, 501, 0.0), 2.0 * mf_generalization_delta(g, 0.1, 501, 0.0), 1e-12);
  }
}

TEST(DeltaTest, KernelBallExample) {
  const LD want = 2.0L * (4.0L + 4.0L * std::sqrt(2.0L) + 17.0L * std::sqrt(std::log(80.0L))) / 20.0L;
  const double got = kernel_ball_delta(1.0, 0.05, 401, 1.0, 1.0);
  EXPECT_LT(rel(got, want), 1e-12);
  EXPECT_NEAR(got, 4.52434, 1e-5);
  EXPECT_DOUBLE_EQ(linear_rho(1.0, 0.05, 401), got);
}

TEST(DeltaTest, KernelRhoCoefficient) {
  const LD want = 2.0L * 5 * (4.0L + 8.0L * std::sqrt(9.0L) + 17.0L * std::sqrt(std::log(40.0L))) / 10.0L;
  EXPECT_LT(rel(kernel_rho(5.0, 0.1, 101, 9.0), want), 1e-12);
}

TEST(DeltaTest, RejectsBadArguments) {
  EXPECT_THROW(mf_generalization_delta(10.0, 1.0, 101, 0.0), InvalidArgument);
  EXPECT_THROW(mf_generalization_delta(10.0, 0.0, 101, 0.0), InvalidArgument);
  EXPECT_THROW(mf_generalization_delta(0.5, 0.1, 101, 0.0), InvalidArgument);
  EXPECT_THROW(mf_generalization_delta(10.0, 0.1, 1, 0.0), InvalidArgument);
}

TEST(DeltaTest, NonNegativeAndDecreasingInM) {
  Rng rng = make_rng(70);
  for (int i = 0; i < 1000; ++i) {
    const double g = uniform(rng, 1.0, 50.0), d = uniform(rng, 0.001, 0.999);
    const double m = 3 + uniform_index(rng, 100000), r = uniform(rng, 0.0, 1.0);
    const double a = mf_generalization_delta(g, d, m, r);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(mf_generalization_delta(g, d, 4 * m, r), a);
  }
}

// --- kernel norm bound ------------------------------------------------------------

TEST(KernelNormTest, Example) {
  const LD want = 486.0L + std::exp(27.0L * std::log(24.0L) + 5.0L);
  const auto b = kernel_norm_bound_b(3.0, 0.5);
  EXPECT_FALSE(b.overflow);
  EXPECT_LT(rel(b.value, want), 1e-12);
  EXPECT_NEAR(b.value / 1e39, 2.74, 0.005);
}

TEST(KernelNormTest, DecreasingInEpsStar) {
  double prev = std::numeric_limits<double>::infinity();
  for (double e = 0.05; e < 1.0; e += 0.05) {
    const auto b = kernel_norm_bound_b(3.0, e);
    ASSERT_LT(b.value, prev);
    prev = b.value;
  }
}

TEST(KernelNormTest, OverflowSentinel) {
  const auto b = kernel_norm_bound_b(40.0, 0.01);
  EXPECT_TRUE(b.overflow);
  EXPECT_TRUE(std::isinf(b.value));
  EXPECT_THROW(kernel_norm_bound_b(2.0, 0.5), InvalidArgument);
  EXPECT_THROW(kernel_norm_bound_b(3.0, 1.0), InvalidArgument);
}

// --- sample complexities ----------------------------------------------------------

TEST(SampleComplexityTest, CeilToOdd) {
  EXPECT_EQ(ceil_to_odd(672.35), 673.0);
  EXPECT_EQ(ceil_to_odd(673.0), 673.0);
  EXPECT_EQ(ceil_to_odd(673.5), 675.0);
  EXPECT_EQ(ceil_to_odd(674.0), 675.0);
  EXPECT_EQ(ceil_to_odd(0.2), 1.0);
}

TEST(SampleComplexityTest, LinAccuracyBranches) {
  const auto t = lin_accuracy_terms(0.1, 0.1, 0.1, 0.1, 0.05);
  const LD u = std::pow((std::sqrt(2.0L) + std::sqrt(std::log(160.0L))) / (std::sqrt(2.0L) * 0.1L), 2);
  const LD f = std::pow(4.0L * (4.0L + 4.0L * std::sqrt(2.0L) + 17.0L * std::sqrt(std::log(80.0L))) /
                            (0.9L * 0.1L * 0.05L), 2);
  EXPECT_LT(rel(t.utility_branch, u), 1e-12);
  EXPECT_LT(rel(t.fairness_branch, f), 1e-12);
  EXPECT_EQ(std::ceil(t.utility_branch), 673.0);
  const auto sc = lin_accuracy_sample_complexity(0.1, 0.1, 0.1, 0.1, 0.05);
  EXPECT_EQ(sc.dominant, "fairness");
  EXPECT_EQ(sc.m, ceil_to_odd(t.fairness_branch));
}

TEST(SampleComplexityTest, UtilityBranchInverseSquare) {
  const double a = lin_accuracy_terms(0.1, 0.1, 0.1, 0.1, 0.05).utility_branch;
  const double b = lin_accuracy_terms(0.05, 0.1, 0.1, 0.1, 0.05).utility_branch;
  EXPECT_NEAR(b / a, 4.0, 0.08);
}

TEST(SampleComplexityTest, SigmoidAccuracy) {
  EXPECT_DOUBLE_EQ(sigmoid_eps_star(0.3, 0.2, 0.5), 0.2);
  EXPECT_DOUBLE_EQ(sigmoid_eps_star(0.3, 0.2, 0.2), 0.1);
  // L = 3, eps* = 0.5: B ~ 2.74e39.
  // eps = 0.4, eps_alpha = 0.5, eps_gamma = 0.9: eps* = 0.4, L = 3.
  const auto sc = sigmoid_accuracy_sample_complexity(0.4, 0.1, 0.5, 0.9, 0.05, 3.0);
  const LD b = 486.0L + std::exp(27.0L * std::log(30.0L) + 5.0L);
  const LD u = 2.0L * b * (2.0L + 9.0L * std::sqrt(std::log(160.0L))) / 0.16L;
  const LD f = std::pow(4.0L * (4.0L + 8.0L * std::sqrt(b) + 17.0L * std::sqrt(std::log(80.0L))) /
                            (0.9L * 0.5L * 0.4L), 2) + 1.0L;
  EXPECT_LT(rel(sc.raw, std::max(u, f)), 1e-9);
  EXPECT_GE(sc.m, sc.raw);
}

TEST(SampleComplexityTest, InfFpacConstantRademacher) {
  // R = 0: the fairness term is fixed, one evaluation suffices.
  const auto sc = inf_fpac_sample_complexity(10.0, 0.5, 0.5, 0.05, [](double) { return 0.0; });
  const LD want = std::pow((8.0L + 34.0L * std::sqrt(std::log(80.0L))) / 0.25L, 2) + 1.0L;
  EXPECT_LT(rel(sc.raw, want), 1e-12);
  EXPECT_EQ(sc.m, ceil_to_odd(static_cast<double>(want)));
  EXPECT_EQ(sc.dominant, "fairness");
  const auto pac = inf_fpac_sample_complexity(1e9, 0.5, 0.5, 0.05, [](double) { return 0.0; });
  EXPECT_EQ(pac.dominant, "m_pac");
  EXPECT_EQ(pac.m, ceil_to_odd(1e9));
}

TEST(SampleComplexityTest, InfFpacFixedPointIsConsistent) {
  const auto r = [](double k) { return 1.0 / std::sqrt(k); };
  const auto sc = inf_fpac_sample_complexity(1.0, 0.5, 0.5, 0.05, r, 10001);
  const double k = (sc.m - 1) / 2;
  const double term = std::pow((8 + 34 * std::sqrt(std::log(80.0))) / (0.25 - 8 * r(k)), 2) + 1;
  EXPECT_GE(sc.m, term);
  EXPECT_GT(sc.iterations, 0u);
  // Iterates from 10001 settle in the 2-cycle {131007, 131009}.
  EXPECT_EQ(sc.m, 131009.0);
}

TEST(SampleComplexityTest, InfFpacRademacherDominates) {
  try {
    inf_fpac_sample_complexity(1.0, 0.1, 0.1, 0.05, [](double) { return 0.01; });
    FAIL();
  } catch (const RuntimeError& e) {
    EXPECT_STREQ(e.what(), "Rademacher term dominates; increase m or relax ε");
  }
}

}  // namespace
}  // namespace pacf
