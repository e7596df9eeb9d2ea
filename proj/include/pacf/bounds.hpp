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

#ifndef PACF_BOUNDS_HPP_
#define PACF_BOUNDS_HPP_

// Closed-form generalization bounds and sample-complexity calculators.
// All logarithms are natural.

#include <cstddef>
#include <functional>
#include <string>

namespace pacf {

// 2G (4 r_hat + (4 + 17 sqrt(ln(4/delta))) / sqrt(m - 1)), where r_hat is the
// empirical Rademacher complexity at sample size (m - 1) / 2.
double mf_generalization_delta(double g, double delta, double m, double r_hat);

// Closed kernel-ball form: 2G (4 + 4 sqrt(2) sqrt(C M) + 17 sqrt(ln(4/delta))) / sqrt(m - 1).
double kernel_ball_delta(double g, double delta, double m, double c, double sup_m);

// Generalization slack used to shrink the fairness budget. Linear class:
// kernel_ball_delta with C = M = 1. Kernel class: 8 sqrt(B) replaces 4 sqrt(2).
double linear_rho(double g, double delta, double m);
double kernel_rho(double g, double delta, double m, double b);

struct KernelNormBound {
  double value = 0.0;
  bool overflow = false;  // value is +inf
};

// 6 L^4 + exp(9 L ln(4 L / eps_star) + 5). Requires L >= 3, eps_star in (0, 1).
KernelNormBound kernel_norm_bound_b(double l, double eps_star);

// Smallest odd integer >= x (as a double so that huge values survive).
double ceil_to_odd(double x);

struct SampleComplexity {
  double raw = 0.0;   // formula value before rounding
  double m = 0.0;     // ceil_to_odd(raw); +inf when raw overflows
  std::string dominant;  // which branch of the max attained it
  std::size_t iterations = 0;  // fixed-point iterations (0 when not iterative)
};

// Fairness term of the generic PAC -> PACF reduction,
// max{m_pac, ((8 + 34 sqrt(ln(4/delta))) / (eps_a eps_g - 8 R(k)))^2 + 1}
// where k = (m - 1) / 2 and R(k) is supplied by the caller. m appears on both
// sides; iterate m <- formula(m) from m = start_m (default 3) until stable,
// at most 100 steps. A 2-cycle returns its larger element.
// Throws RuntimeError "Rademacher term dominates; increase m or relax ε" when
// the denominator is not positive, or on non-convergence.
SampleComplexity inf_fpac_sample_complexity(
    double m_pac, double eps_alpha, double eps_gamma, double delta,
    const std::function<double(double k)>& rademacher_at, double start_m = 3.0);

struct LinAccuracyTerms {
  double utility_branch = 0.0;   // ((sqrt2 + sqrt(ln(8/delta))) / (sqrt2 eps))^2
  double fairness_branch = 0.0;  // (4 (4 + 4 sqrt2 + 17 sqrt(ln(4/delta))) / ((1-alpha) ea min{ea, eg/2}))^2
};

LinAccuracyTerms lin_accuracy_terms(double eps, double alpha, double eps_alpha,
                                    double eps_gamma, double delta);
SampleComplexity lin_accuracy_sample_complexity(double eps, double alpha,
                                                double eps_alpha, double eps_gamma,
                                                double delta);

// min{eps, eps_alpha, eps_gamma / 2}.
double sigmoid_eps_star(double eps, double eps_alpha, double eps_gamma);

// max{2 B (2 + 9 sqrt(ln(8/delta))) / eps^2,
//     (4 (4 + 8 sqrt(B) + 17 sqrt(ln(4/delta))) / ((1-alpha) ea eps_star))^2 + 1}
// with B = kernel_norm_bound_b(l, eps_star).
SampleComplexity sigmoid_accuracy_sample_complexity(double eps, double alpha,
                                                    double eps_alpha,
                                                    double eps_gamma, double delta,
                                                    double l);

}  // namespace pacf

#endif  // PACF_BOUNDS_HPP_
