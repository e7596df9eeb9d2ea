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

#include "pacf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pacf/error.hpp"

namespace pacf {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr int kMaxFixedPointIters = 100;

void check_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
}

void check_g_m(double g, double m) {
  if (!(g >= 1.0)) throw InvalidArgument("G must be >= 1");
  if (!(m >= 2.0)) throw InvalidArgument("sample size m must be >= 2");
}

double conf_term(double delta) { return 17.0 * std::sqrt(std::log(4.0 / delta)); }

}  // namespace

double mf_generalization_delta(double g, double delta, double m, double r_hat) {
  check_unit(delta, "delta");
  check_g_m(g, m);
  if (!(r_hat >= 0.0)) throw InvalidArgument("r_hat must be >= 0");
  return 2.0 * g * (4.0 * r_hat + (4.0 + conf_term(delta)) / std::sqrt(m - 1.0));
}

double kernel_ball_delta(double g, double delta, double m, double c, double sup_m) {
  check_unit(delta, "delta");
  check_g_m(g, m);
  if (!(c > 0.0) || !(sup_m > 0.0)) throw InvalidArgument("C and M must be > 0");
  return 2.0 * g * (4.0 + 4.0 * kSqrt2 * std::sqrt(c * sup_m) + conf_term(delta)) /
         std::sqrt(m - 1.0);
}

double linear_rho(double g, double delta, double m) {
  return kernel_ball_delta(g, delta, m, 1.0, 1.0);
}

double kernel_rho(double g, double delta, double m, double b) {
  check_unit(delta, "delta");
  check_g_m(g, m);
  if (!(b > 0.0)) throw InvalidArgument("B must be > 0");
  return 2.0 * g * (4.0 + 8.0 * std::sqrt(b) + conf_term(delta)) / std::sqrt(m - 1.0);
}

KernelNormBound kernel_norm_bound_b(double l, double eps_star) {
  if (!(l >= 3.0)) throw InvalidArgument("L must be >= 3");
  check_unit(eps_star, "eps_star");
  KernelNormBound out;
  out.value = 6.0 * std::pow(l, 4) + std::exp(9.0 * l * std::log(4.0 * l / eps_star) + 5.0);
  out.overflow = std::isinf(out.value);
  return out;
}

double ceil_to_odd(double x) {
  if (std::isinf(x)) return x;
  double c = std::ceil(x);
  if (c < 1.0) c = 1.0;
  if (std::fmod(c, 2.0) == 0.0) c += 1.0;
  return c;
}

SampleComplexity inf_fpac_sample_complexity(
    double m_pac, double eps_alpha, double eps_gamma, double delta,
    const std::function<double(double k)>& rademacher_at, double start_m) {
  check_unit(eps_alpha, "eps_alpha");
  check_unit(eps_gamma, "eps_gamma");
  check_unit(delta, "delta");
  if (!rademacher_at) throw InvalidArgument("Rademacher closure is empty");
  if (!(start_m >= 3.0)) throw InvalidArgument("start_m must be >= 3");
  const double numer = 8.0 + 34.0 * std::sqrt(std::log(4.0 / delta));

  SampleComplexity out;
  double m = ceil_to_odd(start_m);
  double prev = -1.0;
  for (int it = 1; it <= kMaxFixedPointIters; ++it) {
    const double denom = eps_alpha * eps_gamma - 8.0 * rademacher_at((m - 1.0) / 2.0);
    if (!(denom > 0.0)) {
      throw RuntimeError("Rademacher term dominates; increase m or relax ε");
    }
    const double fair = std::pow(numer / denom, 2) + 1.0;
    const double raw = std::max(m_pac, fair);
    const double next = ceil_to_odd(raw);
    out.raw = raw;
    out.dominant = m_pac >= fair ? "m_pac" : "fairness";
    out.iterations = static_cast<std::size_t>(it);
    if (next == m) {
      out.m = m;
      return out;
    }
    // Odd rounding can leave a decreasing R(k) in a 2-cycle; the larger
    // value satisfies m >= formula(m).
    if (next == prev) {
      out.m = std::max(m, next);
      return out;
    }
    prev = m;
    m = next;
  }
  throw RuntimeError("sample-complexity fixed point did not converge in 100 iterations");
}

LinAccuracyTerms lin_accuracy_terms(double eps, double alpha, double eps_alpha,
                                    double eps_gamma, double delta) {
  check_unit(eps, "eps");
  check_unit(alpha, "alpha");
  check_unit(eps_alpha, "eps_alpha");
  check_unit(eps_gamma, "eps_gamma");
  check_unit(delta, "delta");
  LinAccuracyTerms t;
  t.utility_branch =
      std::pow((kSqrt2 + std::sqrt(std::log(8.0 / delta))) / (kSqrt2 * eps), 2);
  const double numer = 4.0 * (4.0 + 4.0 * kSqrt2 + conf_term(delta));
  const double denom = (1.0 - alpha) * eps_alpha * std::min(eps_alpha, eps_gamma / 2.0);
  t.fairness_branch = std::pow(numer / denom, 2);
  return t;
}

SampleComplexity lin_accuracy_sample_complexity(double eps, double alpha,
                                                double eps_alpha, double eps_gamma,
                                                double delta) {
  const LinAccuracyTerms t = lin_accuracy_terms(eps, alpha, eps_alpha, eps_gamma, delta);
  SampleComplexity out;
  out.raw = std::max(t.utility_branch, t.fairness_branch);
  out.m = ceil_to_odd(out.raw);
  out.dominant = t.utility_branch >= t.fairness_branch ? "utility" : "fairness";
  return out;
}

double sigmoid_eps_star(double eps, double eps_alpha, double eps_gamma) {
  return std::min({eps, eps_alpha, eps_gamma / 2.0});
}

SampleComplexity sigmoid_accuracy_sample_complexity(double eps, double alpha,
                                                    double eps_alpha,
                                                    double eps_gamma, double delta,
                                                    double l) {
  check_unit(eps, "eps");
  check_unit(alpha, "alpha");
  check_unit(eps_alpha, "eps_alpha");
  check_unit(eps_gamma, "eps_gamma");
  check_unit(delta, "delta");
  const double eps_star = sigmoid_eps_star(eps, eps_alpha, eps_gamma);
  const KernelNormBound b = kernel_norm_bound_b(l, eps_star);
  const double utility =
      2.0 * b.value * (2.0 + 9.0 * std::sqrt(std::log(8.0 / delta))) / (eps * eps);
  const double fair =
      std::pow(4.0 * (4.0 + 8.0 * std::sqrt(b.value) + conf_term(delta)) /
                   ((1.0 - alpha) * eps_alpha * eps_star),
               2) +
      1.0;
  SampleComplexity out;
  out.raw = std::max(utility, fair);
  out.m = ceil_to_odd(out.raw);
  out.dominant = utility >= fair ? "utility" : "fairness";
  return out;
}

}  // namespace pacf
