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

#ifndef PACF_RADEMACHER_HPP_
#define PACF_RADEMACHER_HPP_

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace pacf {

struct RademacherEstimate {
  double value = 0.0;
  std::size_t n_draws = 0;
  double mc_half_width = 0.0;  // 1.96 * sample sd / sqrt(n_draws)
};

// Throws InvalidArgument if `gram` is not square, not symmetric, or has
// min eigenvalue < -1e-8 * max eigenvalue.
void check_psd(const Eigen::MatrixXd& gram);

// Empirical Rademacher complexity of {x -> <v, psi(x)> : ||v|| <= C} on the
// sample whose Gram matrix is `gram`. For a fixed sign vector the supremum is
// (C/m) sqrt(s^T K s); the expectation over s is taken by Monte Carlo.
RademacherEstimate empirical_rademacher_kernel_ball(const Eigen::MatrixXd& gram,
                                                    double norm_bound_c,
                                                    std::size_t n_draws,
                                                    std::uint64_t seed);

}  // namespace pacf

#endif  // PACF_RADEMACHER_HPP_
