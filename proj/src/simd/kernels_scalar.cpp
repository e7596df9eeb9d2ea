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

#include "pacf/simd/kernels.hpp"

namespace pacf::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(a + r * cols, x, cols);
}

void gemv_t_scalar(const double* a, std::size_t rows, std::size_t cols,
                   const double* coeff, double* y) {
  for (std::size_t c = 0; c < cols; ++c) y[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double w = coeff[r];
    if (w == 0.0) continue;
    const double* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) y[c] += w * row[c];
  }
}

double abs_residuals_scalar(const double* pred, const double* target,
                            double* sign_out, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = pred[i] - target[i];
    s += std::fabs(r);
    if (sign_out != nullptr) sign_out[i] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
  }
  return s;
}

EdgeSums edge_violations_scalar(const double* diff, const double* dist,
                                double gamma, double* excess_out,
                                double* sign_out, std::size_t n) {
  EdgeSums sums;
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::fabs(diff[i]);
    const double excess = std::fmax((mag - dist[i]) - gamma, 0.0);
    if (mag > dist[i] + gamma) ++sums.count;
    sums.excess_sum += excess;
    if (excess_out != nullptr) excess_out[i] = excess;
    if (sign_out != nullptr) {
      sign_out[i] = excess > 0.0 ? (diff[i] > 0.0 ? 1.0 : -1.0) : 0.0;
    }
  }
  return sums;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar,        dot_scalar,
                                 gemv_scalar,         gemv_t_scalar,
                                 abs_residuals_scalar, edge_violations_scalar};
  return table;
}

}  // namespace pacf::simd
