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

// NEON (aarch64) variants; float64 lanes are two wide.

#include <arm_neon.h>

#include <cmath>

#include "pacf/simd/kernels.hpp"

namespace pacf::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv_neon(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_neon(a + r * cols, x, cols);
}

void gemv_t_neon(const double* a, std::size_t rows, std::size_t cols,
                 const double* coeff, double* y) {
  for (std::size_t c = 0; c < cols; ++c) y[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double w = coeff[r];
    if (w == 0.0) continue;
    const double* row = a + r * cols;
    const float64x2_t wv = vdupq_n_f64(w);
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      vst1q_f64(y + c, vfmaq_f64(vld1q_f64(y + c), wv, vld1q_f64(row + c)));
    }
    for (; c < cols; ++c) y[c] += w * row[c];
  }
}

double abs_residuals_neon(const double* pred, const double* target,
                          double* sign_out, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t minus_one = vdupq_n_f64(-1.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t r = vsubq_f64(vld1q_f64(pred + i), vld1q_f64(target + i));
    acc = vaddq_f64(acc, vabsq_f64(r));
    if (sign_out != nullptr) {
      const float64x2_t pos = vbslq_f64(vcgtq_f64(r, zero), one, zero);
      vst1q_f64(sign_out + i, vbslq_f64(vcltq_f64(r, zero), minus_one, pos));
    }
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double r = pred[i] - target[i];
    s += std::fabs(r);
    if (sign_out != nullptr) sign_out[i] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
  }
  return s;
}

EdgeSums edge_violations_neon(const double* diff, const double* dist,
                              double gamma, double* excess_out,
                              double* sign_out, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t minus_one = vdupq_n_f64(-1.0);
  const float64x2_t g = vdupq_n_f64(gamma);
  float64x2_t acc = zero;
  EdgeSums sums;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dv = vld1q_f64(diff + i);
    const float64x2_t dd = vld1q_f64(dist + i);
    const float64x2_t mag = vabsq_f64(dv);
    const float64x2_t excess = vmaxq_f64(vsubq_f64(vsubq_f64(mag, dd), g), zero);
    const uint64x2_t violated = vcgtq_f64(mag, vaddq_f64(dd, g));
    sums.count += static_cast<std::size_t>((vgetq_lane_u64(violated, 0) & 1) +
                                           (vgetq_lane_u64(violated, 1) & 1));
    acc = vaddq_f64(acc, excess);
    if (excess_out != nullptr) vst1q_f64(excess_out + i, excess);
    if (sign_out != nullptr) {
      const float64x2_t s = vbslq_f64(vcgtq_f64(dv, zero), one, minus_one);
      vst1q_f64(sign_out + i, vbslq_f64(vcgtq_f64(excess, zero), s, zero));
    }
  }
  sums.excess_sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
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

const KernelTable& neon_table() {
  static const KernelTable table{Isa::kNeon,        dot_neon,
                                 gemv_neon,         gemv_t_neon,
                                 abs_residuals_neon, edge_violations_neon};
  return table;
}

}  // namespace pacf::simd
