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

// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here runs unless dispatch confirmed CPU support.

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "pacf/simd/kernels.hpp"

namespace pacf::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void gemv_avx2(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(a + r * cols, x, cols);
}

void gemv_t_avx2(const double* a, std::size_t rows, std::size_t cols,
                 const double* coeff, double* y) {
  for (std::size_t c = 0; c < cols; ++c) y[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double w = coeff[r];
    if (w == 0.0) continue;
    const double* row = a + r * cols;
    const __m256d wv = _mm256_set1_pd(w);
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      _mm256_storeu_pd(y + c, _mm256_fmadd_pd(wv, _mm256_loadu_pd(row + c),
                                              _mm256_loadu_pd(y + c)));
    }
    for (; c < cols; ++c) y[c] += w * row[c];
  }
}

double abs_residuals_avx2(const double* pred, const double* target,
                          double* sign_out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r =
        _mm256_sub_pd(_mm256_loadu_pd(pred + i), _mm256_loadu_pd(target + i));
    acc = _mm256_add_pd(acc, abs_pd(r));
    if (sign_out != nullptr) {
      const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_GT_OQ), one);
      const __m256d neg =
          _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), minus_one);
      _mm256_storeu_pd(sign_out + i, _mm256_or_pd(pos, neg));
    }
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double r = pred[i] - target[i];
    s += std::fabs(r);
    if (sign_out != nullptr) sign_out[i] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
  }
  return s;
}

EdgeSums edge_violations_avx2(const double* diff, const double* dist,
                              double gamma, double* excess_out,
                              double* sign_out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  const __m256d g = _mm256_set1_pd(gamma);
  __m256d acc = zero;
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dv = _mm256_loadu_pd(diff + i);
    const __m256d dd = _mm256_loadu_pd(dist + i);
    const __m256d mag = abs_pd(dv);
    const __m256d excess = _mm256_max_pd(_mm256_sub_pd(_mm256_sub_pd(mag, dd), g), zero);
    const __m256d violated = _mm256_cmp_pd(mag, _mm256_add_pd(dd, g), _CMP_GT_OQ);
    count += static_cast<std::size_t>(std::popcount(
        static_cast<unsigned>(_mm256_movemask_pd(violated))));
    acc = _mm256_add_pd(acc, excess);
    if (excess_out != nullptr) _mm256_storeu_pd(excess_out + i, excess);
    if (sign_out != nullptr) {
      const __m256d active = _mm256_cmp_pd(excess, zero, _CMP_GT_OQ);
      const __m256d s = _mm256_blendv_pd(minus_one, one,
                                         _mm256_cmp_pd(dv, zero, _CMP_GT_OQ));
      _mm256_storeu_pd(sign_out + i, _mm256_and_pd(active, s));
    }
  }
  EdgeSums sums;
  sums.excess_sum = hsum(acc);
  sums.count = count;
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

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::kAvx2,        dot_avx2,
                                 gemv_avx2,         gemv_t_avx2,
                                 abs_residuals_avx2, edge_violations_avx2};
  return table;
}

}  // namespace pacf::simd
