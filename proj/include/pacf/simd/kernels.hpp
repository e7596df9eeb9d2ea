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

#ifndef PACF_SIMD_KERNELS_HPP_
#define PACF_SIMD_KERNELS_HPP_

// Data-parallel inner loops used by the losses, learners and estimators.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// chosen once at first use from the CPU features; the environment variable
// PACF_SIMD=scalar|avx2|neon overrides the choice. Reductions in the vector
// variants use a different summation order than the scalar loops, so sums
// agree to rounding, while element-wise outputs and violation counts agree
// exactly.

#include <cstddef>
#include <span>
#include <string_view>

namespace pacf::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Per-edge fairness violation totals.
struct EdgeSums {
  double excess_sum = 0.0;  // sum of max(0, |diff| - dist - gamma)
  std::size_t count = 0;    // edges with |diff| > dist + gamma
};

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[r] = sum_c A[r*cols + c] * x[c]
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // y[c] = sum_r A[r*cols + c] * coeff[r]
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols,
                 const double* coeff, double* y);
  // Returns sum |pred - target|; sign_out[i] = sign(pred - target) in {-1,0,1}.
  double (*abs_residuals)(const double* pred, const double* target,
                          double* sign_out, std::size_t n);
  // excess_out[i] = max(0, (|diff| - dist) - gamma);
  // sign_out[i] = sign(diff) where excess_out[i] > 0, else 0.
  // Either output pointer may be null.
  EdgeSums (*edge_violations)(const double* diff, const double* dist,
                              double gamma, double* excess_out,
                              double* sign_out, std::size_t n);
};

const KernelTable& scalar_kernels();
// Null when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

const KernelTable& active();
Isa active_isa();
// For tests and benchmarking; throws pacf::InvalidArgument if unavailable.
void force_isa(Isa isa);

// Convenience wrappers over the active table.
double dot(std::span<const double> a, std::span<const double> b);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void gemv_t(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> coeff, std::span<double> y);
double abs_residuals(std::span<const double> pred,
                     std::span<const double> target,
                     std::span<double> sign_out);
EdgeSums edge_violations(std::span<const double> diff,
                         std::span<const double> dist, double gamma,
                         std::span<double> excess_out,
                         std::span<double> sign_out);
double squared_norm(std::span<const double> a);

}  // namespace pacf::simd

#endif  // PACF_SIMD_KERNELS_HPP_
