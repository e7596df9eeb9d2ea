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

#include <atomic>
#include <cstdlib>
#include <string>

#include "pacf/error.hpp"
#include "pacf/simd/kernels.hpp"

namespace pacf::simd {

#if defined(PACF_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(PACF_HAVE_NEON)
const KernelTable& neon_table();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() {
#if defined(PACF_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(PACF_HAVE_NEON)
  return &neon_table();  // mandatory on aarch64
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* select_default() {
  if (const char* env = std::getenv("PACF_SIMD"); env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels() != nullptr) return avx2_kernels();
    if (want == "neon" && neon_kernels() != nullptr) return neon_kernels();
  }
  if (const auto* t = avx2_kernels()) return t;
  if (const auto* t = neon_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{select_default()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

Isa active_isa() { return active().isa; }

void force_isa(Isa isa) {
  const KernelTable* table = nullptr;
  switch (isa) {
    case Isa::kScalar:
      table = &scalar_kernels();
      break;
    case Isa::kAvx2:
      table = avx2_kernels();
      break;
    case Isa::kNeon:
      table = neon_kernels();
      break;
  }
  if (table == nullptr) {
    throw InvalidArgument("instruction set not available: " +
                          std::string(isa_name(isa)));
  }
  slot().store(table, std::memory_order_release);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: size mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
  if (a.size() != rows * cols || x.size() != cols || y.size() != rows) {
    throw InvalidArgument("gemv: shape mismatch");
  }
  active().gemv(a.data(), rows, cols, x.data(), y.data());
}

void gemv_t(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> coeff, std::span<double> y) {
  if (a.size() != rows * cols || coeff.size() != rows || y.size() != cols) {
    throw InvalidArgument("gemv_t: shape mismatch");
  }
  active().gemv_t(a.data(), rows, cols, coeff.data(), y.data());
}

double abs_residuals(std::span<const double> pred,
                     std::span<const double> target,
                     std::span<double> sign_out) {
  if (pred.size() != target.size() ||
      (!sign_out.empty() && sign_out.size() != pred.size())) {
    throw InvalidArgument("abs_residuals: size mismatch");
  }
  return active().abs_residuals(pred.data(), target.data(),
                                sign_out.empty() ? nullptr : sign_out.data(),
                                pred.size());
}

EdgeSums edge_violations(std::span<const double> diff,
                         std::span<const double> dist, double gamma,
                         std::span<double> excess_out,
                         std::span<double> sign_out) {
  if (diff.size() != dist.size() ||
      (!excess_out.empty() && excess_out.size() != diff.size()) ||
      (!sign_out.empty() && sign_out.size() != diff.size())) {
    throw InvalidArgument("edge_violations: size mismatch");
  }
  return active().edge_violations(
      diff.data(), dist.data(), gamma,
      excess_out.empty() ? nullptr : excess_out.data(),
      sign_out.empty() ? nullptr : sign_out.data(), diff.size());
}

double squared_norm(std::span<const double> a) { return dot(a, a); }

}  // namespace pacf::simd
