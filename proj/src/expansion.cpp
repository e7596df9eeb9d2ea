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

#include "pacf/expansion.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <memory>
#include <string>

#include "pacf/error.hpp"

namespace pacf {
namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out(4 + (bits.size() + 7) / 8, 0);
  const auto len = static_cast<std::uint32_t>(bits.size());
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>(len >> (8 * i));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw InvalidArgument("bit string entries must be 0 or 1");
    if (bits[i] != 0) out[4 + i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

}  // namespace

BitString expand_seed(std::span<const std::uint8_t> seed_bits) {
  const std::size_t out_bits = 2 * (seed_bits.size() + 1);
  const auto input = pack_bits(seed_bits);
  std::vector<std::uint8_t> digest((out_bits + 7) / 8);
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), input.data(), input.size()) != 1 ||
      EVP_DigestFinalXOF(ctx.get(), digest.data(), digest.size()) != 1) {
    throw RuntimeError("SHAKE256 evaluation failed");
  }
  BitString out(out_bits);
  for (std::size_t i = 0; i < out_bits; ++i) {
    out[i] = (digest[i / 8] >> (7 - i % 8)) & 1u;
  }
  return out;
}

BitString expand_seed(std::span<const std::uint8_t> seed_bits, std::size_t n) {
  if (n < 2 || seed_bits.size() != n - 1) {
    throw InvalidArgument("seed must have n-1 = " + std::to_string(n - 1) +
                          " bits, got " + std::to_string(seed_bits.size()));
  }
  return expand_seed(seed_bits);
}

std::string_view hardness_mode_name(HardnessMode mode) {
  return mode == HardnessMode::kU ? "u" : "v";
}

HardnessMode parse_hardness_mode(std::string_view text) {
  if (text == "u" || text == "U") return HardnessMode::kU;
  if (text == "v" || text == "V") return HardnessMode::kV;
  throw InvalidArgument("hardness mode must be 'u' or 'v'");
}

HardnessMetricHandle make_u_handle(std::size_t n, BitString seed) {
  HardnessMetricHandle h;
  h.n = n;
  h.y = expand_seed(seed, n);
  h.mode = HardnessMode::kU;
  h.seed = std::move(seed);
  return h;
}

HardnessMetricHandle make_v_handle(std::size_t n, BitString y) {
  HardnessMetricHandle h;
  h.n = n;
  h.y = std::move(y);
  h.mode = HardnessMode::kV;
  validate_handle(h);
  return h;
}

void validate_handle(const HardnessMetricHandle& handle) {
  if (handle.n < 2) throw InvalidArgument("hardness metric needs n >= 2");
  if (handle.y.size() != 2 * handle.n) {
    throw InvalidArgument("hardness metric y must have 2n bits");
  }
  if (std::any_of(handle.y.begin(), handle.y.end(),
                  [](std::uint8_t b) { return b > 1; })) {
    throw InvalidArgument("bit string entries must be 0 or 1");
  }
  if (handle.mode == HardnessMode::kU) {
    if (!handle.seed) throw InvalidArgument("mode U handle must store its seed");
    if (expand_seed(*handle.seed, handle.n) != handle.y) {
      throw InvalidArgument("mode U handle: E(s) != y");
    }
  }
}

double hardness_distance(const HardnessMetricHandle& handle,
                         std::span<const double> x, std::span<const double> xp) {
  const std::size_t n = handle.n;
  if (x.size() != n || xp.size() != n) {
    throw InvalidArgument("hardness metric: expected dimension " +
                          std::to_string(n));
  }
  if (std::equal(x.begin(), x.end(), xp.begin())) return 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0 || xp[i] == 0.0) {
      throw InvalidArgument("hardness metric: sign undefined (zero coordinate)");
    }
  }
  if ((x[n - 1] > 0.0) == (xp[n - 1] > 0.0)) return 1.0;
  BitString delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    delta[i] = (x[i] > 0.0) != (xp[i] > 0.0) ? 1 : 0;
  }
  return expand_seed(delta) == handle.y ? 0.0 : 1.0;
}

}  // namespace pacf
