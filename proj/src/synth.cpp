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

#include "pacf/synth.hpp"

#include <cmath>

#include "pacf/error.hpp"
#include "pacf/hardness.hpp"
#include "pacf/rng.hpp"

namespace pacf {

namespace {

constexpr std::uint64_t kDirectionStream = 0x5301;
constexpr std::uint64_t kPointStream = 0x5302;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> random_unit_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double norm = 0.0;
  while (norm == 0.0) {
    for (auto& x : v) x = standard_normal(rng);
    norm = euclidean_norm(v);
  }
  for (auto& x : v) x /= norm;
  return v;
}

SyntheticData make_uniform(const SyntheticSpec& spec) {
  std::vector<Example> ex;
  ex.reserve(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    Rng rng = make_rng(spec.seed, kPointStream, i);
    Example e{uniform_in_ball(rng, spec.n), 0, i};
    e.label = random_sign(rng);
    ex.push_back(std::move(e));
  }
  return {LabeledDataset(std::move(ex)), std::nullopt, {}, nullptr};
}

SyntheticData make_separable(const SyntheticSpec& spec, const SeparableWithMargin& g) {
  Rng dir = make_rng(spec.seed, kDirectionStream);
  const std::vector<double> w = random_unit_vector(dir, spec.n);
  std::vector<Example> ex;
  std::vector<bool> noisy;
  ex.reserve(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    Rng rng = make_rng(spec.seed, kPointStream, i);
    const double t = uniform(rng, g.margin, 1.0) * random_sign(rng);
    // Orthogonal part: a ball point with the w-component removed, scaled
    // into the remaining radius.
    std::vector<double> u = uniform_in_ball(rng, spec.n);
    double along = 0.0;
    for (std::size_t c = 0; c < spec.n; ++c) along += u[c] * w[c];
    for (std::size_t c = 0; c < spec.n; ++c) u[c] -= along * w[c];
    const double room = std::sqrt(std::max(0.0, 1.0 - t * t));
    std::vector<double> x(spec.n);
    for (std::size_t c = 0; c < spec.n; ++c) x[c] = t * w[c] + room * u[c];
    const double nx = euclidean_norm(x);
    if (nx > 1.0) {
      for (auto& v : x) v /= nx;
    }
    int y = t > 0.0 ? 1 : -1;
    const bool flip = g.noise_rate > 0.0 && uniform01(rng) < g.noise_rate;
    if (flip) y = -y;
    noisy.push_back(flip);
    ex.push_back(Example{std::move(x), y, i});
  }
  return {LabeledDataset(std::move(ex)), w, std::move(noisy), nullptr};
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n == 0) throw InvalidArgument("dimension must be >= 1");
  if (m < 2) throw InvalidArgument("sample size must be >= 2");
  if (const auto* s = std::get_if<SeparableWithMargin>(&generator)) {
    if (!(s->margin > 0.0 && s->margin <= 1.0)) throw InvalidArgument("margin must lie in (0, 1]");
    if (!(s->noise_rate >= 0.0 && s->noise_rate < 1.0)) {
      throw InvalidArgument("noise rate must lie in [0, 1)");
    }
  }
  if (std::holds_alternative<HardnessPairs>(generator)) {
    if (m % 2 != 0) throw InvalidArgument("hardness pairs need an even sample size");
    if (n < 4) throw InvalidArgument("hardness pairs need n >= 4");
  }
}

SyntheticData generate_dataset(const SyntheticSpec& spec) {
  spec.validate();
  return std::visit(
      Overloaded{
          [&](const UnitBallUniform&) { return make_uniform(spec); },
          [&](const SeparableWithMargin& g) { return make_separable(spec, g); },
          [&](const HardnessPairs& g) {
            HardnessSample s = sample_hardness_distribution(spec.n, spec.m / 2, g.mode, spec.seed);
            return SyntheticData{std::move(s.dataset.data), std::nullopt, {}, s.handle};
          },
      },
      spec.generator);
}

}  // namespace pacf
