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

#include "pacf/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pacf/error.hpp"
#include "pacf/fairness.hpp"
#include "pacf/rng.hpp"

namespace pacf {

namespace {

constexpr std::uint64_t kSeedStream = 0x4841;     // hidden seed / y
constexpr std::uint64_t kPointStream = 0x4842;    // per-pair points
constexpr std::uint64_t kAuditStream = 0x4843;    // random audit pairs

BitString random_bits(Rng& rng, std::size_t count) {
  BitString b(count);
  for (auto& v : b) v = static_cast<std::uint8_t>(uniform_index(rng, 2));
  return b;
}

// Coordinates 1..n-1 strictly nonzero so that signs are defined.
std::vector<double> draw_point(Rng& rng, std::size_t n) {
  static const double kRadius = std::sqrt(3.0) / 2.0;
  std::vector<double> head;
  do {
    head = uniform_in_ball(rng, n - 1, kRadius);
  } while (std::any_of(head.begin(), head.end(), [](double v) { return v == 0.0; }));
  head.push_back(random_sign(rng) > 0 ? 0.5 : -0.5);
  return head;
}

std::vector<double> counterpart(const std::vector<double>& x, const BitString& flips) {
  std::vector<double> xp = x;
  for (std::size_t i = 0; i < flips.size(); ++i) {
    if (flips[i]) xp[i] = -xp[i];
  }
  xp.back() = -xp.back();
  return xp;
}

int label_of(const std::vector<double>& x) { return x.back() > 0.0 ? 1 : -1; }

}  // namespace

Matching HardPairedDataset::counterpart_matching() const {
  return build_matching(data, ConsecutiveStrategy{});
}

HardnessSample sample_hardness_distribution(std::size_t n, std::size_t k_pairs,
                                            HardnessMode mode, std::uint64_t seed) {
  if (n < 4) throw InvalidArgument("hardness construction needs n >= 4");
  if (k_pairs == 0) throw InvalidArgument("k_pairs must be >= 1");

  Rng meta = make_rng(seed, kSeedStream);
  HardnessMetricHandle handle = mode == HardnessMode::kU
                                    ? make_u_handle(n, random_bits(meta, n - 1))
                                    : make_v_handle(n, random_bits(meta, 2 * n));

  std::vector<Example> examples;
  std::vector<std::pair<Example, Example>> pairs;
  examples.reserve(2 * k_pairs);
  pairs.reserve(k_pairs);
  for (std::size_t k = 0; k < k_pairs; ++k) {
    Rng rng = make_rng(seed, kPointStream, k);
    std::vector<double> x = draw_point(rng, n);
    const BitString flips = mode == HardnessMode::kU ? *handle.seed : random_bits(rng, n - 1);
    std::vector<double> xp = counterpart(x, flips);
    Example a{std::move(x), 0, 2 * k};
    a.label = label_of(a.features);
    Example b{std::move(xp), 0, 2 * k + 1};
    b.label = label_of(b.features);
    examples.push_back(a);
    examples.push_back(b);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  HardnessSample out{{LabeledDataset(std::move(examples)), std::move(pairs)},
                     std::make_shared<const HardnessMetricHandle>(std::move(handle))};
  return out;
}

Predictor hardness_reference_classifier(std::size_t n) {
  std::vector<double> w(n, 0.0);
  w.back() = 1.0;
  return Predictor::halfspace(std::move(w));
}

double l1_error(const Predictor& h, const LabeledDataset& data) {
  const std::vector<double> p = h.predict_all(data);
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) s += std::abs(p[i] - data[i].target());
  return s / static_cast<double>(data.size());
}

double fair_projection_error(const Predictor& h, const HardnessSample& sample) {
  const SimilarityMetric d = sample.metric();
  double s = 0.0;
  for (const auto& [x, xp] : sample.dataset.pairs) {
    double a = h.predict(x);
    double b = h.predict(xp);
    if (d(x, xp) == 0.0) {
      a = b = 0.5 * (a + b);
    }
    s += std::abs(a - x.target()) + std::abs(b - xp.target());
  }
  return s / static_cast<double>(2 * sample.dataset.pairs.size());
}

namespace {

LearnerOutcome train_on(const HardnessSample& sample, const HardnessOptions& options,
                        bool kernel) {
  const std::size_t total = sample.dataset.pairs.size();
  const std::size_t k = options.train_pairs == 0 ? total : std::min(options.train_pairs, total);
  std::vector<std::size_t> idx(2 * k);
  std::iota(idx.begin(), idx.end(), 0);
  const LabeledDataset train = sample.dataset.data.subset(idx);
  const Matching matching = build_matching(train, ConsecutiveStrategy{});
  const SimilarityMetric d = sample.metric();

  TrainResult r = kernel ? train_fair_kernel(train, d, options.trainer, matching)
                         : train_fair_linear(train, d, options.trainer, matching);
  LearnerOutcome o;
  o.error = l1_error(r.predictor, train);
  o.empirical_mf_loss =
      empirical_mf_loss(r.predictor, train, matching, d, options.trainer.gamma);
  o.empirical_l1_loss = r.report.empirical_l1_loss;
  o.tau = r.report.params.tau;
  o.iterations = r.report.iterations;
  return o;
}

}  // namespace

HardnessModeReport run_hardness_mode(const HardnessOptions& options, HardnessMode mode) {
  const HardnessSample sample =
      sample_hardness_distribution(options.n, options.k_pairs, mode, options.seed);
  const SimilarityMetric d = sample.metric();
  const Predictor ref = hardness_reference_classifier(options.n);

  HardnessModeReport r;
  r.mode = mode;
  for (const auto& [x, xp] : sample.dataset.pairs) {
    if (d(x, xp) == 0.0) ++r.zero_distance_pairs;
  }
  r.fair_projection_error = fair_projection_error(ref, sample);
  r.reference_error = l1_error(ref, sample.dataset.data);

  std::vector<std::pair<Example, Example>> audit = sample.dataset.pairs;
  const std::size_t m = sample.dataset.data.size();
  Rng rng = make_rng(options.seed, kAuditStream);
  while (audit.size() < options.audit_pairs) {
    const std::size_t i = uniform_index(rng, m);
    const std::size_t j = uniform_index(rng, m);
    if (i == j) continue;
    audit.emplace_back(sample.dataset.data[i], sample.dataset.data[j]);
  }
  const PerfectFairnessResult fair = is_perfectly_fair(ref, audit, d, 0.0);
  r.audited_pairs = audit.size();
  r.reference_violations = fair.violating_pairs.size();

  if (options.train_linear) r.linear = train_on(sample, options, false);
  if (options.train_kernel) r.kernel = train_on(sample, options, true);
  return r;
}

HardnessReport run_hardness_experiment(const HardnessOptions& options, bool run_u,
                                       bool run_v) {
  HardnessReport rep;
  rep.options = options;
  if (run_u) rep.u = run_hardness_mode(options, HardnessMode::kU);
  if (run_v) rep.v = run_hardness_mode(options, HardnessMode::kV);
  if (rep.u && rep.v) {
    if (rep.u->linear && rep.v->linear) rep.linear_gap = rep.u->linear->error - rep.v->linear->error;
    if (rep.u->kernel && rep.v->kernel) rep.kernel_gap = rep.u->kernel->error - rep.v->kernel->error;
  }
  return rep;
}

}  // namespace pacf
