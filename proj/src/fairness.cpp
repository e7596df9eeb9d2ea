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

#include "pacf/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pacf/error.hpp"

namespace pacf {

namespace {

constexpr std::uint64_t kPopulationStream = 0x70707070;

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
  }
}

void check_matching(const LabeledDataset& sample, const Matching& matching) {
  if (matching.empty()) throw InvalidArgument("empty matching");
  if (matching.sample_size() != sample.size()) {
    throw InvalidArgument("matching was built for a sample of different size");
  }
}

}  // namespace

void FairnessParams::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in [0, 1)");
  check_open_unit(gamma, "gamma");
  if (alpha1) check_open_unit(*alpha1, "alpha1");
  if (alpha2) check_open_unit(*alpha2, "alpha2");
  if (sigma) check_open_unit(*sigma, "sigma");
  if (tau && !(*tau >= 0.0 && *tau <= 1.0)) {
    throw InvalidArgument("tau must lie in [0, 1]");
  }
}

bool FairnessParams::group_implication_applies() const {
  return alpha1 && alpha2 && (*alpha1) * (*alpha2) >= alpha;
}

double surrogate_ramp(double u, double gamma, double lipschitz_g) {
  if (!(lipschitz_g >= 1.0)) throw InvalidArgument("surrogate slope G must be >= 1");
  if (u <= gamma) return 0.0;
  const double t = lipschitz_g * (u - gamma);
  return t >= 1.0 ? 1.0 : t;
}

int pair_mf_loss(const Predictor& h, const Example& x, const Example& xp,
                 const SimilarityMetric& d, double gamma) {
  const double gap = std::abs(h.predict(x) - h.predict(xp));
  return gap > d(x, xp) + gamma ? 1 : 0;
}

double pair_l1_loss(const Predictor& h, const Example& x, const Example& xp,
                    const SimilarityMetric& d) {
  const double gap = std::abs(h.predict(x) - h.predict(xp));
  return std::max(0.0, gap - d(x, xp));
}

double surrogate_loss(const Predictor& h, const Example& x, const Example& xp,
                      const SimilarityMetric& d, double gamma, double lipschitz_g) {
  const double u = std::abs(h.predict(x) - h.predict(xp)) - d(x, xp);
  return surrogate_ramp(u, gamma, lipschitz_g);
}

EdgeTable make_edge_table(std::span<const double> predictions,
                          const LabeledDataset& sample, const Matching& matching,
                          const SimilarityMetric& d) {
  check_matching(sample, matching);
  if (predictions.size() != sample.size()) {
    throw InvalidArgument("one prediction per example is required");
  }
  EdgeTable t;
  t.diff.reserve(matching.size());
  t.dist.reserve(matching.size());
  for (const auto& [i, j] : matching.pairs()) {
    t.diff.push_back(predictions[i] - predictions[j]);
    t.dist.push_back(d(sample[i], sample[j]));
  }
  return t;
}

double empirical_mf_loss(const EdgeTable& edges, double gamma) {
  if (edges.size() == 0) throw InvalidArgument("empty matching");
  std::size_t count = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (std::abs(edges.diff[e]) > edges.dist[e] + gamma) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(edges.size());
}

double empirical_l1_loss(const EdgeTable& edges) {
  if (edges.size() == 0) throw InvalidArgument("empty matching");
  double sum = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    sum += std::max(0.0, std::abs(edges.diff[e]) - edges.dist[e]);
  }
  return sum / static_cast<double>(edges.size());
}

double empirical_mf_loss(const Predictor& h, const LabeledDataset& sample,
                         const Matching& matching, const SimilarityMetric& d,
                         double gamma) {
  check_matching(sample, matching);
  return empirical_mf_loss(make_edge_table(h.predict_all(sample), sample, matching, d),
                           gamma);
}

double empirical_l1_loss(const Predictor& h, const LabeledDataset& sample,
                         const Matching& matching, const SimilarityMetric& d) {
  check_matching(sample, matching);
  return empirical_l1_loss(make_edge_table(h.predict_all(sample), sample, matching, d));
}

std::size_t ViolationVector::l0() const {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](double v) { return v > 0.0; }));
}

double ViolationVector::l1() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

ViolationVector violation_vector(const Predictor& h, const LabeledDataset& sample,
                                 const Matching& matching, const SimilarityMetric& d,
                                 double gamma) {
  check_matching(sample, matching);
  const EdgeTable t = make_edge_table(h.predict_all(sample), sample, matching, d);
  ViolationVector v;
  v.values.reserve(t.size());
  for (std::size_t e = 0; e < t.size(); ++e) {
    // Same comparison as the 0/1 loss so that l0 agrees with it bit for bit.
    const double gap = std::abs(t.diff[e]);
    const double x = gap > t.dist[e] + gamma ? gap - t.dist[e] - gamma : 0.0;
    v.values.push_back(std::clamp(x, 0.0, 1.0));
  }
  return v;
}

double hoeffding_half_width(std::size_t n, double confidence) {
  if (n == 0) throw InvalidArgument("n_pairs must be >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InvalidArgument("confidence must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

std::vector<PopulationEstimate> population_mf_estimates(
    const Predictor& h, const ExampleSampler& sampler, const SimilarityMetric& d,
    std::span<const double> gammas, std::size_t n_pairs, std::uint64_t seed,
    unsigned threads) {
  if (n_pairs == 0) throw InvalidArgument("n_pairs must be >= 1");
  if (!sampler) throw InvalidArgument("population sampler is empty");
  if (gammas.empty()) throw InvalidArgument("no gamma values given");
  const std::size_t ng = gammas.size();
  // One generator per block of pairs; threads take whole blocks, so the
  // draws do not depend on the thread count.
  constexpr std::size_t kBlock = 1024;
  const std::size_t n_blocks = (n_pairs + kBlock - 1) / kBlock;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_blocks)));

  std::vector<std::vector<std::size_t>> counts(threads, std::vector<std::size_t>(ng, 0));
  auto work = [&](unsigned t) {
    const std::size_t b_lo = n_blocks * t / threads;
    const std::size_t b_hi = n_blocks * (t + 1) / threads;
    std::vector<std::size_t>& c = counts[t];
    for (std::size_t b = b_lo; b < b_hi; ++b) {
      Rng rng = make_rng(seed, kPopulationStream, b);
      const std::size_t end = std::min(n_pairs, (b + 1) * kBlock);
      for (std::size_t k = b * kBlock; k < end; ++k) {
        const Example x = sampler(rng);
        const Example xp = sampler(rng);
        const double diff = std::abs(h.predict(x) - h.predict(xp));
        const double dist = d(x, xp);
        for (std::size_t g = 0; g < ng; ++g) c[g] += diff > dist + gammas[g] ? 1 : 0;
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  std::vector<PopulationEstimate> out(ng);
  for (std::size_t g = 0; g < ng; ++g) {
    std::size_t total = 0;
    for (const auto& c : counts) total += c[g];
    out[g].n_pairs = n_pairs;
    out[g].estimate = static_cast<double>(total) / static_cast<double>(n_pairs);
    out[g].half_width = hoeffding_half_width(n_pairs);
  }
  return out;
}

PopulationEstimate population_mf_estimate(const Predictor& h,
                                          const ExampleSampler& sampler,
                                          const SimilarityMetric& d, double gamma,
                                          std::size_t n_pairs, std::uint64_t seed,
                                          unsigned threads) {
  const double g[] = {gamma};
  return population_mf_estimates(h, sampler, d, g, n_pairs, seed, threads).front();
}

namespace {

// Row i: number of j in S with a violation on (i, j).
std::vector<std::size_t> per_individual_violations(const Predictor& h,
                                                   const LabeledDataset& sample,
                                                   const SimilarityMetric& d,
                                                   double gamma) {
  const std::size_t m = sample.size();
  const std::vector<double> p = h.predict_all(sample);
  std::vector<std::size_t> rows(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(p[i] - p[j]) > d(sample[i], sample[j]) + gamma) {
        ++rows[i];
        ++rows[j];
      }
    }
  }
  // The diagonal never violates: d(x, x) = 0 and gamma >= 0.
  return rows;
}

}  // namespace

double all_pairs_mf_loss(const Predictor& h, const LabeledDataset& sample,
                         const SimilarityMetric& d, double gamma) {
  const auto rows = per_individual_violations(h, sample, d, gamma);
  std::size_t total = 0;
  for (std::size_t r : rows) total += r;
  const double m = static_cast<double>(sample.size());
  return static_cast<double>(total) / (m * m);
}

std::vector<GroupProfilePoint> group_fairness_profile(
    const Predictor& h, const LabeledDataset& sample, const SimilarityMetric& d,
    double gamma, std::span<const double> alpha2_grid) {
  const auto rows = per_individual_violations(h, sample, d, gamma);
  const double m = static_cast<double>(sample.size());
  std::vector<GroupProfilePoint> out;
  out.reserve(alpha2_grid.size());
  for (double a2 : alpha2_grid) {
    std::size_t above = 0;
    for (std::size_t r : rows) {
      if (static_cast<double>(r) / m > a2) ++above;
    }
    out.push_back({a2, static_cast<double>(above) / m});
  }
  return out;
}

PerfectFairnessResult is_perfectly_fair(
    const Predictor& h, std::span<const std::pair<Example, Example>> pairs,
    const SimilarityMetric& d, double tolerance) {
  PerfectFairnessResult r;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, xp] = pairs[k];
    if (std::abs(h.predict(x) - h.predict(xp)) > d(x, xp) + tolerance) {
      r.fair = false;
      r.violating_pairs.push_back(k);
    }
  }
  return r;
}

FairnessReport audit(const Predictor& h, const LabeledDataset& sample,
                     const Matching& matching, const SimilarityMetric& d,
                     const AuditOptions& options,
                     const ExampleSampler* population_sampler) {
  check_matching(sample, matching);
  const EdgeTable t = make_edge_table(h.predict_all(sample), sample, matching, d);
  FairnessReport r;
  r.gamma = options.gamma;
  r.n_edges = t.size();
  r.empirical_mf_loss = empirical_mf_loss(t, options.gamma);
  r.empirical_l1_loss = empirical_l1_loss(t);
  if (options.population_pairs > 0 && population_sampler != nullptr) {
    r.population = population_mf_estimate(h, *population_sampler, d, options.gamma,
                                          options.population_pairs, options.seed,
                                          options.threads);
  }
  if (!options.alpha2_grid.empty()) {
    r.group_profile =
        group_fairness_profile(h, sample, d, options.gamma, options.alpha2_grid);
  }
  return r;
}

}  // namespace pacf
