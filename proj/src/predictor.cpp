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

#include "pacf/predictor.hpp"

#include <algorithm>
#include <cmath>

#include "pacf/error.hpp"
#include "pacf/simd/kernels.hpp"

namespace pacf {

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::kVovkHalf:
      return "vovk_half";
    case KernelKind::kLinearDot:
      return "linear_dot";
    case KernelKind::kPrecomputedGram:
      return "precomputed_gram";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(const std::string& text) {
  if (text == "vovk_half") return KernelKind::kVovkHalf;
  if (text == "linear_dot") return KernelKind::kLinearDot;
  if (text == "precomputed_gram") return KernelKind::kPrecomputedGram;
  throw InvalidArgument("unknown kernel kind '" + text + "'");
}

KernelSpec KernelSpec::precomputed(std::shared_ptr<const DistanceMatrix> gram) {
  if (!gram) throw InvalidArgument("null Gram matrix");
  return {KernelKind::kPrecomputedGram, std::move(gram)};
}

double KernelSpec::operator()(const Example& a, const Example& b) const {
  switch (kind) {
    case KernelKind::kVovkHalf:
      return 1.0 / (1.0 - 0.5 * simd::dot(a.features, b.features));
    case KernelKind::kLinearDot:
      return simd::dot(a.features, b.features);
    case KernelKind::kPrecomputedGram: {
      if (!a.source_row || !b.source_row) {
        throw InvalidArgument("kernel undefined for pair");
      }
      const auto ia = gram->source_to_row.find(*a.source_row);
      const auto ib = gram->source_to_row.find(*b.source_row);
      if (ia == gram->source_to_row.end() || ib == gram->source_to_row.end()) {
        throw InvalidArgument("kernel undefined for pair");
      }
      return gram->at(ia->second, ib->second);
    }
  }
  return 0.0;
}

double KernelSpec::sup_value() const {
  switch (kind) {
    case KernelKind::kVovkHalf:
      return 2.0;
    case KernelKind::kLinearDot:
      return 1.0;
    case KernelKind::kPrecomputedGram:
      return *std::max_element(gram->values.begin(), gram->values.end());
  }
  return 0.0;
}

double logistic_link(double z, double lipschitz) {
  return 1.0 / (1.0 + std::exp(-4.0 * lipschitz * z));
}

namespace {

void check_weights(const std::vector<double>& w) {
  if (w.empty()) throw InvalidArgument("predictor weights must be non-empty");
  if (euclidean_norm(w) > 1.0 + kUnitBallTolerance) {
    throw InvalidArgument("predictor weights must have norm <= 1");
  }
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Predictor Predictor::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("constant predictor value must lie in [0, 1]");
  }
  return Predictor(ConstantPredictor{p});
}

Predictor Predictor::linear(std::vector<double> weights) {
  check_weights(weights);
  return Predictor(LinearPredictor{std::move(weights)});
}

Predictor Predictor::logistic(std::vector<double> weights, double lipschitz) {
  check_weights(weights);
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw InvalidArgument("logistic lipschitz constant must be finite and >= 0");
  }
  return Predictor(LogisticPredictor{std::move(weights), lipschitz});
}

Predictor Predictor::kernel(std::vector<Example> support, std::vector<double> beta,
                            KernelSpec kernel) {
  if (support.empty()) throw InvalidArgument("kernel predictor needs support points");
  if (support.size() != beta.size()) {
    throw InvalidArgument("kernel predictor: one coefficient per support point");
  }
  const std::size_t dim = support.front().dimension();
  for (const auto& s : support) {
    if (s.dimension() != dim) {
      throw InvalidArgument("kernel predictor: support dimensions differ");
    }
  }
  if (kernel.kind == KernelKind::kPrecomputedGram && !kernel.gram) {
    throw InvalidArgument("precomputed kernel without a Gram matrix");
  }
  return Predictor(KernelPredictor{std::move(support), std::move(beta), std::move(kernel)});
}

Predictor Predictor::halfspace(std::vector<double> weights) {
  if (weights.empty()) throw InvalidArgument("predictor weights must be non-empty");
  return Predictor(HalfspacePredictor{std::move(weights)});
}

std::optional<std::size_t> Predictor::dimension() const {
  return std::visit(
      [](const auto& p) -> std::optional<std::size_t> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantPredictor>) {
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, KernelPredictor>) {
          return p.support.front().dimension();
        } else {
          return p.weights.size();
        }
      },
      variant_);
}

std::string Predictor::variant_name() const {
  switch (variant_.index()) {
    case 0:
      return "constant";
    case 1:
      return "linear";
    case 2:
      return "logistic";
    case 3:
      return "kernel";
    default:
      return "halfspace";
  }
}

void Predictor::check_dimension(const Example& x) const {
  const auto dim = dimension();
  if (dim && *dim != x.dimension()) {
    throw InvalidArgument("predictor expects dimension " + std::to_string(*dim) +
                          ", example has " + std::to_string(x.dimension()));
  }
}

double Predictor::raw_score(const Example& x) const {
  check_dimension(x);
  if (const auto* k = std::get_if<KernelPredictor>(&variant_)) {
    double s = 0.0;
    for (std::size_t l = 0; l < k->support.size(); ++l) {
      s += k->beta[l] * k->kernel(k->support[l], x);
    }
    return s;
  }
  return predict(x);
}

double Predictor::predict(const Example& x) const {
  check_dimension(x);
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantPredictor>) {
          return p.p;
        } else if constexpr (std::is_same_v<T, LinearPredictor>) {
          return clamp01(0.5 * (1.0 + simd::dot(p.weights, x.features)));
        } else if constexpr (std::is_same_v<T, LogisticPredictor>) {
          return logistic_link(simd::dot(p.weights, x.features), p.lipschitz);
        } else if constexpr (std::is_same_v<T, KernelPredictor>) {
          return clamp01(raw_score(x));
        } else {
          return simd::dot(p.weights, x.features) > 0.0 ? 1.0 : 0.0;
        }
      },
      variant_);
}

std::vector<double> Predictor::predict_all(const LabeledDataset& dataset) const {
  std::vector<double> out(dataset.size());
  const auto* lin = std::get_if<LinearPredictor>(&variant_);
  const auto* logi = std::get_if<LogisticPredictor>(&variant_);
  if (lin != nullptr || logi != nullptr) {
    const auto& w = lin != nullptr ? lin->weights : logi->weights;
    if (w.size() != dataset.dimension()) {
      throw InvalidArgument("predictor expects dimension " + std::to_string(w.size()) +
                            ", dataset has " + std::to_string(dataset.dimension()));
    }
    const auto x = dataset.feature_matrix();
    simd::gemv(x, dataset.size(), dataset.dimension(), w, out);
    for (auto& v : out) {
      v = lin != nullptr ? clamp01(0.5 * (1.0 + v)) : logistic_link(v, logi->lipschitz);
    }
    return out;
  }
  for (std::size_t i = 0; i < dataset.size(); ++i) out[i] = predict(dataset[i]);
  return out;
}

}  // namespace pacf
