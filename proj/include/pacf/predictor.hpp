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

#ifndef PACF_PREDICTOR_HPP_
#define PACF_PREDICTOR_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pacf/dataset.hpp"
#include "pacf/metric.hpp"

namespace pacf {

enum class KernelKind { kVovkHalf, kLinearDot, kPrecomputedGram };

std::string kernel_kind_name(KernelKind kind);
KernelKind parse_kernel_kind(const std::string& text);

// K(x, x') for one of:
//   VovkHalf   1 / (1 - <x, x'>/2), values in [2/3, 2] on the unit ball;
//   LinearDot  <x, x'>;
//   PrecomputedGram  entries looked up by Example::source_row.
struct KernelSpec {
  KernelKind kind = KernelKind::kVovkHalf;
  std::shared_ptr<const DistanceMatrix> gram;  // PrecomputedGram only

  static KernelSpec vovk_half() { return {KernelKind::kVovkHalf, nullptr}; }
  static KernelSpec linear_dot() { return {KernelKind::kLinearDot, nullptr}; }
  static KernelSpec precomputed(std::shared_ptr<const DistanceMatrix> gram);

  double operator()(const Example& a, const Example& b) const;
  // M = sup K(x, x') over the unit ball (or over the stored Gram entries).
  double sup_value() const;
};

// h(x) = p.
struct ConstantPredictor {
  double p = 0.5;
};

// h(x) = (1 + <w, x>) / 2 with ||w|| <= 1.
struct LinearPredictor {
  std::vector<double> weights;
};

// h(x) = phi_l(<w, x>), phi_l(z) = 1 / (1 + exp(-4 l z)); phi_l is
// l-Lipschitz and phi_l(0) = 1/2.
struct LogisticPredictor {
  std::vector<double> weights;
  double lipschitz = 1.0;
};

// raw(x) = sum_l beta_l K(x_l, x); h(x) = clamp(raw(x), 0, 1).
struct KernelPredictor {
  std::vector<Example> support;
  std::vector<double> beta;
  KernelSpec kernel;
};

// h(x) = 1 if <w, x> > 0 else 0. A deterministic linear classifier, used as
// the reference classifier of the hardness construction.
struct HalfspacePredictor {
  std::vector<double> weights;
};

// Probabilistic classifier h: X -> [0, 1]; h(x) is the probability of the
// label +1. Immutable.
class Predictor {
 public:
  using Variant = std::variant<ConstantPredictor, LinearPredictor,
                               LogisticPredictor, KernelPredictor,
                               HalfspacePredictor>;

  static Predictor constant(double p);
  static Predictor linear(std::vector<double> weights);
  static Predictor logistic(std::vector<double> weights, double lipschitz);
  static Predictor kernel(std::vector<Example> support, std::vector<double> beta,
                          KernelSpec kernel);
  static Predictor halfspace(std::vector<double> weights);

  // Input dimension; nullopt for the constant predictor.
  std::optional<std::size_t> dimension() const;
  std::string variant_name() const;
  const Variant& variant() const { return variant_; }

  // Throws InvalidArgument on a dimension mismatch.
  double predict(const Example& x) const;
  // Kernel predictors: the unclamped score; other variants: predict().
  double raw_score(const Example& x) const;
  std::vector<double> predict_all(const LabeledDataset& dataset) const;

 private:
  explicit Predictor(Variant v) : variant_(std::move(v)) {}
  void check_dimension(const Example& x) const;
  Variant variant_;
};

double logistic_link(double z, double lipschitz);

}  // namespace pacf

#endif  // PACF_PREDICTOR_HPP_
