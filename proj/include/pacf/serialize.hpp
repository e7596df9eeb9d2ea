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

#ifndef PACF_SERIALIZE_HPP_
#define PACF_SERIALIZE_HPP_

// JSON documents for reports, predictors, training configs and hardness
// metric handles. Every top-level report carries "schema_version".

#include <memory>
#include <string>

#include <json.hpp>

#include "pacf/bounds.hpp"
#include "pacf/expansion.hpp"
#include "pacf/fairness.hpp"
#include "pacf/hardness.hpp"
#include "pacf/learners.hpp"
#include "pacf/metric.hpp"
#include "pacf/predictor.hpp"
#include "pacf/rademacher.hpp"

namespace pacf {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

std::string bits_to_string(const BitString& bits);
BitString bits_from_string(const std::string& text);

Json to_json(const FairnessReport& r);
Json to_json(const ValidationReport& r);
Json to_json(const SolverDerivedParams& p);
Json to_json(const TrainingReport& r);
Json to_json(const TrainConfig& c);
Json to_json(const HardnessMetricHandle& h);
Json to_json(const HardnessReport& r);
Json to_json(const RademacherEstimate& r);
Json to_json(const SampleComplexity& s);

// Missing keys keep their defaults; unknown keys are rejected.
TrainConfig train_config_from_json(const Json& j);
HardnessMetricHandle handle_from_json(const Json& j);

// {variant, weights | p | (support, support_labels, beta, kernel), ...}.
Json predictor_to_json(const Predictor& h);
// A precomputed-Gram kernel predictor needs the matrix it was trained with.
Predictor predictor_from_json(const Json& j,
                              std::shared_ptr<const DistanceMatrix> gram = nullptr);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace pacf

#endif  // PACF_SERIALIZE_HPP_
