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

#ifndef PACF_CLI_HPP_
#define PACF_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "pacf/metric.hpp"

namespace pacf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// `args` excludes the program name. Reports go to `out` unless a command is
// given --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// constant:<c> | euclidean:<scale> | matrix:<path> | hardness:<handle-path>.
// A matrix's index file is <path>.index when present.
SimilarityMetric parse_metric_spec(const std::string& spec);

}  // namespace pacf::cli

#endif  // PACF_CLI_HPP_
