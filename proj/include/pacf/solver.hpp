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

#ifndef PACF_SOLVER_HPP_
#define PACF_SOLVER_HPP_

// Projected subgradient method for min f(w) s.t. g(w) <= 0 over a convex
// domain. Each iteration takes an objective step when g(w) is within the
// feasibility tolerance and a Polyak step on g otherwise.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pacf/error.hpp"

namespace pacf {

enum class StepKind { kInverseSqrt, kPolyak };

std::string step_kind_name(StepKind k);
StepKind parse_step_kind(const std::string& s);

struct StepSchedule {
  StepKind kind = StepKind::kInverseSqrt;
  // InverseSqrt: step length c0 * radius / sqrt(k).
  // Polyak: target level f_best - c0 * radius * |s| / sqrt(k).
  double c0 = 1.0;
};

struct SolverConfig {
  std::size_t max_iters = 20000;
  StepSchedule step_schedule;
  double feasibility_tolerance = 1e-7;
  double objective_tolerance = 1e-6;
  // Stop once the best feasible objective has not improved by more than
  // objective_tolerance for this many iterations; 0 disables the check.
  std::size_t patience = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Value-and-subgradient oracle. Writes a subgradient (or, for problems posed
// in a Hilbert space through coordinates, the coefficient vector of the
// functional subgradient) into `grad` and returns the value.
using SubgradientFn = std::function<double(std::span<const double> w, std::span<double> grad)>;

struct ConvexProblem {
  std::size_t dimension = 0;
  SubgradientFn objective;
  SubgradientFn constraint;  // feasible iff value <= 0
  std::function<void(std::span<double> w)> project;
  // Squared norm of a step direction; Euclidean when empty. Kernel problems
  // pass c -> c^T K c so that steps are taken in the RKHS geometry.
  std::function<double(std::span<const double> v)> squared_norm;
  double domain_radius = 1.0;
};

struct SolverReport {
  double final_objective = 0.0;
  double final_constraint_slack = 0.0;  // g at the returned point
  std::size_t iterations = 0;
  std::size_t feasible_steps = 0;
  bool converged = false;        // stopped by the patience rule
  bool returned_average = false;  // averaged iterate beat the best iterate
};

struct SolverResult {
  std::vector<double> point;
  SolverReport report;
};

// Thrown when no iterate satisfied the feasibility tolerance.
class SolverFailure : public RuntimeError {
 public:
  SolverFailure(std::vector<double> best_slack_point, double best_slack);
  const std::vector<double>& best_slack_point() const { return point_; }
  double best_slack() const { return slack_; }

 private:
  std::vector<double> point_;
  double slack_;
};

SolverResult solve_constrained(const ConvexProblem& problem, const SolverConfig& config,
                               std::vector<double> initial_point);

}  // namespace pacf

#endif  // PACF_SOLVER_HPP_
