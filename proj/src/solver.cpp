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

#include "pacf/solver.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace pacf {

std::string step_kind_name(StepKind k) {
  return k == StepKind::kPolyak ? "polyak" : "inverse_sqrt";
}

StepKind parse_step_kind(const std::string& s) {
  if (s == "polyak") return StepKind::kPolyak;
  if (s == "inverse_sqrt") return StepKind::kInverseSqrt;
  throw InvalidArgument("unknown step schedule '" + s + "'");
}

void SolverConfig::validate() const {
  if (max_iters == 0) throw InvalidArgument("max_iters must be >= 1");
  if (!(feasibility_tolerance > 0.0) || !(objective_tolerance > 0.0)) {
    throw InvalidArgument("solver tolerances must be > 0");
  }
  if (!(step_schedule.c0 > 0.0)) throw InvalidArgument("step constant c0 must be > 0");
}

SolverFailure::SolverFailure(std::vector<double> best_slack_point, double best_slack)
    : RuntimeError("infeasible or budget exhausted (best constraint value " +
                   std::to_string(best_slack) + ")"),
      point_(std::move(best_slack_point)),
      slack_(best_slack) {}

namespace {

double euclidean_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

SolverResult solve_constrained(const ConvexProblem& problem, const SolverConfig& config,
                               std::vector<double> initial_point) {
  config.validate();
  const std::size_t n = problem.dimension;
  if (initial_point.size() != n) throw InvalidArgument("initial point has wrong dimension");
  if (!problem.objective || !problem.constraint || !problem.project) {
    throw InvalidArgument("problem is missing an oracle");
  }
  if (!(problem.domain_radius > 0.0)) throw InvalidArgument("domain radius must be > 0");
  auto sqnorm = [&](std::span<const double> v) {
    return problem.squared_norm ? problem.squared_norm(v) : euclidean_sq(v);
  };
  const double tol = config.feasibility_tolerance;
  const double c0 = config.step_schedule.c0 * problem.domain_radius;

  std::vector<double> w = std::move(initial_point);
  problem.project(w);
  std::vector<double> og(n), cg(n);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best_w, slack_w = w;
  double best_f = kInf;
  double best_slack = kInf;
  std::vector<double> avg(n, 0.0);
  double weight = 0.0;

  SolverReport rep;
  std::size_t last_improvement = 0;
  std::size_t k = 0;
  while (k < config.max_iters) {
    ++k;
    const double g = problem.constraint(w, cg);
    if (g < best_slack) {
      best_slack = g;
      slack_w = w;
    }
    if (g <= tol) {
      const double f = problem.objective(w, og);
      if (f < best_f - config.objective_tolerance) last_improvement = k;
      if (f < best_f) {
        best_f = f;
        best_w = w;
      }
      const double ns = sqnorm(og);
      if (!(ns > 0.0)) {
        // Zero subgradient at a feasible point: global minimizer of f.
        rep.converged = true;
        break;
      }
      ++rep.feasible_steps;
      const double root_k = std::sqrt(static_cast<double>(rep.feasible_steps));
      double eta;
      if (config.step_schedule.kind == StepKind::kPolyak) {
        const double target = best_f - c0 * std::sqrt(ns) / root_k;
        eta = (f - target) / ns;
      } else {
        eta = c0 / (std::sqrt(ns) * root_k);
      }
      axpy(eta, w, avg);
      weight += eta;
      axpy(-eta, og, w);
    } else {
      const double ns = sqnorm(cg);
      if (!(ns > 0.0)) break;  // g is minimized and still positive
      axpy(-g / ns, cg, w);
    }
    problem.project(w);
    if (config.patience > 0 && best_f < kInf && k - last_improvement >= config.patience) {
      rep.converged = true;
      break;
    }
  }
  rep.iterations = k;

  if (best_f == kInf) throw SolverFailure(std::move(slack_w), best_slack);

  std::vector<double> result = best_w;
  double result_f = best_f;
  double result_g = problem.constraint(best_w, cg);
  if (weight > 0.0) {
    for (double& v : avg) v /= weight;
    problem.project(avg);
    const double ga = problem.constraint(avg, cg);
    if (ga <= tol) {
      const double fa = problem.objective(avg, og);
      if (fa < result_f) {
        result = std::move(avg);
        result_f = fa;
        result_g = ga;
        rep.returned_average = true;
      }
    }
  }
  rep.final_objective = result_f;
  rep.final_constraint_slack = result_g;
  return {std::move(result), rep};
}

}  // namespace pacf
