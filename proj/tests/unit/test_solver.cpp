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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "pacf/error.hpp"
#include "pacf/rng.hpp"
#include "pacf/solver.hpp"

namespace pacf {
namespace {

void project_ball(std::span<double> w, double radius) {
  double s = 0.0;
  for (double v : w) s += v * v;
  if (s > radius * radius) {
    const double f = radius / std::sqrt(s);
    for (double& v : w) v *= f;
  }
}

TEST(SolverTest, InteriorL1Minimum) {
  const std::vector<double> w0{0.3, -0.2, 0.1};
  ConvexProblem p;
  p.dimension = 3;
  p.objective = [&](std::span<const double> w, std::span<double> g) {
    double f = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      f += std::abs(w[i] - w0[i]);
      if (!g.empty()) g[i] = w[i] > w0[i] ? 1.0 : (w[i] < w0[i] ? -1.0 : 0.0);
    }
    return f;
  };
  p.constraint = [](std::span<const double>, std::span<double> g) {
    std::fill(g.begin(), g.end(), 0.0);
    return -1.0;
  };
  p.project = [](std::span<double> w) { project_ball(w, 1.0); };
  SolverConfig cfg;
  cfg.max_iters = 20000;
  const SolverResult r = solve_constrained(p, cfg, {0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.point[i], w0[i], 5e-3);
  EXPECT_LT(r.report.final_objective, 0.01);
  EXPECT_LE(r.report.final_constraint_slack, cfg.feasibility_tolerance);
}

TEST(SolverTest, ActiveConstraintAtBoundary) {
  ConvexProblem p;
  p.dimension = 1;
  p.objective = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = -1.0;
    return -w[0];
  };
  p.constraint = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = 1.0;
    return w[0] - 0.3;
  };
  p.project = [](std::span<double> w) { w[0] = std::clamp(w[0], -1.0, 1.0); };
  for (StepKind kind : {StepKind::kInverseSqrt, StepKind::kPolyak}) {
    SolverConfig cfg;
    cfg.step_schedule.kind = kind;
    const SolverResult r = solve_constrained(p, cfg, {-1.0});
    EXPECT_NEAR(r.point[0], 0.3, 1e-3) << step_kind_name(kind);
    EXPECT_LE(r.point[0], 0.3 + cfg.feasibility_tolerance);
  }
}

// f(w) = max_k <a_k, w> + b_k, g(w) = <c, w> - e with e > 0, unit disk.
struct PiecewiseInstance {
  std::vector<std::array<double, 3>> pieces;
  std::array<double, 2> c;
  double e;

  double f(double x, double y) const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& p : pieces) v = std::max(v, p[0] * x + p[1] * y + p[2]);
    return v;
  }
};

TEST(SolverTest, RandomPiecewiseLinearVsGrid) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = make_rng(t, 0x501);
    PiecewiseInstance in;
    const std::size_t k = 2 + uniform_index(rng, 5);
    for (std::size_t i = 0; i < k; ++i) {
      in.pieces.push_back({uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -0.5, 0.5)});
    }
    in.c = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
    in.e = uniform(rng, 0.05, 0.5);

    ConvexProblem p;
    p.dimension = 2;
    p.objective = [&](std::span<const double> w, std::span<double> g) {
      std::size_t arg = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < in.pieces.size(); ++i) {
        const double v = in.pieces[i][0] * w[0] + in.pieces[i][1] * w[1] + in.pieces[i][2];
        if (v > best) best = v, arg = i;
      }
      if (!g.empty()) g[0] = in.pieces[arg][0], g[1] = in.pieces[arg][1];
      return best;
    };
    p.constraint = [&](std::span<const double> w, std::span<double> g) {
      if (!g.empty()) g[0] = in.c[0], g[1] = in.c[1];
      return in.c[0] * w[0] + in.c[1] * w[1] - in.e;
    };
    p.project = [](std::span<double> w) { project_ball(w, 1.0); };
    SolverConfig cfg;
    cfg.seed = t;
    const SolverResult r = solve_constrained(p, cfg, {0.0, 0.0});

    double oracle = std::numeric_limits<double>::infinity();
    const double h = 0.005;
    for (double x = -1.0; x <= 1.0; x += h) {
      for (double y = -1.0; y <= 1.0; y += h) {
        if (x * x + y * y > 1.0 || in.c[0] * x + in.c[1] * y - in.e > 0.0) continue;
        oracle = std::min(oracle, in.f(x, y));
      }
    }
    EXPECT_LE(r.report.final_objective, oracle + 0.02) << t;
    EXPECT_LE(r.report.final_constraint_slack, cfg.feasibility_tolerance) << t;
    EXPECT_NEAR(r.report.final_objective, in.f(r.point[0], r.point[1]), 1e-12);
  }
}

TEST(SolverTest, InfeasibleReportsBestSlackPoint) {
  ConvexProblem p;
  p.dimension = 1;
  p.objective = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = 1.0;
    return w[0];
  };
  // g(w) = 2 - w > 0 on [-1, 1]; least violation at w = 1.
  p.constraint = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = -1.0;
    return 2.0 - w[0];
  };
  p.project = [](std::span<double> w) { w[0] = std::clamp(w[0], -1.0, 1.0); };
  SolverConfig cfg;
  cfg.max_iters = 500;
  try {
    solve_constrained(p, cfg, {0.0});
    FAIL();
  } catch (const SolverFailure& e) {
    EXPECT_NE(std::string(e.what()).find("infeasible or budget exhausted"), std::string::npos);
    EXPECT_DOUBLE_EQ(e.best_slack_point()[0], 1.0);
    EXPECT_DOUBLE_EQ(e.best_slack(), 1.0);
  }
}

TEST(SolverTest, DeterministicAndValidated) {
  ConvexProblem p;
  p.dimension = 2;
  p.objective = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = w[0] > 0.2 ? 1.0 : -1.0, g[1] = w[1] > -0.4 ? 1.0 : -1.0;
    return std::abs(w[0] - 0.2) + std::abs(w[1] + 0.4);
  };
  p.constraint = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = 1.0, g[1] = -1.0;
    return w[0] - w[1] - 0.3;
  };
  p.project = [](std::span<double> w) { project_ball(w, 1.0); };
  SolverConfig cfg;
  cfg.max_iters = 3000;
  const SolverResult a = solve_constrained(p, cfg, {0.0, 0.0});
  const SolverResult b = solve_constrained(p, cfg, {0.0, 0.0});
  EXPECT_EQ(a.point, b.point);
  cfg.feasibility_tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  EXPECT_THROW(solve_constrained(p, cfg, {0.0, 0.0}), InvalidArgument);
  EXPECT_EQ(parse_step_kind("polyak"), StepKind::kPolyak);
  EXPECT_THROW(parse_step_kind("newton"), InvalidArgument);
}

TEST(SolverTest, PatienceStopsEarly) {
  ConvexProblem p;
  p.dimension = 1;
  p.objective = [](std::span<const double> w, std::span<double> g) {
    if (!g.empty()) g[0] = w[0] > 0.5 ? 1.0 : -1.0;
    return std::abs(w[0] - 0.5);
  };
  p.constraint = [](std::span<const double>, std::span<double> g) {
    if (!g.empty()) g[0] = 0.0;
    return -1.0;
  };
  p.project = [](std::span<double> w) { w[0] = std::clamp(w[0], -1.0, 1.0); };
  SolverConfig cfg;
  cfg.max_iters = 100000;
  cfg.patience = 200;
  const SolverResult r = solve_constrained(p, cfg, {0.0});
  EXPECT_TRUE(r.report.converged);
  EXPECT_LT(r.report.iterations, cfg.max_iters);
}

}  // namespace
}  // namespace pacf
