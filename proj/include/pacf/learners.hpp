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

#ifndef PACF_LEARNERS_HPP_
#define PACF_LEARNERS_HPP_

// Fairness-constrained training for linear predictors and for kernel
// predictors over the RKHS ball of radius sqrt(B).
//
// Utility and fairness are both measured in predictor space: the objective is
// mean |h(x_i) - (1 + y_i)/2| and the constraint is the per-edge mean of
// max(0, |h(x) - h(x')| - d(x, x')) <= tau. For the linear class this is the
// raw-score program divided by 2.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pacf/dataset.hpp"
#include "pacf/matching.hpp"
#include "pacf/metric.hpp"
#include "pacf/predictor.hpp"
#include "pacf/solver.hpp"

namespace pacf {

enum class LearnerKind { kLinear, kKernel };
enum class BudgetMode { kEmpirical, kTheoretical };

std::string learner_kind_name(LearnerKind k);
LearnerKind parse_learner_kind(const std::string& s);
std::string budget_mode_name(BudgetMode m);
BudgetMode parse_budget_mode(const std::string& s);

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kLinear;
  // Kernel learner: B is taken from `b` if set, else derived from the
  // sigmoid Lipschitz bound `lipschitz_l`, then capped at TrainConfig::b_max.
  std::optional<double> lipschitz_l;
  std::optional<double> b;
  KernelKind kernel = KernelKind::kVovkHalf;
};

struct TrainConfig {
  double alpha = 0.1;
  double gamma = 0.1;
  double eps = 0.1;
  double eps_alpha = 0.1;
  double eps_gamma = 0.1;
  double delta = 0.05;
  double gamma_star = 0.05;
  LearnerSpec learner;
  double b_max = 1e4;
  BudgetMode mode = BudgetMode::kEmpirical;
  // Explicit per-edge l1 budget; replaces the derived tau when set.
  std::optional<double> tau;
  SolverConfig solver;

  void validate() const;
};

struct SolverDerivedParams {
  double g = 0.0;            // surrogate Lipschitz constant
  double rho = 0.0;          // theoretical generalization slack (reported)
  double alpha_tilde = 0.0;  // per-edge l1 budget before any override
  double gamma_tilde = 0.0;  // gamma - 1/G
  double tau = 0.0;          // budget actually enforced
  BudgetMode mode = BudgetMode::kEmpirical;
  std::optional<double> b_requested;  // kernel learner only
  std::optional<double> b_used;
};

// Throws InvalidArgument "sample too small for requested fairness/error
// parameters" when gamma_tilde <= 0 or, in theoretical mode, alpha_tilde <= 0.
SolverDerivedParams derive_solver_params(const TrainConfig& config, std::size_t m,
                                         std::optional<double> b = std::nullopt);

struct TrainingReport {
  double final_objective = 0.0;
  double final_constraint_slack = 0.0;  // l1 loss - tau at the returned point
  std::size_t iterations = 0;
  bool converged = false;
  double empirical_l1_loss = 0.0;
  double empirical_mf_loss_at_gamma_tilde = 0.0;
  double mf_budget_at_gamma_tilde = 0.0;  // tau / gamma_tilde
  std::size_t n_edges = 0;
  SolverDerivedParams params;
};

// The linear program over w in the unit ball, with its oracles exposed for
// tests.
class LinearFairProgram {
 public:
  LinearFairProgram(const LabeledDataset& sample, const SimilarityMetric& d,
                    const Matching& matching, double tau);

  std::size_t dimension() const { return dim_; }
  double tau() const { return tau_; }
  double objective(std::span<const double> w, std::span<double> grad = {}) const;
  double l1_loss(std::span<const double> w, std::span<double> grad = {}) const;
  // l1_loss(w) - tau.
  double constraint(std::span<const double> w, std::span<double> grad = {}) const;
  ConvexProblem problem() const;

 private:
  std::size_t m_, dim_, n_edges_;
  std::vector<double> x_;       // m x dim, row-major
  std::vector<double> target_;  // (1 + y)/2
  std::vector<double> edge_x_;  // n_edges x dim, x_i - x_j
  std::vector<double> dist_;
  double tau_;
};

// Gram matrix K_ij = K(x_i, x_j). Throws on non-finite entries.
Eigen::MatrixXd gram_matrix(const LabeledDataset& sample, const KernelSpec& kernel);

// Program over beta with beta^T K beta <= B; raw scores are K beta.
class KernelFairProgram {
 public:
  KernelFairProgram(Eigen::MatrixXd gram, std::span<const double> targets,
                    const LabeledDataset& sample, const SimilarityMetric& d,
                    const Matching& matching, double tau, double b);

  std::size_t dimension() const { return m_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  double objective(std::span<const double> beta, std::span<double> grad = {}) const;
  double l1_loss(std::span<const double> beta, std::span<double> grad = {}) const;
  double constraint(std::span<const double> beta, std::span<double> grad = {}) const;
  double rkhs_sq_norm(std::span<const double> beta) const;
  void project(std::span<double> beta) const;
  // Disables the fairness constraint (baseline runs).
  void drop_constraint() { constrained_ = false; }
  ConvexProblem problem() const;

 private:
  std::vector<double> raw_scores(std::span<const double> beta) const;

  std::size_t m_;
  Eigen::MatrixXd gram_;
  std::vector<double> gram_rows_;  // row-major copy for the SIMD kernels
  std::vector<double> target_;
  std::vector<IndexPair> edges_;
  std::vector<double> dist_;
  double tau_;
  double b_;
  bool constrained_ = true;
};

struct TrainResult {
  Predictor predictor;
  TrainingReport report;
};

// Default matching: RandomPermutation(config.solver.seed).
TrainResult train_fair_linear(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config);
TrainResult train_fair_linear(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config, const Matching& matching);
TrainResult train_fair_kernel(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config);
TrainResult train_fair_kernel(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config, const Matching& matching,
                              bool enforce_fairness = true);

struct OracleResult {
  std::vector<double> w;
  double objective = 0.0;
  std::size_t grid_points = 0;
};

// Exhaustive scan of w over {(i r, j r)} intersected with the unit disk,
// evaluating the linear program with plain loops (no shared code with the
// learner). Requires dimension 2.
OracleResult brute_force_oracle_2d(const LabeledDataset& sample, const SimilarityMetric& d,
                                   const Matching& matching, double tau,
                                   double grid_resolution);

}  // namespace pacf

#endif  // PACF_LEARNERS_HPP_
