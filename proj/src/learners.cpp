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

#include "pacf/learners.hpp"

#include <algorithm>
#include <cmath>

#include "pacf/bounds.hpp"
#include "pacf/error.hpp"
#include "pacf/fairness.hpp"
#include "pacf/simd/kernels.hpp"

namespace pacf {

std::string learner_kind_name(LearnerKind k) {
  return k == LearnerKind::kKernel ? "kernel" : "linear";
}

LearnerKind parse_learner_kind(const std::string& s) {
  if (s == "linear") return LearnerKind::kLinear;
  if (s == "kernel") return LearnerKind::kKernel;
  throw InvalidArgument("unknown learner kind '" + s + "'");
}

std::string budget_mode_name(BudgetMode m) {
  return m == BudgetMode::kTheoretical ? "theoretical" : "empirical";
}

BudgetMode parse_budget_mode(const std::string& s) {
  if (s == "empirical") return BudgetMode::kEmpirical;
  if (s == "theoretical") return BudgetMode::kTheoretical;
  throw InvalidArgument("unknown budget mode '" + s + "'");
}

namespace {

void check_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
}

const char* const kTooSmall = "sample too small for requested fairness/error parameters";

}  // namespace

void TrainConfig::validate() const {
  check_unit(alpha, "alpha");
  check_unit(gamma, "gamma");
  check_unit(eps, "eps");
  check_unit(eps_alpha, "eps_alpha");
  check_unit(eps_gamma, "eps_gamma");
  check_unit(delta, "delta");
  check_unit(gamma_star, "gamma_star");
  if (!(b_max > 0.0)) throw InvalidArgument("b_max must be > 0");
  if (learner.b && !(*learner.b > 0.0)) throw InvalidArgument("B must be > 0");
  if (learner.lipschitz_l && !(*learner.lipschitz_l >= 3.0)) {
    throw InvalidArgument("L must be >= 3");
  }
  if (tau && !(*tau >= 0.0 && *tau <= 1.0)) throw InvalidArgument("tau must lie in [0, 1]");
  solver.validate();
}

SolverDerivedParams derive_solver_params(const TrainConfig& config, std::size_t m,
                                         std::optional<double> b) {
  config.validate();
  if (m < 2) throw InvalidArgument(kTooSmall);
  SolverDerivedParams p;
  p.mode = config.mode;
  const bool kernel = config.learner.kind == LearnerKind::kKernel;
  const double slack = std::min(config.eps_alpha, config.eps_gamma / 2.0);
  p.g = 1.0 / (kernel ? std::min(config.eps, slack) : slack);
  p.gamma_tilde = config.gamma - 1.0 / p.g;
  if (!(p.gamma_tilde > 0.0)) throw InvalidArgument(kTooSmall);

  const double md = static_cast<double>(m);
  if (kernel) {
    if (!b) b = config.learner.b;
    if (!b) {
      const double l = config.learner.lipschitz_l.value_or(3.0);
      b = kernel_norm_bound_b(l, sigmoid_eps_star(config.eps, config.eps_alpha,
                                                  config.eps_gamma))
              .value;
    }
    p.b_requested = *b;
    p.b_used = std::min(*b, config.b_max);
    p.rho = kernel_rho(p.g, config.delta, md, *p.b_used);
  } else {
    p.rho = linear_rho(p.g, config.delta, md);
  }

  if (config.mode == BudgetMode::kTheoretical) {
    p.alpha_tilde = (config.alpha - p.rho) * p.gamma_tilde;
    if (!(p.alpha_tilde > 0.0)) throw InvalidArgument(kTooSmall);
  } else {
    p.alpha_tilde = config.alpha * p.gamma_tilde;
  }
  p.tau = config.tau.value_or(p.alpha_tilde);
  return p;
}

// ---------------------------------------------------------------------------
// Linear program.

LinearFairProgram::LinearFairProgram(const LabeledDataset& sample,
                                     const SimilarityMetric& d, const Matching& matching,
                                     double tau)
    : m_(sample.size()),
      dim_(sample.dimension()),
      n_edges_(matching.size()),
      x_(sample.feature_matrix()),
      target_(sample.targets()),
      tau_(tau) {
  if (matching.empty()) throw InvalidArgument("empty matching");
  if (matching.sample_size() != m_) {
    throw InvalidArgument("matching was built for a sample of different size");
  }
  edge_x_.resize(n_edges_ * dim_);
  dist_.reserve(n_edges_);
  for (std::size_t e = 0; e < n_edges_; ++e) {
    const auto [i, j] = matching.pairs()[e];
    for (std::size_t c = 0; c < dim_; ++c) {
      edge_x_[e * dim_ + c] = x_[i * dim_ + c] - x_[j * dim_ + c];
    }
    dist_.push_back(d(sample[i], sample[j]));
  }
}

double LinearFairProgram::objective(std::span<const double> w,
                                    std::span<double> grad) const {
  std::vector<double> pred(m_);
  simd::gemv(x_, m_, dim_, w, pred);
  for (double& p : pred) p = 0.5 + 0.5 * p;
  std::vector<double> sign(m_);
  const double sum = simd::abs_residuals(pred, target_, sign);
  const double inv_m = 1.0 / static_cast<double>(m_);
  if (!grad.empty()) {
    simd::gemv_t(x_, m_, dim_, sign, grad);
    for (double& g : grad) g *= 0.5 * inv_m;
  }
  return sum * inv_m;
}

double LinearFairProgram::l1_loss(std::span<const double> w,
                                  std::span<double> grad) const {
  std::vector<double> diff(n_edges_);
  simd::gemv(edge_x_, n_edges_, dim_, w, diff);
  for (double& v : diff) v *= 0.5;
  std::vector<double> sign(n_edges_);
  const simd::EdgeSums s = simd::edge_violations(diff, dist_, 0.0, {}, sign);
  const double inv_e = 1.0 / static_cast<double>(n_edges_);
  if (!grad.empty()) {
    simd::gemv_t(edge_x_, n_edges_, dim_, sign, grad);
    for (double& g : grad) g *= 0.5 * inv_e;
  }
  return s.excess_sum * inv_e;
}

double LinearFairProgram::constraint(std::span<const double> w,
                                     std::span<double> grad) const {
  return l1_loss(w, grad) - tau_;
}

ConvexProblem LinearFairProgram::problem() const {
  ConvexProblem p;
  p.dimension = dim_;
  p.objective = [this](std::span<const double> w, std::span<double> g) {
    return objective(w, g);
  };
  p.constraint = [this](std::span<const double> w, std::span<double> g) {
    return constraint(w, g);
  };
  p.project = [](std::span<double> w) {
    const double norm = std::sqrt(simd::squared_norm(w));
    if (norm > 1.0) {
      for (double& v : w) v /= norm;
    }
  };
  p.domain_radius = 1.0;
  return p;
}

// ---------------------------------------------------------------------------
// Kernel program.

Eigen::MatrixXd gram_matrix(const LabeledDataset& sample, const KernelSpec& kernel) {
  const auto m = static_cast<Eigen::Index>(sample.size());
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const double v = kernel(sample[static_cast<std::size_t>(i)],
                              sample[static_cast<std::size_t>(j)]);
      if (!std::isfinite(v)) throw InvalidArgument("kernel value is not finite");
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

KernelFairProgram::KernelFairProgram(Eigen::MatrixXd gram, std::span<const double> targets,
                                     const LabeledDataset& sample,
                                     const SimilarityMetric& d, const Matching& matching,
                                     double tau, double b)
    : m_(static_cast<std::size_t>(gram.rows())),
      gram_(std::move(gram)),
      target_(targets.begin(), targets.end()),
      edges_(matching.pairs()),
      tau_(tau),
      b_(b) {
  if (gram_.rows() != gram_.cols() || m_ != sample.size() || target_.size() != m_) {
    throw InvalidArgument("gram matrix, targets and sample sizes disagree");
  }
  if (matching.empty()) throw InvalidArgument("empty matching");
  if (matching.sample_size() != m_) {
    throw InvalidArgument("matching was built for a sample of different size");
  }
  if (!(b_ > 0.0)) throw InvalidArgument("B must be > 0");
  gram_rows_.resize(m_ * m_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      gram_rows_[i * m_ + j] =
          gram_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  dist_.reserve(edges_.size());
  for (const auto& [i, j] : edges_) dist_.push_back(d(sample[i], sample[j]));
}

std::vector<double> KernelFairProgram::raw_scores(std::span<const double> beta) const {
  std::vector<double> raw(m_);
  simd::gemv(gram_rows_, m_, m_, beta, raw);
  return raw;
}

double KernelFairProgram::objective(std::span<const double> beta,
                                    std::span<double> grad) const {
  const std::vector<double> raw = raw_scores(beta);
  std::vector<double> sign(m_);
  const double sum = simd::abs_residuals(raw, target_, sign);
  const double inv_m = 1.0 / static_cast<double>(m_);
  // Functional subgradient (1/m) sum_i sign_i K(x_i, .), in coefficients.
  if (!grad.empty()) {
    for (std::size_t i = 0; i < m_; ++i) grad[i] = sign[i] * inv_m;
  }
  return sum * inv_m;
}

double KernelFairProgram::l1_loss(std::span<const double> beta,
                                  std::span<double> grad) const {
  const std::vector<double> raw = raw_scores(beta);
  const std::size_t n_edges = edges_.size();
  std::vector<double> diff(n_edges);
  for (std::size_t e = 0; e < n_edges; ++e) {
    diff[e] = raw[edges_[e].first] - raw[edges_[e].second];
  }
  std::vector<double> sign(n_edges);
  const simd::EdgeSums s = simd::edge_violations(diff, dist_, 0.0, {}, sign);
  const double inv_e = 1.0 / static_cast<double>(n_edges);
  if (!grad.empty()) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t e = 0; e < n_edges; ++e) {
      grad[edges_[e].first] += sign[e] * inv_e;
      grad[edges_[e].second] -= sign[e] * inv_e;
    }
  }
  return s.excess_sum * inv_e;
}

double KernelFairProgram::constraint(std::span<const double> beta,
                                     std::span<double> grad) const {
  if (!constrained_) {
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
    return -1.0;
  }
  return l1_loss(beta, grad) - tau_;
}

double KernelFairProgram::rkhs_sq_norm(std::span<const double> beta) const {
  std::vector<double> kb(m_);
  simd::gemv(gram_rows_, m_, m_, beta, kb);
  return std::max(0.0, simd::dot(beta, kb));
}

void KernelFairProgram::project(std::span<double> beta) const {
  const double q = rkhs_sq_norm(beta);
  if (q > b_) {
    const double s = std::sqrt(b_ / q);
    for (double& v : beta) v *= s;
  }
}

ConvexProblem KernelFairProgram::problem() const {
  ConvexProblem p;
  p.dimension = m_;
  p.objective = [this](std::span<const double> b, std::span<double> g) {
    return objective(b, g);
  };
  p.constraint = [this](std::span<const double> b, std::span<double> g) {
    return constraint(b, g);
  };
  p.project = [this](std::span<double> b) { project(b); };
  p.squared_norm = [this](std::span<const double> c) { return rkhs_sq_norm(c); };
  // Fitting targets in [0, 1] rarely needs the full ball when B is large.
  p.domain_radius = std::min(std::sqrt(b_), std::sqrt(static_cast<double>(m_)));
  return p;
}

// ---------------------------------------------------------------------------
// Training entry points.

namespace {

TrainingReport finish_report(const Predictor& h, const LabeledDataset& sample,
                             const SimilarityMetric& d, const Matching& matching,
                             const SolverResult& solved, const SolverDerivedParams& params,
                             double l1) {
  TrainingReport r;
  r.final_objective = solved.report.final_objective;
  r.final_constraint_slack = l1 - params.tau;
  r.iterations = solved.report.iterations;
  r.converged = solved.report.converged;
  r.empirical_l1_loss = l1;
  r.empirical_mf_loss_at_gamma_tilde =
      empirical_mf_loss(h, sample, matching, d, params.gamma_tilde);
  r.mf_budget_at_gamma_tilde = params.tau / params.gamma_tilde;
  r.n_edges = matching.size();
  r.params = params;
  return r;
}

MatchingStrategy default_strategy(const TrainConfig& config) {
  return RandomPermutationStrategy{config.solver.seed};
}

}  // namespace

TrainResult train_fair_linear(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config) {
  return train_fair_linear(sample, d, config,
                           build_matching(sample, default_strategy(config)));
}

TrainResult train_fair_linear(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config, const Matching& matching) {
  TrainConfig c = config;
  c.learner.kind = LearnerKind::kLinear;
  const SolverDerivedParams params = derive_solver_params(c, sample.size());
  const LinearFairProgram program(sample, d, matching, params.tau);
  const SolverResult solved = solve_constrained(
      program.problem(), c.solver, std::vector<double>(sample.dimension(), 0.0));
  Predictor h = Predictor::linear(solved.point);
  const double l1 = program.l1_loss(solved.point);
  TrainingReport r = finish_report(h, sample, d, matching, solved, params, l1);
  return {std::move(h), std::move(r)};
}

TrainResult train_fair_kernel(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config) {
  return train_fair_kernel(sample, d, config,
                           build_matching(sample, default_strategy(config)));
}

TrainResult train_fair_kernel(const LabeledDataset& sample, const SimilarityMetric& d,
                              const TrainConfig& config, const Matching& matching,
                              bool enforce_fairness) {
  TrainConfig c = config;
  c.learner.kind = LearnerKind::kKernel;
  const SolverDerivedParams params = derive_solver_params(c, sample.size());
  KernelSpec spec;
  switch (c.learner.kernel) {
    case KernelKind::kVovkHalf:
      spec = KernelSpec::vovk_half();
      break;
    case KernelKind::kLinearDot:
      spec = KernelSpec::linear_dot();
      break;
    case KernelKind::kPrecomputedGram:
      throw InvalidArgument("training needs a kernel that can be evaluated on new points");
  }
  KernelFairProgram program(gram_matrix(sample, spec), sample.targets(), sample, d,
                            matching, params.tau, *params.b_used);
  if (!enforce_fairness) program.drop_constraint();
  const SolverResult solved = solve_constrained(program.problem(), c.solver,
                                                std::vector<double>(sample.size(), 0.0));
  Predictor h = Predictor::kernel(sample.examples(), solved.point, spec);
  const double l1 = program.l1_loss(solved.point);
  TrainingReport r = finish_report(h, sample, d, matching, solved, params, l1);
  return {std::move(h), std::move(r)};
}

}  // namespace pacf
