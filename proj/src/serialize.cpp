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

#include "pacf/serialize.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "pacf/error.hpp"

namespace pacf {

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) throw InvalidArgument("unknown key '" + k + "' in " + where);
  }
}

template <class T>
void read_opt(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json example_features(const std::vector<Example>& ex) {
  Json a = Json::array();
  for (const auto& e : ex) a.push_back(e.features);
  return a;
}

}  // namespace

std::string bits_to_string(const BitString& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitString bits_from_string(const std::string& text) {
  BitString b;
  b.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw InvalidArgument("bit strings contain only 0 and 1");
    b.push_back(c == '1' ? 1 : 0);
  }
  return b;
}

Json to_json(const FairnessReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["gamma"] = r.gamma;
  j["n_edges"] = r.n_edges;
  j["empirical_mf_loss"] = r.empirical_mf_loss;
  j["empirical_l1_loss"] = r.empirical_l1_loss;
  if (r.population) {
    j["population_estimate"] = r.population->estimate;
    j["population_ci"] = r.population->half_width;
    j["population_pairs"] = r.population->n_pairs;
  } else {
    j["population_estimate"] = nullptr;
    j["population_ci"] = nullptr;
  }
  Json g = Json::array();
  for (const auto& p : r.group_profile) g.push_back({{"alpha2", p.alpha2}, {"alpha1", p.alpha1}});
  j["group_profile"] = g;
  return j;
}

Json to_json(const ValidationReport& r) {
  auto pairs = [](const std::vector<PairViolation>& v) {
    Json a = Json::array();
    for (const auto& p : v) a.push_back({{"i", p.i}, {"j", p.j}, {"d_ij", p.d_ij}, {"d_ji", p.d_ji}});
    return a;
  };
  Json tri = Json::array();
  for (const auto& t : r.triangle_violations) {
    tri.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"d_ij", t.d_ij}, {"d_ik", t.d_ik},
                   {"d_kj", t.d_kj}});
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["ok"] = r.ok();
  j["triples_checked"] = r.triples_checked;
  j["reflexivity_violations"] = pairs(r.reflexivity_violations);
  j["symmetry_violations"] = pairs(r.symmetry_violations);
  j["range_violations"] = pairs(r.range_violations);
  j["triangle_violations"] = tri;
  return j;
}

Json to_json(const SolverDerivedParams& p) {
  Json j;
  j["G"] = p.g;
  j["rho"] = p.rho;
  j["alpha_tilde"] = p.alpha_tilde;
  j["gamma_tilde"] = p.gamma_tilde;
  j["tau"] = p.tau;
  j["mode"] = budget_mode_name(p.mode);
  j["B_requested"] = p.b_requested ? finite_or_null(*p.b_requested) : Json(nullptr);
  j["B_requested_overflow"] = p.b_requested && std::isinf(*p.b_requested);
  j["B_used"] = p.b_used ? Json(*p.b_used) : Json(nullptr);
  return j;
}

Json to_json(const TrainingReport& r) {
  Json j;
  j["final_objective"] = r.final_objective;
  j["final_constraint_slack"] = r.final_constraint_slack;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["empirical_l1_loss"] = r.empirical_l1_loss;
  j["empirical_mf_loss_at_gamma_tilde"] = r.empirical_mf_loss_at_gamma_tilde;
  j["mf_budget_at_gamma_tilde"] = r.mf_budget_at_gamma_tilde;
  j["n_edges"] = r.n_edges;
  j["derived"] = to_json(r.params);
  // Utility is |h(x) - (1+y)/2|; the raw-score program's loss is twice this.
  j["utility_scale"] = "predictor_space";
  return j;
}

Json to_json(const TrainConfig& c) {
  Json learner;
  learner["kind"] = learner_kind_name(c.learner.kind);
  learner["kernel"] = kernel_kind_name(c.learner.kernel);
  if (c.learner.lipschitz_l) learner["L"] = *c.learner.lipschitz_l;
  if (c.learner.b) learner["B"] = *c.learner.b;
  Json solver;
  solver["max_iters"] = c.solver.max_iters;
  solver["step_schedule"] = step_kind_name(c.solver.step_schedule.kind);
  solver["c0"] = c.solver.step_schedule.c0;
  solver["feasibility_tolerance"] = c.solver.feasibility_tolerance;
  solver["objective_tolerance"] = c.solver.objective_tolerance;
  solver["patience"] = c.solver.patience;
  solver["seed"] = c.solver.seed;
  Json j;
  j["alpha"] = c.alpha;
  j["gamma"] = c.gamma;
  j["eps"] = c.eps;
  j["eps_alpha"] = c.eps_alpha;
  j["eps_gamma"] = c.eps_gamma;
  j["delta"] = c.delta;
  j["gamma_star"] = c.gamma_star;
  j["b_max"] = c.b_max;
  j["mode"] = budget_mode_name(c.mode);
  if (c.tau) j["tau"] = *c.tau;
  j["learner"] = learner;
  j["solver"] = solver;
  return j;
}

TrainConfig train_config_from_json(const Json& j) {
  reject_unknown(j, {"alpha", "gamma", "eps", "eps_alpha", "eps_gamma", "delta", "gamma_star",
                     "b_max", "mode", "tau", "learner", "solver"},
                 "training config");
  TrainConfig c;
  try {
    read_opt(j, "alpha", c.alpha);
    read_opt(j, "gamma", c.gamma);
    read_opt(j, "eps", c.eps);
    read_opt(j, "eps_alpha", c.eps_alpha);
    read_opt(j, "eps_gamma", c.eps_gamma);
    read_opt(j, "delta", c.delta);
    read_opt(j, "gamma_star", c.gamma_star);
    read_opt(j, "b_max", c.b_max);
    if (j.contains("mode")) c.mode = parse_budget_mode(j.at("mode").get<std::string>());
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("learner")) {
      const Json& l = j.at("learner");
      reject_unknown(l, {"kind", "kernel", "L", "B"}, "learner");
      if (l.contains("kind")) c.learner.kind = parse_learner_kind(l.at("kind").get<std::string>());
      if (l.contains("kernel")) c.learner.kernel = parse_kernel_kind(l.at("kernel").get<std::string>());
      if (l.contains("L")) c.learner.lipschitz_l = l.at("L").get<double>();
      if (l.contains("B")) c.learner.b = l.at("B").get<double>();
    }
    if (j.contains("solver")) {
      const Json& s = j.at("solver");
      reject_unknown(s, {"max_iters", "step_schedule", "c0", "feasibility_tolerance",
                         "objective_tolerance", "patience", "seed"},
                     "solver");
      read_opt(s, "max_iters", c.solver.max_iters);
      if (s.contains("step_schedule")) {
        c.solver.step_schedule.kind = parse_step_kind(s.at("step_schedule").get<std::string>());
      }
      read_opt(s, "c0", c.solver.step_schedule.c0);
      read_opt(s, "feasibility_tolerance", c.solver.feasibility_tolerance);
      read_opt(s, "objective_tolerance", c.solver.objective_tolerance);
      read_opt(s, "patience", c.solver.patience);
      read_opt(s, "seed", c.solver.seed);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed training config: ") + e.what());
  }
  c.validate();
  return c;
}

Json to_json(const HardnessMetricHandle& h) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = h.n;
  j["mode"] = std::string(hardness_mode_name(h.mode));
  j["y"] = bits_to_string(h.y);
  if (h.seed) j["seed_bits"] = bits_to_string(*h.seed);
  return j;
}

HardnessMetricHandle handle_from_json(const Json& j) {
  reject_unknown(j, {"schema_version", "n", "mode", "y", "seed_bits"}, "hardness handle");
  HardnessMetricHandle h;
  try {
    h.n = j.at("n").get<std::size_t>();
    h.mode = parse_hardness_mode(j.at("mode").get<std::string>());
    h.y = bits_from_string(j.at("y").get<std::string>());
    if (j.contains("seed_bits")) h.seed = bits_from_string(j.at("seed_bits").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed hardness handle: ") + e.what());
  }
  validate_handle(h);
  return h;
}

namespace {

Json to_json(const LearnerOutcome& o) {
  return {{"error", o.error},
          {"empirical_mf_loss", o.empirical_mf_loss},
          {"empirical_l1_loss", o.empirical_l1_loss},
          {"tau", o.tau},
          {"iterations", o.iterations}};
}

Json to_json(const HardnessModeReport& r) {
  Json j;
  j["mode"] = std::string(hardness_mode_name(r.mode));
  j["zero_distance_pairs"] = r.zero_distance_pairs;
  j["fair_projection_error"] = r.fair_projection_error;
  j["reference_error"] = r.reference_error;
  j["audited_pairs"] = r.audited_pairs;
  j["reference_violations"] = r.reference_violations;
  j["linear_learner"] = r.linear ? to_json(*r.linear) : Json(nullptr);
  j["kernel_learner"] = r.kernel ? to_json(*r.kernel) : Json(nullptr);
  return j;
}

}  // namespace

Json to_json(const HardnessReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = r.options.n;
  j["pairs"] = r.options.k_pairs;
  j["seed"] = r.options.seed;
  j["train_pairs"] = r.options.train_pairs;
  j["trainer"] = to_json(r.options.trainer);
  Json modes = Json::object();
  if (r.u) modes["u"] = to_json(*r.u);
  if (r.v) modes["v"] = to_json(*r.v);
  j["modes"] = modes;
  j["linear_error_gap"] = r.linear_gap ? Json(*r.linear_gap) : Json(nullptr);
  j["kernel_error_gap"] = r.kernel_gap ? Json(*r.kernel_gap) : Json(nullptr);
  return j;
}

Json to_json(const RademacherEstimate& r) {
  return {{"value", r.value}, {"n_draws", r.n_draws}, {"mc_half_width", r.mc_half_width}};
}

Json to_json(const SampleComplexity& s) {
  Json j;
  j["m"] = finite_or_null(s.m);
  j["raw"] = finite_or_null(s.raw);
  j["overflow"] = !std::isfinite(s.m);
  j["dominant"] = s.dominant;
  if (s.iterations > 0) j["iterations"] = s.iterations;
  return j;
}

Json predictor_to_json(const Predictor& h) {
  Json j;
  j["variant"] = h.variant_name();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantPredictor>) {
          j["p"] = p.p;
        } else if constexpr (std::is_same_v<T, LinearPredictor> ||
                             std::is_same_v<T, HalfspacePredictor>) {
          j["weights"] = p.weights;
        } else if constexpr (std::is_same_v<T, LogisticPredictor>) {
          j["weights"] = p.weights;
          j["lipschitz"] = p.lipschitz;
        } else {
          j["kernel"] = kernel_kind_name(p.kernel.kind);
          j["support"] = example_features(p.support);
          Json labels = Json::array();
          Json rows = Json::array();
          for (const auto& e : p.support) {
            labels.push_back(e.label);
            rows.push_back(e.source_row ? Json(*e.source_row) : Json(nullptr));
          }
          j["support_labels"] = labels;
          j["support_rows"] = rows;
          j["beta"] = p.beta;
        }
      },
      h.variant());
  return j;
}

Predictor predictor_from_json(const Json& j, std::shared_ptr<const DistanceMatrix> gram) {
  try {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "constant") return Predictor::constant(j.at("p").get<double>());
    if (v == "linear") return Predictor::linear(j.at("weights").get<std::vector<double>>());
    if (v == "halfspace") return Predictor::halfspace(j.at("weights").get<std::vector<double>>());
    if (v == "logistic") {
      return Predictor::logistic(j.at("weights").get<std::vector<double>>(),
                                 j.at("lipschitz").get<double>());
    }
    if (v == "kernel") {
      const KernelKind kind = parse_kernel_kind(j.at("kernel").get<std::string>());
      KernelSpec spec;
      if (kind == KernelKind::kVovkHalf) {
        spec = KernelSpec::vovk_half();
      } else if (kind == KernelKind::kLinearDot) {
        spec = KernelSpec::linear_dot();
      } else {
        if (!gram) throw InvalidArgument("precomputed-Gram predictor needs its Gram matrix");
        spec = KernelSpec::precomputed(std::move(gram));
      }
      const auto feats = j.at("support").get<std::vector<std::vector<double>>>();
      const auto labels = j.at("support_labels").get<std::vector<int>>();
      if (labels.size() != feats.size()) throw InvalidArgument("support labels do not match support");
      std::vector<Example> support;
      support.reserve(feats.size());
      for (std::size_t i = 0; i < feats.size(); ++i) {
        Example e{feats[i], labels[i], std::nullopt};
        if (j.contains("support_rows") && !j["support_rows"][i].is_null()) {
          e.source_row = j["support_rows"][i].get<std::size_t>();
        }
        support.push_back(std::move(e));
      }
      return Predictor::kernel(std::move(support), j.at("beta").get<std::vector<double>>(), spec);
    }
    throw InvalidArgument("unknown predictor variant '" + v + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed predictor: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pacf
