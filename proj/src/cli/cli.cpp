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

#include "pacf/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pacf/bounds.hpp"
#include "pacf/dataset.hpp"
#include "pacf/error.hpp"
#include "pacf/fairness.hpp"
#include "pacf/hardness.hpp"
#include "pacf/learners.hpp"
#include "pacf/matching.hpp"
#include "pacf/rademacher.hpp"
#include "pacf/rng.hpp"
#include "pacf/serialize.hpp"
#include "pacf/synth.hpp"

namespace pacf::cli {

namespace {

// Bad flag values and missing required inputs; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
  unsigned threads = 1;
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every stochastic step (falls back to PACF_SEED)");
  cmd->add_flag("--no-timestamp", c.no_timestamp, "Omit generated_at from reports");
  cmd->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_option("--out", c.out_path, "Write the report here instead of stdout");
}

std::uint64_t require_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("PACF_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw UsageError("PACF_SEED is not an unsigned integer");
    return v;
  }
  throw UsageError("this command is stochastic; pass --seed or set PACF_SEED");
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void stamp(Json& j, const Common& c) {
  if (!c.no_timestamp) j["generated_at"] = utc_now();
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw RuntimeError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw RuntimeError("failed writing '" + path + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw RuntimeError("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError(what + " expects a number, got '" + text + "'");
  return v;
}

MatchingStrategy parse_matching(const std::string& name, std::uint64_t seed) {
  if (name == "consecutive") return ConsecutiveStrategy{};
  if (name == "random") return RandomPermutationStrategy{seed};
  throw UsageError("--matching must be consecutive or random");
}

// ---------------------------------------------------------------------------

struct GenDataArgs {
  Common common;
  std::string generator = "uniform";
  std::size_t n = 2;
  std::size_t m = 100;
  double margin = 0.5;
  double noise = 0.0;
  std::string data_out;
  std::string handle_out;
};

int cmd_gen_data(const GenDataArgs& a, std::ostream& out) {
  SyntheticSpec spec;
  spec.n = a.n;
  spec.m = a.m;
  spec.seed = require_seed(a.common);
  if (a.generator == "uniform") {
    spec.generator = UnitBallUniform{};
  } else if (a.generator == "separable") {
    spec.generator = SeparableWithMargin{a.margin, a.noise};
  } else if (a.generator == "hardness-u") {
    spec.generator = HardnessPairs{HardnessMode::kU};
  } else if (a.generator == "hardness-v") {
    spec.generator = HardnessPairs{HardnessMode::kV};
  } else {
    throw UsageError("--generator must be uniform, separable, hardness-u or hardness-v");
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const SyntheticData data = generate_dataset(spec);
  if (data.handle && a.handle_out.empty()) {
    throw UsageError("hardness generators need --handle-out for the metric handle");
  }
  if (a.data_out.empty()) throw UsageError("--data-out is required");
  write_dataset_csv(data.dataset, a.data_out);
  if (data.handle) write_text(dump(to_json(*data.handle)), a.handle_out, out);

  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "gen-data";
  j["generator"] = a.generator;
  j["n"] = a.n;
  j["m"] = a.m;
  j["seed"] = spec.seed;
  j["data"] = a.data_out;
  if (data.w_star) j["w_star"] = *data.w_star;
  if (data.handle) j["handle"] = a.handle_out;
  stamp(j, a.common);
  write_text(dump(j), a.common.out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  Common common;
  std::string data;
  std::string metric;
  std::string config;
  std::string matching = "random";
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  const LabeledDataset sample = read_dataset_csv(a.data);
  const SimilarityMetric d = parse_metric_spec(a.metric);
  TrainConfig config = a.config.empty() ? TrainConfig{} : train_config_from_json(read_json_file(a.config));
  const std::uint64_t seed = require_seed(a.common);
  config.solver.seed = seed;
  const Matching matching = build_matching(sample, parse_matching(a.matching, seed));
  const TrainResult r = config.learner.kind == LearnerKind::kKernel
                            ? train_fair_kernel(sample, d, config, matching)
                            : train_fair_linear(sample, d, config, matching);
  Json j = predictor_to_json(r.predictor);
  j["schema_version"] = kSchemaVersion;
  j["training_config"] = to_json(config);
  j["report"] = to_json(r.report);
  j["matching"] = a.matching;
  j["metric"] = a.metric;
  stamp(j, a.common);
  write_text(dump(j), a.common.out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AuditArgs {
  Common common;
  std::string data;
  std::string predictor;
  std::string metric;
  double gamma = 0.1;
  std::string matching = "random";
  std::string population = "empirical";
  std::size_t population_pairs = 10000;
  std::vector<std::string> alpha2;
};

int cmd_audit(const AuditArgs& a, std::ostream& out) {
  const LabeledDataset sample = read_dataset_csv(a.data);
  const SimilarityMetric d = parse_metric_spec(a.metric);
  const Predictor h = predictor_from_json(read_json_file(a.predictor));
  if (!(a.gamma >= 0.0 && a.gamma < 1.0)) throw UsageError("--gamma must lie in [0, 1)");

  const bool needs_seed = a.matching == "random" || a.population_pairs > 0;
  const std::uint64_t seed = needs_seed ? require_seed(a.common) : a.common.seed.value_or(0);
  const Matching matching = build_matching(sample, parse_matching(a.matching, seed));

  AuditOptions opt;
  opt.gamma = a.gamma;
  opt.population_pairs = a.population_pairs;
  opt.seed = seed;
  opt.threads = a.common.threads;
  for (const auto& s : a.alpha2) opt.alpha2_grid.push_back(parse_number(s, "--alpha2"));

  ExampleSampler sampler;
  if (a.population == "empirical") {
    sampler = [&sample](Rng& rng) { return sample[uniform_index(rng, sample.size())]; };
  } else if (a.population == "uniform") {
    const std::size_t n = sample.dimension();
    sampler = [n](Rng& rng) {
      Example e{uniform_in_ball(rng, n), 0, std::nullopt};
      e.label = random_sign(rng);
      return e;
    };
  } else {
    throw UsageError("--population must be empirical or uniform");
  }

  const FairnessReport r = audit(h, sample, matching, d, opt, &sampler);
  Json j = to_json(r);
  j["command"] = "audit";
  j["predictor_variant"] = h.variant_name();
  j["metric"] = a.metric;
  j["matching"] = a.matching;
  j["population"] = a.population;
  stamp(j, a.common);
  write_text(dump(j), a.common.out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
  Common common;
  std::vector<std::string> formulas;
  double g = 1.0, delta = 0.05, m = 0.0, rhat = 0.0, c = 1.0, sup_m = 1.0, b = 1.0;
  double l = 3.0, eps = 0.1, eps_star = 0.0, alpha = 0.1, eps_alpha = 0.1, eps_gamma = 0.1;
  double m_pac = 1.0;
  std::string data;
  std::string kernel = "vovk_half";
  std::size_t draws = 10000;
  bool json = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  if (a.formulas.empty()) throw UsageError("pass at least one --formula");
  Json results = Json::object();
  std::ostringstream table;
  table << std::setprecision(10);
  auto need_m = [&]() {
    if (!(a.m >= 2.0)) throw UsageError("--m is required (>= 2) for this formula");
  };
  for (const auto& f : a.formulas) {
    if (f == "delta-m") {
      need_m();
      const double v = mf_generalization_delta(a.g, a.delta, a.m, a.rhat);
      results[f] = v;
      table << f << '\t' << v << '\n';
    } else if (f == "kernel-delta") {
      need_m();
      const double v = kernel_ball_delta(a.g, a.delta, a.m, a.c, a.sup_m);
      results[f] = v;
      table << f << '\t' << v << '\n';
    } else if (f == "rho-linear") {
      need_m();
      const double v = linear_rho(a.g, a.delta, a.m);
      results[f] = v;
      table << f << '\t' << v << '\n';
    } else if (f == "rho-kernel") {
      need_m();
      const double v = kernel_rho(a.g, a.delta, a.m, a.b);
      results[f] = v;
      table << f << '\t' << v << '\n';
    } else if (f == "kernel-b") {
      const double es = a.eps_star > 0.0 ? a.eps_star : sigmoid_eps_star(a.eps, a.eps_alpha, a.eps_gamma);
      const KernelNormBound v = kernel_norm_bound_b(a.l, es);
      results[f] = {{"value", std::isfinite(v.value) ? Json(v.value) : Json(nullptr)},
                    {"overflow", v.overflow},
                    {"eps_star", es}};
      table << f << '\t' << v.value << (v.overflow ? "\t(overflow)" : "") << '\n';
    } else if (f == "lin-accuracy") {
      const LinAccuracyTerms t = lin_accuracy_terms(a.eps, a.alpha, a.eps_alpha, a.eps_gamma, a.delta);
      const SampleComplexity s =
          lin_accuracy_sample_complexity(a.eps, a.alpha, a.eps_alpha, a.eps_gamma, a.delta);
      Json j = to_json(s);
      j["utility_branch"] = t.utility_branch;
      j["fairness_branch"] = t.fairness_branch;
      results[f] = j;
      table << f << '\t' << s.m << "\t(utility " << t.utility_branch << ", fairness "
            << t.fairness_branch << ")\n";
    } else if (f == "sigmoid-accuracy") {
      const SampleComplexity s = sigmoid_accuracy_sample_complexity(
          a.eps, a.alpha, a.eps_alpha, a.eps_gamma, a.delta, a.l);
      results[f] = to_json(s);
      table << f << '\t' << s.m << '\t' << s.dominant << '\n';
    } else if (f == "inf-fpac") {
      const double r = a.rhat;
      const SampleComplexity s = inf_fpac_sample_complexity(
          a.m_pac, a.eps_alpha, a.eps_gamma, a.delta, [r](double) { return r; });
      results[f] = to_json(s);
      table << f << '\t' << s.m << '\t' << s.dominant << '\n';
    } else if (f == "rademacher") {
      if (a.data.empty()) throw UsageError("rademacher needs --data");
      const LabeledDataset sample = read_dataset_csv(a.data);
      KernelSpec spec;
      const KernelKind kind = parse_kernel_kind(a.kernel);
      if (kind == KernelKind::kVovkHalf) {
        spec = KernelSpec::vovk_half();
      } else if (kind == KernelKind::kLinearDot) {
        spec = KernelSpec::linear_dot();
      } else {
        throw UsageError("rademacher supports vovk_half and linear_dot kernels");
      }
      const RademacherEstimate e = empirical_rademacher_kernel_ball(
          gram_matrix(sample, spec), a.c, a.draws, require_seed(a.common));
      results[f] = to_json(e);
      table << f << '\t' << e.value << "\t+-" << e.mc_half_width << '\n';
    } else {
      throw UsageError("unknown formula '" + f +
                       "' (delta-m, kernel-delta, rho-linear, rho-kernel, kernel-b, "
                       "lin-accuracy, sigmoid-accuracy, inf-fpac, rademacher)");
    }
  }
  if (a.json || !a.common.out_path.empty()) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "bounds";
    j["inputs"] = {{"G", a.g},         {"delta", a.delta},     {"m", a.m},
                   {"r_hat", a.rhat},  {"C", a.c},             {"M", a.sup_m},
                   {"B", a.b},         {"L", a.l},             {"eps", a.eps},
                   {"alpha", a.alpha}, {"eps_alpha", a.eps_alpha}, {"eps_gamma", a.eps_gamma},
                   {"m_pac", a.m_pac}};
    j["results"] = results;
    stamp(j, a.common);
    write_text(dump(j), a.common.out_path, out);
  }
  if (!a.json) out << table.str();
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct HardnessArgs {
  Common common;
  std::size_t n = 32;
  std::size_t pairs = 500;
  std::string mode = "both";
  std::string config;
  std::size_t train_pairs = 0;
  std::size_t audit_pairs = 10000;
  std::string learners = "linear,kernel";
};

int cmd_hardness(const HardnessArgs& a, std::ostream& out) {
  HardnessOptions opt;
  opt.n = a.n;
  opt.k_pairs = a.pairs;
  opt.seed = require_seed(a.common);
  opt.audit_pairs = a.audit_pairs;
  opt.train_pairs = a.train_pairs;
  if (!a.config.empty()) opt.trainer = train_config_from_json(read_json_file(a.config));
  opt.trainer.solver.seed = opt.seed;
  opt.train_linear = a.learners.find("linear") != std::string::npos;
  opt.train_kernel = a.learners.find("kernel") != std::string::npos;
  if (a.learners != "none" && !opt.train_linear && !opt.train_kernel) {
    throw UsageError("--learners takes linear, kernel, linear,kernel or none");
  }
  bool run_u = true, run_v = true;
  if (a.mode == "u") {
    run_v = false;
  } else if (a.mode == "v") {
    run_u = false;
  } else if (a.mode != "both") {
    throw UsageError("--mode must be u, v or both");
  }
  Json j = to_json(run_hardness_experiment(opt, run_u, run_v));
  j["command"] = "hardness-demo";
  stamp(j, a.common);
  write_text(dump(j), a.common.out_path, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  Common common;
  std::string data;
  std::string metric;
  std::size_t triples = 10000;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const LabeledDataset sample = read_dataset_csv(a.data);
  const SimilarityMetric d = parse_metric_spec(a.metric);
  const ValidationReport r = validate_metric(d, sample, a.triples, require_seed(a.common));
  Json j = to_json(r);
  j["command"] = "validate-metric";
  j["metric"] = a.metric;
  stamp(j, a.common);
  write_text(dump(j), a.common.out_path, out);
  return kExitOk;
}

}  // namespace

SimilarityMetric parse_metric_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw UsageError("metric spec must look like kind:argument, got '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "constant") return SimilarityMetric::constant(parse_number(arg, "constant metric"));
  if (kind == "euclidean") return SimilarityMetric::euclidean(parse_number(arg, "euclidean metric"));
  if (kind == "matrix") {
    return SimilarityMetric::precomputed(read_distance_matrix(arg, arg + ".index"));
  }
  if (kind == "hardness") {
    return SimilarityMetric::hardness(
        std::make_shared<const HardnessMetricHandle>(handle_from_json(read_json_file(arg))));
  }
  throw UsageError("unknown metric kind '" + kind + "' (constant, euclidean, matrix, hardness)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate metric-fairness: audits, fair learners, bounds."};
  app.name("pacf");
  app.require_subcommand(1);

  GenDataArgs gen;
  auto* c_gen = app.add_subcommand("gen-data", "Generate a synthetic dataset CSV");
  add_common(c_gen, gen.common);
  c_gen->add_option("--generator", gen.generator, "uniform | separable | hardness-u | hardness-v");
  c_gen->add_option("--n", gen.n, "Dimension");
  c_gen->add_option("--m", gen.m, "Sample size");
  c_gen->add_option("--margin", gen.margin, "Separable margin in (0, 1]");
  c_gen->add_option("--noise", gen.noise, "Label flip rate in [0, 1)");
  c_gen->add_option("--data-out", gen.data_out, "Dataset CSV path")->required();
  c_gen->add_option("--handle-out", gen.handle_out, "Hardness metric handle path");

  TrainArgs tr;
  auto* c_tr = app.add_subcommand("train", "Train a fairness-constrained predictor");
  add_common(c_tr, tr.common);
  c_tr->add_option("--data", tr.data, "Dataset CSV")->required();
  c_tr->add_option("--metric", tr.metric, "Metric spec")->required();
  c_tr->add_option("--config", tr.config, "Training config JSON");
  c_tr->add_option("--matching", tr.matching, "consecutive | random");

  AuditArgs au;
  auto* c_au = app.add_subcommand("audit", "Audit a predictor's metric-fairness");
  add_common(c_au, au.common);
  c_au->add_option("--data", au.data, "Dataset CSV")->required();
  c_au->add_option("--predictor", au.predictor, "Predictor JSON")->required();
  c_au->add_option("--metric", au.metric, "Metric spec")->required();
  c_au->add_option("--gamma", au.gamma, "Fairness slack");
  c_au->add_option("--matching", au.matching, "consecutive | random");
  c_au->add_option("--population", au.population, "empirical | uniform");
  c_au->add_option("--population-pairs", au.population_pairs, "Monte-Carlo pairs (0 skips)");
  c_au->add_option("--alpha2", au.alpha2, "Group-profile grid values")->delimiter(',');

  BoundsArgs bo;
  auto* c_bo = app.add_subcommand("bounds", "Evaluate generalization bounds and sample complexities");
  add_common(c_bo, bo.common);
  c_bo->add_option("--formula", bo.formulas, "Formula name (repeatable)");
  c_bo->add_option("--g", bo.g, "Surrogate Lipschitz constant G");
  c_bo->add_option("--delta", bo.delta, "Failure probability");
  c_bo->add_option("--m", bo.m, "Sample size");
  c_bo->add_option("--rhat", bo.rhat, "Empirical Rademacher complexity");
  c_bo->add_option("--c", bo.c, "Norm bound C");
  c_bo->add_option("--sup-m", bo.sup_m, "Kernel sup value M");
  c_bo->add_option("--b", bo.b, "Squared RKHS norm bound B");
  c_bo->add_option("--l", bo.l, "Sigmoid Lipschitz bound L");
  c_bo->add_option("--eps", bo.eps, "Accuracy slack");
  c_bo->add_option("--eps-star", bo.eps_star, "eps* (default min{eps, eps_alpha, eps_gamma/2})");
  c_bo->add_option("--alpha", bo.alpha, "Fairness rate alpha");
  c_bo->add_option("--eps-alpha", bo.eps_alpha, "Fairness-rate slack");
  c_bo->add_option("--eps-gamma", bo.eps_gamma, "Fairness-margin slack");
  c_bo->add_option("--m-pac", bo.m_pac, "PAC sample complexity");
  c_bo->add_option("--data", bo.data, "Dataset CSV for the Rademacher estimate");
  c_bo->add_option("--kernel", bo.kernel, "vovk_half | linear_dot");
  c_bo->add_option("--draws", bo.draws, "Monte-Carlo sign draws");
  c_bo->add_flag("--json", bo.json, "Print the JSON report instead of the table");

  HardnessArgs ha;
  auto* c_ha = app.add_subcommand("hardness-demo", "Run the U/V hardness experiment");
  add_common(c_ha, ha.common);
  c_ha->add_option("--n", ha.n, "Dimension (>= 4)");
  c_ha->add_option("--pairs", ha.pairs, "Counterpart pairs");
  c_ha->add_option("--mode", ha.mode, "u | v | both");
  c_ha->add_option("--config", ha.config, "Training config JSON for the learners");
  c_ha->add_option("--train-pairs", ha.train_pairs, "Pairs used for training (0 = all)");
  c_ha->add_option("--audit-pairs", ha.audit_pairs, "Pairs audited for the reference classifier");
  c_ha->add_option("--learners", ha.learners, "linear,kernel | linear | kernel | none");

  ValidateArgs va;
  auto* c_va = app.add_subcommand("validate-metric", "Check metric axioms on sampled triples");
  add_common(c_va, va.common);
  c_va->add_option("--data", va.data, "Dataset CSV")->required();
  c_va->add_option("--metric", va.metric, "Metric spec")->required();
  c_va->add_option("--triples", va.triples, "Triples to sample");

  std::vector<const char*> argv{"pacf"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_gen->parsed()) return cmd_gen_data(gen, out);
    if (c_tr->parsed()) return cmd_train(tr, out);
    if (c_au->parsed()) return cmd_audit(au, out);
    if (c_bo->parsed()) return cmd_bounds(bo, out);
    if (c_ha->parsed()) return cmd_hardness(ha, out);
    if (c_va->parsed()) return cmd_validate(va, out);
  } catch (const UsageError& e) {
    err << "pacf: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "pacf: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace pacf::cli
