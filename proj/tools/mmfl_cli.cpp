// Copyright 2026 The mmfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// mmfl: minimax-regret facility location from interval reports.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmfl/core.hpp"
#include "mmfl/dominance.hpp"
#include "mmfl/experiment.hpp"
#include "mmfl/io.hpp"
#include "mmfl/mechanisms.hpp"
#include "mmfl/optimal.hpp"
#include "mmfl/regret.hpp"

namespace {

using nlohmann::json;
using namespace mmfl;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;
constexpr int kExitOracle = 4;

json instance_json(const Instance& inst) {
  return json::parse(instance_to_json(inst));
}

json report_json(const DominanceReport& r) {
  json j = {{"agent", r.agent},
            {"truthful_outcome", r.truthful_outcome},
            {"truthful_regret", r.truthful_regret},
            {"best_deviation_outcome", r.best_deviation_outcome},
            {"best_deviation_regret", r.best_deviation_regret},
            {"gain", r.gain},
            {"violated", r.violated},
            {"deviations_checked", r.deviations_checked}};
  if (r.best_deviation) {
    j["best_deviation"] = {r.best_deviation->a, r.best_deviation->b};
  } else {
    j["best_deviation"] = nullptr;
  }
  return j;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

struct SolveArgs {
  std::string objective = "avg";
  std::string instance;
  std::optional<double> oracle_step;
};

int run_solve(const SolveArgs& args) {
  const Instance inst = load_instance(args.instance);
  const Objective obj = parse_objective(args.objective);
  const SolveResult r = solve_minimax(inst, obj);
  json out = {{"objective", std::string(to_string(obj))},
              {"p_opt", r.p_opt},
              {"omv", r.omv},
              {"obj1", r.certificate.obj1},
              {"obj2", r.certificate.obj2}};
  if (args.oracle_step) {
    BruteForceOptions opts;
    opts.step = *args.oracle_step;
    out["oracle_max_regret"] = brute_force_max_regret(inst, r.p_opt, obj, opts);
  }
  print(out);
  return kExitOk;
}

struct MechanismArgs {
  std::string kind;
  std::string instance;
  std::string objective = "avg";
};

int run_mechanism_cmd(const MechanismArgs& args) {
  const Instance inst = load_instance(args.instance);
  const Objective obj = parse_objective(args.objective);
  const MechanismSpec spec = parse_mechanism(args.kind, inst.B(), inst.delta());
  const MechanismOutcome o = run_mechanism(spec, inst);
  const double reg = max_regret(inst, o.p, obj).value;
  const double omv = solve_minimax(inst, obj).omv;
  print({{"mechanism", spec.name()},
         {"objective", std::string(to_string(obj))},
         {"p", o.p},
         {"representatives", o.representatives},
         {"max_regret", reg},
         {"omv", omv},
         {"gap", reg - omv},
         {"bound", approximation_bound(spec, obj)}});
  return kExitOk;
}

struct AuditArgs {
  std::string kind;
  std::string instance;
  std::optional<double> pitch;
  std::optional<std::size_t> agent;
  double tolerance = kDefaultAuditTolerance;
  bool strict = false;
};

int run_audit(const AuditArgs& args) {
  const Instance inst = load_instance(args.instance);
  const MechanismSpec spec = parse_mechanism(args.kind, inst.B(), inst.delta());
  double pitch = args.pitch.value_or(spec.delta / 20.0);
  if (!(pitch > 0.0)) pitch = inst.B() / 100.0;
  const DeviationGrid grid = DeviationGrid::for_audit(spec, inst, pitch);

  std::vector<std::size_t> agents;
  if (args.agent) {
    agents.push_back(*args.agent);
  } else {
    for (std::size_t i = 0; i < inst.size(); ++i) agents.push_back(i);
  }
  json reports = json::array();
  bool any = false;
  for (std::size_t i : agents) {
    const DominanceReport r =
        check_minimax_dominance(spec, inst, i, grid, args.tolerance);
    any = any || r.violated;
    reports.push_back(report_json(r));
  }
  print({{"mechanism", spec.name()},
         {"pitch", pitch},
         {"violated", any},
         {"reports", reports}});
  return args.strict && any ? kExitViolation : kExitOk;
}

struct AttackArgs {
  std::string family;
  std::size_t n = 5;
  double B = 1.0;
  double delta = 0.2;
  double eps = 0.05;
  double eps1 = 0.01;
  std::vector<double> g;
  double gamma = 0.002;
  std::string ladder = "one";
  double y_j = 0.2;
  double ell = 0.3;
  double r = 0.38;
  std::optional<double> spacing;
  std::optional<std::string> kind;
  std::string objective = "avg";
};

int run_attack(const AttackArgs& args) {
  AdversarialScript script;
  if (args.family == "vwd-chain") {
    script = gen_vwd_chain(args.n, args.B, args.delta, args.eps, args.eps1);
  } else if (args.family == "finite-range") {
    if (args.g.size() != 4) {
      throw ValidationError("--g needs exactly four increasing points");
    }
    LadderCase which;
    if (args.ladder == "one") {
      which = LadderCase::One;
    } else if (args.ladder == "two") {
      which = LadderCase::Two;
    } else {
      throw ValidationError("--case must be 'one' or 'two'");
    }
    script = gen_finite_range_attack({args.g[0], args.g[1], args.g[2], args.g[3]},
                                     args.gamma, args.n, which, args.B,
                                     args.delta);
  } else if (args.family == "onto") {
    script = gen_onto_attack(args.y_j, args.ell, args.r, args.eps, args.n,
                             args.B, args.delta);
  } else if (args.family == "fine-grid") {
    script = gen_fine_grid_attack(args.B, args.delta,
                                  args.spacing.value_or(args.delta / 4.0));
  } else {
    throw ValidationError("unknown attack family '" + args.family + "'");
  }

  json out = {{"family", to_string(script.family)},
              {"expected_property", script.expected_property},
              {"params", script.params},
              {"focus_agents", script.focus_agents}};
  json instances = json::array();
  for (const auto& inst : script.instances) instances.push_back(instance_json(inst));
  out["instances"] = instances;

  if (args.kind) {
    const Objective obj = parse_objective(args.objective);
    const MechanismSpec spec = parse_mechanism(*args.kind, args.B, args.delta);
    json eval = json::array();
    for (const auto& inst : script.instances) {
      const double p = run_mechanism(spec, inst).p;
      const double reg = max_regret(inst, p, obj).value;
      const double omv = solve_minimax(inst, obj).omv;
      eval.push_back({{"p", p}, {"max_regret", reg}, {"omv", omv},
                      {"gap", reg - omv}});
    }
    out["mechanism"] = spec.name();
    out["objective"] = std::string(to_string(obj));
    out["evaluation"] = eval;
  }
  print(out);
  return kExitOk;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  const ExperimentConfig config = load_config(args.config);
  const auto rows = run_experiment(config);
  if (args.out.empty() || args.out == "-") {
    write_csv(std::cout, rows);
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + args.out + "'");
    write_csv(f, rows);
  }
  return kExitOk;
}

struct GenArgs {
  std::size_t n = 3;
  double B = 1.0;
  double delta = 0.2;
  std::uint64_t seed = 1;
};

int run_gen(const GenArgs& args) {
  Rng rng(args.seed);
  std::cout << instance_to_json(random_instance(args.n, args.B, args.delta, rng))
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax-regret facility location for interval reports"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "minimax-optimal location");
  solve_cmd->add_option("--objective", solve.objective, "avg or max");
  solve_cmd->add_option("--instance", solve.instance, "instance JSON")->required();
  solve_cmd->add_option("--oracle-step", solve.oracle_step,
                        "cross-check p_opt by brute force at this pitch");

  MechanismArgs mech;
  auto* mech_cmd = app.add_subcommand("mechanism", "run a mechanism");
  mech_cmd->add_option("--kind", mech.kind, "mechanism name")->required();
  mech_cmd->add_option("--instance", mech.instance, "instance JSON")->required();
  mech_cmd->add_option("--objective", mech.objective, "avg or max");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "minimax-dominance deviation search");
  audit_cmd->add_option("--kind", audit.kind, "mechanism name")->required();
  audit_cmd->add_option("--instance", audit.instance, "instance JSON")->required();
  audit_cmd->add_option("--pitch", audit.pitch, "deviation endpoint pitch (default delta/20)");
  audit_cmd->add_option("--agent", audit.agent, "audit one agent only");
  audit_cmd->add_option("--tolerance", audit.tolerance, "violation threshold");
  audit_cmd->add_flag("--strict", audit.strict, "exit 3 when a violation is found");

  AttackArgs attack;
  auto* attack_cmd = app.add_subcommand("attack", "emit an adversarial profile family");
  attack_cmd->add_option("--family", attack.family,
                         "vwd-chain, finite-range, onto or fine-grid")
      ->required();
  attack_cmd->add_option("--n", attack.n, "agents");
  attack_cmd->add_option("--B", attack.B, "domain bound");
  attack_cmd->add_option("--delta", attack.delta, "interval length bound");
  attack_cmd->add_option("--eps", attack.eps, "vwd-chain / onto epsilon");
  attack_cmd->add_option("--eps1", attack.eps1, "vwd-chain overlap");
  attack_cmd->add_option("--g", attack.g, "finite-range: four range points")->delimiter(',');
  attack_cmd->add_option("--gamma", attack.gamma, "finite-range shrink");
  attack_cmd->add_option("--case", attack.ladder, "finite-range: one or two");
  attack_cmd->add_option("--yj", attack.y_j, "onto: left cluster position");
  attack_cmd->add_option("--ell", attack.ell, "onto: interval left end");
  attack_cmd->add_option("--r", attack.r, "onto: interval right end");
  attack_cmd->add_option("--spacing", attack.spacing, "fine-grid: grid spacing");
  attack_cmd->add_option("--kind", attack.kind, "evaluate this mechanism on each profile");
  attack_cmd->add_option("--objective", attack.objective, "avg or max");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "batch comparison, CSV output");
  exp_cmd->add_option("--config", exp.config, "config JSON")->required();
  exp_cmd->add_option("--out", exp.out, "CSV path (default stdout)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "seeded random instance");
  gen_cmd->add_option("--n", gen.n, "agents");
  gen_cmd->add_option("--B", gen.B, "domain bound");
  gen_cmd->add_option("--delta", gen.delta, "interval length bound");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*mech_cmd) return run_mechanism_cmd(mech);
    if (*audit_cmd) return run_audit(audit);
    if (*attack_cmd) return run_attack(attack);
    if (*exp_cmd) return run_experiment_cmd(exp);
    if (*gen_cmd) return run_gen(gen);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const OracleScaleExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
