// Copyright 2026 The gossipdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gossipdp/experiment.hpp"
#include "gossipdp/metrics.hpp"
#include "gossipdp/privacy.hpp"
#include "gossipdp/topology.hpp"
#include "gossipdp/util.hpp"

namespace {

int cmd_run(const std::string& spec_path, const std::string& output,
            int workers, long long seed0, int seeds) {
  gossipdp::ExperimentSpec spec = gossipdp::parse_spec_file(spec_path);
  if (!output.empty()) spec.output_dir = output;
  if (workers > 0) spec.workers = workers;
  if (seed0 >= 0) spec.seed0 = static_cast<std::uint64_t>(seed0);
  if (seeds > 0) spec.seeds = seeds;
  const gossipdp::ExperimentResult result = gossipdp::run_experiment(spec);
  std::cout << "experiment " << gossipdp::to_string(result.spec.kind)
            << ": " << result.entries.size() << " jobs, summary at "
            << result.summary_path << "\n";
  for (const auto& cell : result.cells) {
    std::cout << "  " << cell.label;
    if (!std::isnan(cell.mean_final_normalized_regret))
      std::cout << "  mean normalized regret "
                << gossipdp::format_g(cell.mean_final_normalized_regret)
                << " (std "
                << gossipdp::format_g(cell.std_final_normalized_regret) << ")";
    if (!std::isnan(cell.mean_accuracy))
      std::cout << "  mean accuracy "
                << gossipdp::format_g(cell.mean_accuracy);
    if (!std::isnan(cell.regret_bound))
      std::cout << "  bound " << gossipdp::format_g(cell.regret_bound);
    if (!std::isnan(cell.audit_max_ratio))
      std::cout << "  max ratio " << gossipdp::format_g(cell.audit_max_ratio)
                << (cell.audit_pass ? " (pass)" : " (FAIL)");
    std::cout << "\n";
  }
  if (!result.all_ok) {
    std::cerr << "some cells failed; see " << result.manifest_path << "\n";
    return 1;
  }
  return 0;
}

int cmd_audit(int n, int m, long long rounds, const std::string& loss,
              double lambda, double radius, int batch, int trials,
              long long seed, const std::string& output) {
  gossipdp::AuditConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.rounds = rounds;
  cfg.loss = loss == "logistic"
                 ? gossipdp::LossModel::logistic_loss(lambda, radius)
                 : gossipdp::LossModel::hinge_loss(lambda, radius);
  cfg.set.radius = radius;
  cfg.steps = lambda > 0.0
                  ? gossipdp::StepsizeSchedule::strongly_convex(lambda)
                  : gossipdp::StepsizeSchedule::convex();
  cfg.batch_size = batch;
  cfg.trials = trials;
  cfg.seed = static_cast<std::uint64_t>(seed);
  const gossipdp::AuditReport report = gossipdp::audit_sensitivity(cfg);
  if (output.empty()) {
    report.write_csv(std::cout);
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot open '" << output << "'\n";
      return 1;
    }
    report.write_csv(out);
  }
  std::cerr << "audit " << (report.pass ? "pass" : "FAIL") << ": max ratio "
            << gossipdp::format_g17(report.max_ratio) << " over "
            << report.trials.size() << " trials\n";
  return report.pass ? 0 : 1;
}

int cmd_bounds(const std::string& kind, int m, long long T, int n, double L,
               double lambda, double R, double epsilon_value, double eta,
               int window, int h, double gamma, double regret) {
  gossipdp::CommSchedule schedule;
  schedule.m = m;
  schedule.eta = eta;
  schedule.window = window > 0 ? window : m;
  const gossipdp::ConsensusRate rate = gossipdp::consensus_rate(schedule);
  gossipdp::BoundInputs inputs;
  inputs.m = m;
  inputs.T = T;
  inputs.n = n;
  inputs.L = L;
  inputs.lambda = lambda;
  inputs.R = R;
  inputs.epsilon = epsilon_value;
  inputs.theta = rate.theta;
  inputs.beta = rate.beta;
  inputs.h = h;
  inputs.gamma = gamma;
  const auto schedule_kind =
      kind == "convex" ? gossipdp::StepsizeSchedule::Kind::convex
                       : gossipdp::StepsizeSchedule::Kind::strongly_convex;
  std::cout << "quantity,value\n";
  std::cout << "theta," << gossipdp::format_g17(rate.theta) << "\n";
  std::cout << "beta," << gossipdp::format_g17(rate.beta) << "\n";
  std::cout << "regret_bound,"
            << gossipdp::format_g17(gossipdp::theorem2_bound(inputs,
                                                             schedule_kind))
            << "\n";
  if (regret >= 0.0 && lambda > 0.0) {
    std::cout << "utility_bound,"
              << gossipdp::format_g17(
                     gossipdp::offline_utility_bound(inputs, regret))
              << "\n";
  }
  return 0;
}

int cmd_validate_topology(const std::string& mode, int m, double eta,
                          int window, long long seed, long long rounds,
                          const std::string& dump) {
  gossipdp::CommSchedule schedule;
  schedule.m = m;
  schedule.eta = eta;
  schedule.window = window > 0 ? window : m;
  schedule.seed = static_cast<std::uint64_t>(seed);
  schedule.mode = gossipdp::schedule_mode_from_string(mode);
  bool ok = true;
  for (long long t = 0; t < rounds; ++t) {
    const gossipdp::Mat a = gossipdp::generate_matrix(schedule, t);
    const gossipdp::MatrixValidation report =
        gossipdp::validate_matrix(a, schedule.eta);
    if (!report.pass()) {
      std::cerr << "round " << t << ": " << report.summary() << "\n";
      ok = false;
    }
  }
  for (long long t = 0; t + schedule.window <= rounds; ++t) {
    if (!gossipdp::check_connectivity(schedule, t)) {
      std::cerr << "window starting at " << t << ": not strongly connected\n";
      ok = false;
    }
  }
  const gossipdp::ConsensusRate rate = gossipdp::consensus_rate(schedule);
  std::cout << "checked " << rounds << " rounds: "
            << (ok ? "all matrices valid, all windows connected"
                   : "FAILURES found")
            << " (theta " << gossipdp::format_g(rate.theta) << ", beta "
            << gossipdp::format_g(rate.beta) << ")\n";
  if (!dump.empty() && rounds > 0) {
    gossipdp::save_schedule(schedule, 0, rounds - 1, dump);
    std::cout << "schedule written to " << dump << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gossipdp: differentially private distributed online learning "
      "simulator"};
  app.require_subcommand(1);

  // run
  std::string spec_path, output;
  int workers = 0, seeds = 0;
  long long seed0 = -1;
  CLI::App* run = app.add_subcommand("run", "execute an experiment spec file");
  run->add_option("spec", spec_path, "key=value spec file")->required();
  run->add_option("--output", output, "override the output directory");
  run->add_option("--workers", workers, "worker threads");
  run->add_option("--seed0", seed0, "first run seed");
  run->add_option("--seeds", seeds, "number of seeded repetitions");

  // audit
  int audit_n = 8, audit_m = 1, audit_batch = 1, audit_trials = 1000;
  long long audit_rounds = 50, audit_seed = 0;
  double audit_lambda = 0.0, audit_radius = 1.0;
  std::string audit_loss = "hinge", audit_output;
  CLI::App* audit =
      app.add_subcommand("audit", "empirical sensitivity audit (CSV report)");
  audit->add_option("--n", audit_n, "dimension (<= 8)");
  audit->add_option("--m", audit_m, "learners (<= 3)");
  audit->add_option("--rounds", audit_rounds, "round range (<= 50)");
  audit->add_option("--loss", audit_loss, "hinge or logistic");
  audit->add_option("--lambda", audit_lambda, "strong convexity");
  audit->add_option("--radius", audit_radius, "feasible-set radius");
  audit->add_option("--batch", audit_batch, "mini-batch size (1 = online)");
  audit->add_option("--trials", audit_trials, "adjacent-dataset trials");
  audit->add_option("--seed", audit_seed, "audit seed");
  audit->add_option("--output", audit_output, "CSV path (default stdout)");

  // bounds
  std::string bounds_kind = "strongly_convex", bounds_eps = "0.1";
  int bounds_m = 4, bounds_n = 10, bounds_window = 0, bounds_h = 1;
  long long bounds_T = 1000;
  double bounds_L = 1.0, bounds_lambda = 0.1, bounds_R = 2.0, bounds_eta = 0.1,
         bounds_gamma = 0.01, bounds_regret = -1.0;
  CLI::App* bounds =
      app.add_subcommand("bounds", "evaluate the closed-form bounds");
  bounds->add_option("--case", bounds_kind, "strongly_convex or convex");
  bounds->add_option("--m", bounds_m, "learners");
  bounds->add_option("--T", bounds_T, "rounds");
  bounds->add_option("--n", bounds_n, "dimension");
  bounds->add_option("--L", bounds_L, "subgradient bound");
  bounds->add_option("--lambda", bounds_lambda, "strong convexity");
  bounds->add_option("--R", bounds_R, "feasible-set diameter");
  bounds->add_option("--epsilon", bounds_eps, "privacy level (inf = none)");
  bounds->add_option("--eta", bounds_eta, "positive-entry threshold");
  bounds->add_option("--window", bounds_window, "connectivity window");
  bounds->add_option("--h", bounds_h, "mini-batch size");
  bounds->add_option("--gamma", bounds_gamma, "confidence parameter");
  bounds->add_option("--regret", bounds_regret,
                     "empirical regret for the utility bound");

  // validate-topology
  std::string topo_mode = "random_pairwise_gossip", topo_dump;
  int topo_m = 4, topo_window = 0;
  long long topo_seed = 1, topo_rounds = 100;
  double topo_eta = 0.1;
  CLI::App* topo = app.add_subcommand(
      "validate-topology", "validate a schedule's matrices and connectivity");
  topo->add_option("--mode", topo_mode, "schedule mode");
  topo->add_option("--m", topo_m, "learners");
  topo->add_option("--eta", topo_eta, "positive-entry threshold");
  topo->add_option("--window", topo_window, "connectivity window (0 = m)");
  topo->add_option("--seed", topo_seed, "schedule seed");
  topo->add_option("--rounds", topo_rounds, "rounds to check");
  topo->add_option("--dump", topo_dump, "write the schedule to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(spec_path, output, workers, seed0, seeds);
    if (audit->parsed())
      return cmd_audit(audit_n, audit_m, audit_rounds, audit_loss,
                       audit_lambda, audit_radius, audit_batch, audit_trials,
                       audit_seed, audit_output);
    if (bounds->parsed()) {
      const double eps =
          bounds_eps == "inf"
              ? std::numeric_limits<double>::infinity()
              : std::stod(bounds_eps);
      return cmd_bounds(bounds_kind, bounds_m, bounds_T, bounds_n, bounds_L,
                        bounds_lambda, bounds_R, eps, bounds_eta,
                        bounds_window, bounds_h, bounds_gamma, bounds_regret);
    }
    if (topo->parsed())
      return cmd_validate_topology(topo_mode, topo_m, topo_eta, topo_window,
                                   topo_seed, topo_rounds, topo_dump);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
