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

#include "gossipdp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "gossipdp/svg_plot.hpp"
#include "gossipdp/util.hpp"

namespace gossipdp {

namespace fs = std::filesystem;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::privacy_sweep:
      return "privacy_sweep";
    case ExperimentKind::node_sweep:
      return "node_sweep";
    case ExperimentKind::batch_sweep:
      return "batch_sweep";
    case ExperimentKind::svm_accuracy_table:
      return "svm_accuracy_table";
    case ExperimentKind::bounds_compare:
      return "bounds_compare";
    case ExperimentKind::audits:
      return "audits";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "privacy_sweep") return ExperimentKind::privacy_sweep;
  if (name == "node_sweep") return ExperimentKind::node_sweep;
  if (name == "batch_sweep") return ExperimentKind::batch_sweep;
  if (name == "svm_accuracy_table") return ExperimentKind::svm_accuracy_table;
  if (name == "bounds_compare") return ExperimentKind::bounds_compare;
  if (name == "audits") return ExperimentKind::audits;
  throw ConfigError("experiment: unknown kind '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_epsilon_token(const std::string& field, const std::string& tok) {
  if (tok == "inf" || tok == "non-private" || tok == "np")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t end;
    const double v = std::stod(tok, &end);
    if (end != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field + ": bad value '" + tok + "'");
  }
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& field, const std::string& value,
                          Parse parse) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw ConfigError(field + ": empty list element");
    out.push_back(parse(field, tok));
  }
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

}  // namespace

ExperimentSpec parse_spec(std::istream& in, const std::string& name) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) +
                                       ": empty key");
    if (kv.count(key)) throw ConfigError("duplicate field '" + key + "'");
    kv[key] = value;
  }

  ExperimentSpec spec;
  spec.name = name;
  const auto take = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  const auto parse_int = [&](const char* key, auto& field) {
    if (const auto* v = take(key)) {
      try {
        field = static_cast<std::remove_reference_t<decltype(field)>>(
            std::stoll(*v));
      } catch (const std::exception&) {
        throw ConfigError(std::string(key) + ": bad value '" + *v + "'");
      }
    }
  };
  const auto parse_double = [&](const char* key, double& field) {
    if (const auto* v = take(key)) {
      try {
        field = std::stod(*v);
      } catch (const std::exception&) {
        throw ConfigError(std::string(key) + ": bad value '" + *v + "'");
      }
    }
  };
  const auto parse_string = [&](const char* key, std::string& field) {
    if (const auto* v = take(key)) field = *v;
  };

  if (const auto* v = take("experiment"))
    spec.kind = experiment_kind_from_string(*v);
  else
    throw ConfigError("experiment: field is required");

  parse_string("output", spec.output_dir);
  parse_int("workers", spec.workers);
  parse_int("seeds", spec.seeds);
  parse_int("seed0", spec.seed0);
  parse_string("data", spec.data_source);
  parse_int("count", spec.count);
  parse_double("margin", spec.margin);
  parse_int("data_seed", spec.data_seed);
  parse_string("path", spec.data_path);
  parse_int("dim_cap", spec.dim_cap);
  parse_double("holdout", spec.holdout);
  parse_int("n", spec.n);
  if (const auto* v = take("loss")) {
    if (*v == "hinge")
      spec.loss_kind = LossKind::hinge;
    else if (*v == "logistic")
      spec.loss_kind = LossKind::logistic;
    else
      throw ConfigError("loss: bad value '" + *v + "'");
  }
  parse_double("lambda", spec.lambda);
  parse_double("lipschitz", spec.lipschitz);
  parse_string("stepsize", spec.stepsize_kind);
  parse_double("radius", spec.radius);
  parse_int("m", spec.m);
  parse_int("rounds", spec.rounds);
  if (const auto* v = take("epsilon"))
    spec.epsilon = parse_epsilon_token("epsilon", *v);
  if (const auto* v = take("topology")) {
    try {
      spec.mode = schedule_mode_from_string(*v);
    } catch (const std::exception&) {
      throw ConfigError("topology: bad value '" + *v + "'");
    }
  }
  parse_double("eta", spec.eta);
  parse_int("window", spec.window);
  parse_int("h", spec.h);
  parse_double("phi_reg", spec.phi_reg);
  parse_string("regularize_at", spec.regularize_at);
  if (const auto* v = take("epsilon_sweep"))
    spec.epsilon_sweep =
        parse_list<double>("epsilon_sweep", *v, parse_epsilon_token);
  if (const auto* v = take("m_sweep"))
    spec.m_sweep = parse_list<int>(
        "m_sweep", *v, [](const std::string& field, const std::string& tok) {
          try {
            return std::stoi(tok);
          } catch (const std::exception&) {
            throw ConfigError(field + ": bad value '" + tok + "'");
          }
        });
  if (const auto* v = take("h_sweep"))
    spec.h_sweep = parse_list<int>(
        "h_sweep", *v, [](const std::string& field, const std::string& tok) {
          try {
            return std::stoi(tok);
          } catch (const std::exception&) {
            throw ConfigError(field + ": bad value '" + tok + "'");
          }
        });
  parse_double("gamma", spec.gamma);
  parse_int("audit_trials", spec.audit_trials);
  parse_string("record_csv", spec.record_csv);
  parse_int("reference", spec.reference);

  static const char* known[] = {
      "experiment", "output",   "workers",       "seeds",       "seed0",
      "data",       "count",    "margin",        "data_seed",   "path",
      "dim_cap",    "holdout",  "n",             "loss",        "lambda",
      "lipschitz",  "stepsize", "radius",        "m",           "rounds",
      "epsilon",    "topology", "eta",           "window",      "h",
      "phi_reg",    "regularize_at", "epsilon_sweep", "m_sweep", "h_sweep",
      "gamma",      "audit_trials",  "record_csv",    "reference"};
  for (const auto& [key, value] : kv) {
    (void)value;
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw ConfigError("unknown field '" + key + "'");
  }

  if (spec.seeds < 1) throw ConfigError("seeds: must be >= 1");
  if (spec.workers < 1) throw ConfigError("workers: must be >= 1");
  if (spec.record_csv != "full" && spec.record_csv != "reference" &&
      spec.record_csv != "none")
    throw ConfigError("record_csv: bad value '" + spec.record_csv + "'");
  if (spec.regularize_at != "local" && spec.regularize_at != "averaged")
    throw ConfigError("regularize_at: bad value '" + spec.regularize_at + "'");
  if (spec.stepsize_kind != "auto" && spec.stepsize_kind != "strongly_convex" &&
      spec.stepsize_kind != "convex")
    throw ConfigError("stepsize: bad value '" + spec.stepsize_kind + "'");
  if (spec.data_source != "synthetic" && spec.data_source != "sparse")
    throw ConfigError("data: bad value '" + spec.data_source + "'");
  if (spec.data_source == "sparse" && spec.data_path.empty())
    throw ConfigError("path: required when data=sparse");
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file '" + path + "'");
  return parse_spec(in, fs::path(path).stem().string());
}

namespace {

struct Cell {
  std::string label;
  double epsilon = std::numeric_limits<double>::infinity();
  int m = 1;
  int h = 1;
  std::int64_t rounds = 0;
  bool offline = false;
  bool need_regret = false;
  bool need_accuracy = false;
};

struct JobOutcome {
  bool ok = false;
  std::string status;
  double final_norm_regret = kNoValue;
  double final_cum_regret = kNoValue;
  double accuracy = kNoValue;
  std::vector<double> curve;
  std::vector<std::string> outputs;
  std::uint64_t config_hash = 0;
};

LossModel make_loss(const ExperimentSpec& spec) {
  LossModel model = spec.loss_kind == LossKind::hinge
                        ? LossModel::hinge_loss(spec.lambda, spec.radius)
                        : LossModel::logistic_loss(spec.lambda, spec.radius);
  if (spec.lipschitz > 0.0) model.lipschitz_bound = spec.lipschitz;
  return model;
}

StepsizeSchedule make_steps(const ExperimentSpec& spec, bool offline) {
  const double effective = spec.lambda + (offline ? spec.phi_reg : 0.0);
  if (spec.stepsize_kind == "convex") return StepsizeSchedule::convex();
  if (spec.stepsize_kind == "strongly_convex")
    return StepsizeSchedule::strongly_convex(effective);
  return effective > 0.0 ? StepsizeSchedule::strongly_convex(effective)
                         : StepsizeSchedule::convex();
}

std::string file_safe(std::string label) {
  for (char& c : label)
    if (c == '=' || c == ',' || c == ' ') c = '-';
  return label;
}

std::string cell_config_string(const ExperimentSpec& spec, const Cell& cell,
                               std::uint64_t master_seed) {
  std::ostringstream s;
  s << to_string(spec.kind) << "|m=" << cell.m << "|T=" << cell.rounds
    << "|n=" << spec.n << "|loss=" << (spec.loss_kind == LossKind::hinge
                                           ? "hinge"
                                           : "logistic")
    << "|lambda=" << format_g17(spec.lambda) << "|radius="
    << format_g17(spec.radius) << "|eps=" << format_g(cell.epsilon)
    << "|mode=" << to_string(spec.mode) << "|eta=" << format_g17(spec.eta)
    << "|h=" << cell.h << "|phi=" << format_g17(spec.phi_reg)
    << "|seed=" << master_seed;
  return s.str();
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (const double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

// ~160 sample points per curve keeps the figures small at any horizon.
std::vector<std::int64_t> curve_samples(std::int64_t rounds) {
  std::vector<std::int64_t> ts;
  if (rounds <= 0) return ts;
  const std::int64_t stride = std::max<std::int64_t>(1, rounds / 160);
  for (std::int64_t t = stride - 1; t < rounds; t += stride) ts.push_back(t);
  if (ts.empty() || ts.back() != rounds - 1) ts.push_back(rounds - 1);
  return ts;
}

struct Runner {
  const ExperimentSpec& spec;
  Dataset data;
  std::map<int, ShardPlan> plans;               // per m
  std::map<std::string, RegretObjective> objectives;  // per cell key
  std::map<std::string, Vec> comparators;

  explicit Runner(const ExperimentSpec& s) : spec(s) {
    if (spec.data_source == "synthetic") {
      data = generate_synthetic(spec.n, spec.count, spec.margin,
                                spec.data_seed);
    } else {
      data = load_sparse(spec.data_path, spec.dim_cap);
      if (data.count() < 1)
        throw ConfigError("path: dataset '" + spec.data_path + "' is empty");
    }
  }

  const ShardPlan& plan_for(int m) {
    const auto it = plans.find(m);
    if (it != plans.end()) return it->second;
    return plans.emplace(m, partition(data, m, spec.holdout, spec.data_seed))
        .first->second;
  }

  int shard_size(int m) {
    return static_cast<int>(plan_for(m).shards.front().size());
  }

  OnlineRunConfig online_config(const Cell& cell, int seed_index) {
    OnlineRunConfig cfg;
    cfg.m = cell.m;
    cfg.n = data.dim();
    cfg.rounds = cell.rounds;
    cfg.loss = make_loss(spec);
    cfg.set.radius = spec.radius;
    cfg.steps = make_steps(spec, cell.offline);
    cfg.schedule.m = cell.m;
    cfg.schedule.eta = spec.eta;
    cfg.schedule.window = spec.window > 0 ? spec.window : cell.m;
    cfg.schedule.mode = spec.mode;
    cfg.privacy = std::isinf(cell.epsilon)
                      ? PrivacyParams::off()
                      : PrivacyParams{cell.epsilon, true};
    cfg.data = &data;
    cfg.shards = plan_for(cell.m).shards;
    cfg.master_seed = spec.seed0 + static_cast<std::uint64_t>(seed_index);
    cfg.schedule.seed = cfg.master_seed;
    cfg.reference = spec.reference;
    return cfg;
  }

  OfflineRunConfig offline_config(const Cell& cell, int seed_index) {
    OfflineRunConfig cfg;
    cfg.base = online_config(cell, seed_index);
    cfg.batch_size = cell.h;
    cfg.phi_reg = spec.phi_reg;
    cfg.regularize_at = spec.regularize_at == "local"
                            ? OfflineRunConfig::RegularizeAt::local
                            : OfflineRunConfig::RegularizeAt::averaged;
    if (cell.need_accuracy) cfg.eval_indices = plan_for(cell.m).holdout;
    return cfg;
  }

  std::string objective_key(const Cell& cell) const {
    return "m=" + std::to_string(cell.m) + "|T=" + std::to_string(cell.rounds) +
           "|h=" + std::to_string(cell.h) +
           (cell.offline ? "|offline" : "|online");
  }

  // Comparators depend only on the cell (shards and consumption order are
  // fixed per experiment), so they are solved once and shared by seeds.
  void prepare_comparators(const std::vector<Cell>& cells) {
    std::vector<const Cell*> pending;
    for (const Cell& cell : cells) {
      if (!cell.need_regret) continue;
      const std::string key = objective_key(cell);
      if (objectives.count(key)) continue;
      if (cell.offline) {
        OfflineRunConfig cfg = offline_config(cell, 0);
        cfg.eval_indices.clear();
        objectives.emplace(key, offline_objective(cfg));
      } else {
        objectives.emplace(key, online_objective(online_config(cell, 0)));
      }
      pending.push_back(&cell);
    }
    std::vector<std::string> keys;
    keys.reserve(pending.size());
    for (const Cell* cell : pending) keys.push_back(objective_key(*cell));
    std::vector<Vec> solved(keys.size());
    parallel_for(static_cast<std::int64_t>(keys.size()), spec.workers,
                 [&](std::int64_t i) {
                   solved[static_cast<std::size_t>(i)] = solve_comparator(
                       objectives.at(keys[static_cast<std::size_t>(i)]));
                 });
    for (std::size_t i = 0; i < keys.size(); ++i)
      comparators.emplace(keys[i], std::move(solved[i]));
  }
};

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& raw) {
  ExperimentSpec spec = raw;

  // per-kind sweep defaults
  const std::vector<double> default_eps = {
      std::numeric_limits<double>::infinity(), 1.0, 0.1, 0.01};
  switch (spec.kind) {
    case ExperimentKind::privacy_sweep:
      if (spec.epsilon_sweep.empty()) spec.epsilon_sweep = default_eps;
      break;
    case ExperimentKind::node_sweep:
    case ExperimentKind::bounds_compare:
      if (spec.m_sweep.empty()) spec.m_sweep = {1, 4, 64};
      break;
    case ExperimentKind::batch_sweep:
      if (spec.h_sweep.empty()) spec.h_sweep = {1, 5};
      break;
    case ExperimentKind::svm_accuracy_table:
      if (spec.m_sweep.empty()) spec.m_sweep = {1, 4, 64};
      if (spec.epsilon_sweep.empty()) spec.epsilon_sweep = default_eps;
      break;
    case ExperimentKind::audits:
      if (spec.n > 8) throw ConfigError("n: audits require n <= 8");
      if (spec.m > 3) throw ConfigError("m: audits require m <= 3");
      if (spec.rounds > 50)
        throw ConfigError("rounds: audits require rounds <= 50");
      break;
  }

  ExperimentResult result;
  result.spec = spec;

  fs::create_directories(spec.output_dir);
  const fs::path out_dir(spec.output_dir);

  Runner runner(spec);

  // audits have no sweep x seed structure; handle them and return
  if (spec.kind == ExperimentKind::audits) {
    AuditConfig base;
    base.n = spec.n;
    base.m = spec.m;
    base.rounds = spec.rounds > 0 ? spec.rounds : 50;
    base.loss = make_loss(spec);
    base.set.radius = spec.radius;
    base.steps = make_steps(spec, false);
    base.trials = spec.audit_trials;
    base.seed = spec.seed0;
    const int h = spec.h > 1 ? spec.h : 5;
    const std::pair<const char*, int> variants[] = {{"online", 1},
                                                    {"minibatch", h}};
    for (const auto& [label, batch] : variants) {
      AuditConfig cfg = base;
      cfg.batch_size = batch;
      const AuditReport report = audit_sensitivity(cfg);
      const std::string path =
          (out_dir / ("audit_" + std::string(label) + ".csv")).string();
      std::ofstream csv(path);
      report.write_csv(csv);
      CellSummary cell;
      cell.label = label;
      cell.h = batch;
      cell.audit_max_ratio = report.max_ratio;
      cell.audit_pass = report.pass;
      result.cells.push_back(cell);
      ManifestEntry entry;
      entry.cell = label;
      entry.seed = 0;
      entry.status = report.pass ? "ok" : "failed: sensitivity bound exceeded";
      entry.config_hash = fnv1a64("audit|" + std::string(label) + "|h=" +
                                  std::to_string(batch));
      entry.outputs.push_back(path);
      result.entries.push_back(entry);
      if (!report.pass) result.all_ok = false;
    }
    result.summary_path = (out_dir / "summary.csv").string();
    std::ofstream summary(result.summary_path);
    summary << "kind,trials,max_ratio,pass\n";
    for (const CellSummary& cell : result.cells)
      summary << cell.label << ',' << spec.audit_trials << ','
              << format_g17(cell.audit_max_ratio) << ','
              << (cell.audit_pass ? 1 : 0) << '\n';
  } else {
    fs::create_directories(out_dir / "runs");

    // build cells
    std::vector<Cell> cells;
    const auto online_rounds = [&](int m) {
      return spec.rounds > 0 ? spec.rounds
                             : static_cast<std::int64_t>(runner.shard_size(m));
    };
    switch (spec.kind) {
      case ExperimentKind::privacy_sweep: {
        const std::int64_t T = online_rounds(spec.m);
        for (const double eps : spec.epsilon_sweep)
          cells.push_back({"eps=" + format_g(eps), eps, spec.m, 1, T, false,
                           true, false});
        break;
      }
      case ExperimentKind::node_sweep:
      case ExperimentKind::bounds_compare: {
        std::int64_t T = spec.rounds;
        if (T <= 0)
          for (const int m : spec.m_sweep)
            T = T <= 0 ? online_rounds(m) : std::min(T, online_rounds(m));
        for (const int m : spec.m_sweep)
          cells.push_back({"m=" + std::to_string(m), spec.epsilon, m, 1, T,
                           false, true, false});
        break;
      }
      case ExperimentKind::batch_sweep: {
        const int max_h =
            *std::max_element(spec.h_sweep.begin(), spec.h_sweep.end());
        std::int64_t budget = online_rounds(spec.m);
        budget = budget / max_h * max_h;
        for (const int h : spec.h_sweep)
          cells.push_back({"h=" + std::to_string(h), spec.epsilon, spec.m, h,
                           budget, true, true, false});
        break;
      }
      case ExperimentKind::svm_accuracy_table: {
        if (!(spec.holdout > 0.0))
          throw ConfigError("holdout: svm_accuracy_table needs a held-out split");
        for (const int m : spec.m_sweep) {
          std::int64_t T = online_rounds(m);
          T = T / spec.h * spec.h;
          for (const double eps : spec.epsilon_sweep)
            cells.push_back({"m=" + std::to_string(m) + ",eps=" +
                                 format_g(eps),
                             eps, m, spec.h, T, true, false, true});
        }
        break;
      }
      case ExperimentKind::audits:
        break;  // handled above
    }

    runner.prepare_comparators(cells);

    const std::int64_t job_count =
        static_cast<std::int64_t>(cells.size()) * spec.seeds;
    std::vector<JobOutcome> outcomes(static_cast<std::size_t>(job_count));
    const RunRecord::CsvMode csv_mode = spec.record_csv == "reference"
                                            ? RunRecord::CsvMode::reference_only
                                            : RunRecord::CsvMode::full;

    parallel_for(job_count, spec.workers, [&](std::int64_t job) {
      const std::size_t cell_index =
          static_cast<std::size_t>(job / spec.seeds);
      const int seed_index = static_cast<int>(job % spec.seeds);
      const Cell& cell = cells[cell_index];
      JobOutcome& outcome = outcomes[static_cast<std::size_t>(job)];
      try {
        outcome.config_hash = fnv1a64(cell_config_string(
            spec, cell, spec.seed0 + static_cast<std::uint64_t>(seed_index)));
        RunRecord record;
        Vec averaged;
        if (cell.offline) {
          const OfflineRunResult run =
              run_offline(runner.offline_config(cell, seed_index));
          record = run.record;
          averaged = run.averaged_iterate;
        } else {
          record = run_online(runner.online_config(cell, seed_index));
        }
        if (cell.need_regret) {
          const std::string key = runner.objective_key(cell);
          const RegretReport report = empirical_regret(
              record, runner.objectives.at(key), runner.comparators.at(key));
          outcome.final_norm_regret = report.final_normalized();
          outcome.final_cum_regret = report.final_cumulative();
          for (const std::int64_t t : curve_samples(record.rounds))
            outcome.curve.push_back(
                report.normalized[static_cast<std::size_t>(t)]);
        }
        if (cell.need_accuracy) {
          outcome.accuracy = accuracy(averaged, runner.data,
                                      runner.plan_for(cell.m).holdout);
        }
        if (spec.record_csv != "none") {
          const std::string path =
              (out_dir / "runs" /
               (file_safe(cell.label) + "_seed" + std::to_string(seed_index) +
                ".csv"))
                  .string();
          std::ofstream csv(path);
          record.write_csv(csv, csv_mode);
          outcome.outputs.push_back(path);
        }
        outcome.ok = true;
        outcome.status = "ok";
      } catch (const std::exception& e) {
        outcome.ok = false;
        outcome.status = std::string("failed: ") + e.what();
      }
    });

    // aggregate in cell-major, seed-minor order
    std::vector<SvgSeries> curves;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Cell& cell = cells[c];
      CellSummary summary;
      summary.label = cell.label;
      summary.epsilon = cell.epsilon;
      summary.m = cell.m;
      summary.h = cell.h;
      std::vector<double> finals, cums, accs;
      std::vector<double> curve_sum;
      for (int s = 0; s < spec.seeds; ++s) {
        const JobOutcome& outcome =
            outcomes[c * static_cast<std::size_t>(spec.seeds) +
                     static_cast<std::size_t>(s)];
        ManifestEntry entry;
        entry.cell = cell.label;
        entry.seed = s;
        entry.status = outcome.status;
        entry.config_hash = outcome.config_hash;
        entry.outputs = outcome.outputs;
        result.entries.push_back(entry);
        if (!outcome.ok) {
          result.all_ok = false;
          continue;
        }
        ++summary.seeds_ok;
        if (cell.need_regret) {
          finals.push_back(outcome.final_norm_regret);
          cums.push_back(outcome.final_cum_regret);
          if (curve_sum.empty()) curve_sum.assign(outcome.curve.size(), 0.0);
          for (std::size_t k = 0; k < outcome.curve.size(); ++k)
            curve_sum[k] += outcome.curve[k];
        }
        if (cell.need_accuracy) accs.push_back(outcome.accuracy);
      }
      if (!finals.empty()) {
        double mean = 0.0;
        for (const double x : finals) mean += x;
        mean /= static_cast<double>(finals.size());
        summary.mean_final_normalized_regret = mean;
        summary.std_final_normalized_regret = sample_std(finals, mean);
        double cum_mean = 0.0;
        for (const double x : cums) cum_mean += x;
        summary.mean_cumulative_regret =
            cum_mean / static_cast<double>(cums.size());
        SvgSeries series;
        series.label = cell.label;
        const auto ts = curve_samples(cell.offline
                                          ? cell.rounds / cell.h
                                          : cell.rounds);
        for (std::size_t k = 0; k < curve_sum.size(); ++k) {
          series.x.push_back(static_cast<double>(ts[k] + 1));
          series.y.push_back(curve_sum[k] /
                             static_cast<double>(finals.size()));
        }
        curves.push_back(series);
      }
      if (!accs.empty()) {
        double mean = 0.0;
        for (const double x : accs) mean += x;
        mean /= static_cast<double>(accs.size());
        summary.mean_accuracy = mean;
        summary.std_accuracy = sample_std(accs, mean);
      }
      if (spec.kind == ExperimentKind::bounds_compare) {
        const OnlineRunConfig cfg = runner.online_config(cell, 0);
        const ConsensusRate rate = consensus_rate(cfg.schedule);
        BoundInputs inputs;
        inputs.m = cell.m;
        inputs.T = cell.rounds;
        inputs.n = cfg.n;
        inputs.L = cfg.loss.lipschitz_bound;
        inputs.lambda = cfg.loss.strong_convexity;
        inputs.R = cfg.set.diameter();
        inputs.epsilon = cell.epsilon;
        inputs.theta = rate.theta;
        inputs.beta = rate.beta;
        summary.regret_bound = theorem2_bound(inputs, cfg.steps.kind);
      }
      result.cells.push_back(summary);
    }

    // summary CSV (schema depends on the sweep axis)
    result.summary_path = (out_dir / "summary.csv").string();
    std::ofstream summary(result.summary_path);
    switch (spec.kind) {
      case ExperimentKind::privacy_sweep:
        summary << "epsilon,seeds,mean_final_normalized_regret,"
                   "std_final_normalized_regret\n";
        for (const CellSummary& cell : result.cells)
          summary << format_g(cell.epsilon) << ',' << cell.seeds_ok << ','
                  << format_g17(cell.mean_final_normalized_regret) << ','
                  << format_g17(cell.std_final_normalized_regret) << '\n';
        break;
      case ExperimentKind::node_sweep:
        summary << "m,seeds,mean_final_normalized_regret,"
                   "std_final_normalized_regret\n";
        for (const CellSummary& cell : result.cells)
          summary << cell.m << ',' << cell.seeds_ok << ','
                  << format_g17(cell.mean_final_normalized_regret) << ','
                  << format_g17(cell.std_final_normalized_regret) << '\n';
        break;
      case ExperimentKind::batch_sweep:
        summary << "h,seeds,mean_final_normalized_regret,"
                   "std_final_normalized_regret\n";
        for (const CellSummary& cell : result.cells)
          summary << cell.h << ',' << cell.seeds_ok << ','
                  << format_g17(cell.mean_final_normalized_regret) << ','
                  << format_g17(cell.std_final_normalized_regret) << '\n';
        break;
      case ExperimentKind::svm_accuracy_table:
        summary << "m,epsilon,seeds,mean_accuracy,std_accuracy\n";
        for (const CellSummary& cell : result.cells)
          summary << cell.m << ',' << format_g(cell.epsilon) << ','
                  << cell.seeds_ok << ',' << format_g17(cell.mean_accuracy)
                  << ',' << format_g17(cell.std_accuracy) << '\n';
        break;
      case ExperimentKind::bounds_compare:
        summary << "m,epsilon,seeds,mean_cumulative_regret,regret_bound,"
                   "dominated\n";
        for (const CellSummary& cell : result.cells)
          summary << cell.m << ',' << format_g(cell.epsilon) << ','
                  << cell.seeds_ok << ','
                  << format_g17(cell.mean_cumulative_regret) << ','
                  << format_g17(cell.regret_bound) << ','
                  << (cell.mean_cumulative_regret <= cell.regret_bound ? 1 : 0)
                  << '\n';
        break;
      case ExperimentKind::audits:
        break;
    }
    summary.close();

    // figures
    if (!curves.empty() && spec.kind != ExperimentKind::bounds_compare) {
      const std::string fig =
          (out_dir / ("fig_" + std::string(to_string(spec.kind)) + ".svg"))
              .string();
      write_svg_lines(fig, to_string(spec.kind), "round",
                      "normalized regret", curves);
      result.figures.push_back(fig);
    }
    if (spec.kind == ExperimentKind::bounds_compare) {
      SvgSeries empirical{"empirical mean", {}, {}};
      SvgSeries bound{"bound", {}, {}};
      for (const CellSummary& cell : result.cells) {
        empirical.x.push_back(static_cast<double>(cell.m));
        empirical.y.push_back(cell.mean_cumulative_regret);
        bound.x.push_back(static_cast<double>(cell.m));
        bound.y.push_back(cell.regret_bound);
      }
      const std::string fig = (out_dir / "fig_bounds_compare.svg").string();
      write_svg_lines(fig, "bounds_compare", "m", "cumulative regret",
                      {empirical, bound});
      result.figures.push_back(fig);
    }
  }

  // manifest
  nlohmann::ordered_json manifest;
  manifest["version"] = "gossipdp-manifest v1";
  manifest["experiment"] = to_string(spec.kind);
  manifest["name"] = spec.name;
  nlohmann::ordered_json spec_json;
  spec_json["data"] = spec.data_source;
  spec_json["count"] = spec.count;
  spec_json["margin"] = spec.margin;
  spec_json["data_seed"] = spec.data_seed;
  spec_json["n"] = spec.n;
  spec_json["holdout"] = spec.holdout;
  spec_json["loss"] = spec.loss_kind == LossKind::hinge ? "hinge" : "logistic";
  spec_json["lambda"] = spec.lambda;
  spec_json["radius"] = spec.radius;
  spec_json["m"] = spec.m;
  spec_json["rounds"] = spec.rounds;
  spec_json["epsilon"] = format_g(spec.epsilon);
  spec_json["topology"] = to_string(spec.mode);
  spec_json["eta"] = spec.eta;
  spec_json["window"] = spec.window;
  spec_json["h"] = spec.h;
  spec_json["phi_reg"] = spec.phi_reg;
  spec_json["seeds"] = spec.seeds;
  spec_json["seed0"] = spec.seed0;
  manifest["spec"] = spec_json;
  manifest["summary"] = result.summary_path;
  manifest["figures"] = result.figures;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const ManifestEntry& entry : result.entries) {
    nlohmann::ordered_json e;
    e["cell"] = entry.cell;
    e["seed"] = entry.seed;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(entry.config_hash));
    e["config_hash"] = hash;
    e["status"] = entry.status;
    e["outputs"] = entry.outputs;
    entries.push_back(e);
  }
  manifest["entries"] = entries;
  result.manifest_path = (out_dir / "manifest.json").string();
  std::ofstream mf(result.manifest_path);
  mf << manifest.dump(2) << '\n';

  return result;
}

ExperimentResult emit_table1_analog(const ExperimentSpec& spec) {
  if (spec.kind != ExperimentKind::svm_accuracy_table)
    throw ConfigError("experiment: emit_table1_analog needs svm_accuracy_table");
  return run_experiment(spec);
}

}  // namespace gossipdp
