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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "gossipdp/engine_offline.hpp"
#include "gossipdp/metrics.hpp"

namespace gossipdp {

enum class ExperimentKind {
  privacy_sweep,
  node_sweep,
  batch_sweep,
  svm_accuracy_table,
  bounds_compare,
  audits,
};

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

// Declarative experiment description, read from a flat key=value file.
// The dataset and shard plans are fixed per experiment (data_seed); run
// seeds drive only the algorithmic randomness (noise draws and gossip
// matchings), so sweep cells at the same seed are paired.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::privacy_sweep;
  std::string name = "experiment";

  // data
  std::string data_source = "synthetic";  // synthetic | sparse
  int count = 100000;
  double margin = 0.0;
  std::uint64_t data_seed = 7;
  std::string data_path;
  int dim_cap = 1000;
  double holdout = 0.0;
  int n = 10;

  // model and engine
  LossKind loss_kind = LossKind::hinge;
  double lambda = 0.0;
  double lipschitz = 0.0;  // 0: derived from the loss model
  double radius = 1.0;
  std::string stepsize_kind = "auto";  // auto | strongly_convex | convex
  int m = 4;
  std::int64_t rounds = 0;  // 0: use the full shards
  double epsilon = 0.1;     // inf = non-private
  ScheduleMode mode = ScheduleMode::random_pairwise_gossip;
  double eta = 0.1;
  int window = 0;  // 0: m
  int h = 1;
  double phi_reg = 0.0;
  std::string regularize_at = "local";

  // sweeps (empty: per-kind defaults)
  std::vector<double> epsilon_sweep;
  std::vector<int> m_sweep;
  std::vector<int> h_sweep;

  int seeds = 20;
  std::uint64_t seed0 = 1;
  double gamma = 0.01;
  int audit_trials = 1000;

  std::string output_dir = "out";
  int workers = 2;
  std::string record_csv = "full";  // full | reference | none
  int reference = 0;
};

ExperimentSpec parse_spec(std::istream& in, const std::string& name);
ExperimentSpec parse_spec_file(const std::string& path);

struct ManifestEntry {
  std::string cell;
  int seed = 0;
  std::uint64_t config_hash = 0;
  std::string status;  // "ok" or "failed: <reason>"
  std::vector<std::string> outputs;
};

constexpr double kNoValue = std::numeric_limits<double>::quiet_NaN();

// Seed-aggregated results of one sweep cell.
struct CellSummary {
  std::string label;
  double epsilon = kNoValue;
  int m = 0;
  int h = 0;
  int seeds_ok = 0;
  double mean_final_normalized_regret = kNoValue;
  double std_final_normalized_regret = kNoValue;
  double mean_cumulative_regret = kNoValue;
  double mean_accuracy = kNoValue;
  double std_accuracy = kNoValue;
  double regret_bound = kNoValue;
  double audit_max_ratio = kNoValue;
  bool audit_pass = false;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<CellSummary> cells;
  std::vector<ManifestEntry> entries;
  std::vector<std::string> figures;
  std::string summary_path;
  std::string manifest_path;
  bool all_ok = true;
};

/// Executes the sweep-values x seeds cross product; writes per-run CSVs, a
/// seed-aggregated summary CSV, figure SVGs, and a manifest listing every
/// output with its config hash.  Job failures are recorded in the manifest
/// and do not stop the remaining runs.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Accuracy grid over nodes x privacy levels (the summary CSV is the
/// table); requires kind = svm_accuracy_table.
ExperimentResult emit_table1_analog(const ExperimentSpec& spec);

}  // namespace gossipdp
