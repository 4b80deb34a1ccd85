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
#include <span>
#include <vector>

#include "gossipdp/engine_offline.hpp"
#include "gossipdp/engine_online.hpp"

namespace gossipdp {

// The hindsight objective  G(w) = sum_k weight_k * base(w; x_k, y_k)
//                               + (quad/2) |w|^2   over the feasible set,
// assembled from the examples a run consumed.  Rows are ordered by round
// (rows_per_round each), so per-round comparator losses fall out directly.
// Any strong-convexity term of the loss model is folded into `quad`.
struct RegretObjective {
  Mat examples;   // one consumed example per row
  Vec labels;
  Vec weights;    // per-row weight in the sum
  double quad = 0.0;
  LossModel base;  // strong_convexity zeroed; see quad
  FeasibleSet set;
  std::int64_t rounds = 0;
  int rows_per_round = 0;

  double value(const Eigen::Ref<const Vec>& w) const;
  Vec subgradient(const Eigen::Ref<const Vec>& w) const;
  /// sum_i f_t^i(w) for one round t.
  double round_value(const Eigen::Ref<const Vec>& w, std::int64_t t) const;
};

RegretObjective online_objective(const OnlineRunConfig& config);
RegretObjective offline_objective(const OfflineRunConfig& config);

// Comparator solver: a long deterministic non-private centralized projected
// subgradient pass over the pooled examples (averaged iterate), then a
// shrinking-radius pattern search on the full objective.
struct ComparatorOptions {
  std::int64_t sgd_iterations = 0;  // 0: 10x the round count
  int polish_random_directions = 16;
  double polish_initial_radius = 0.25;
  double polish_min_radius = 1e-10;
  std::int64_t polish_max_evaluations = 6000;
  std::uint64_t seed = 0x5eed;
};

Vec solve_comparator(const RegretObjective& objective,
                     const ComparatorOptions& options = {});

struct RegretReport {
  std::vector<double> cumulative;   // R(t), t = 0..rounds-1
  std::vector<double> normalized;   // R(t)/(t+1)
  Vec comparator;
  double comparator_objective = 0.0;
  bool privacy_enabled = false;

  double final_cumulative() const {
    return cumulative.empty() ? 0.0 : cumulative.back();
  }
  double final_normalized() const {
    return normalized.empty() ? 0.0 : normalized.back();
  }
};

/// Cumulative regret of the recorded trajectory against the best fixed
/// feasible point in hindsight.
RegretReport empirical_regret(const RunRecord& record,
                              const RegretObjective& objective,
                              const ComparatorOptions& options = {});

/// Same, with the comparator already solved (sweeps share one comparator
/// across seeds).  Also fills record.cum_regret_normalized.
RegretReport empirical_regret(RunRecord& record,
                              const RegretObjective& objective,
                              const Vec& comparator);

// Inputs of the closed-form regret and utility bounds.  theta/beta come
// from consensus_rate; epsilon may be +inf (non-private: the noise terms
// vanish).
struct BoundInputs {
  int m = 1;
  std::int64_t T = 1;
  int n = 1;
  double L = 1.0;
  double lambda = 0.0;
  double R = 2.0;
  double epsilon = 1.0;
  double theta = 1.0;
  double beta = 0.0;
  int h = 1;
  double gamma = 0.01;
};

/// Expected-regret bound of the online algorithm.  The strongly convex case
/// needs lambda > 0 and scales with (1 + log T); the convex case scales
/// with (sqrt(T) - 1/2) and replaces the 1/lambda factor by the constant 2
/// that the alpha_t = 1/(2 sqrt(t)) schedule induces.
double theorem2_bound(const BoundInputs& inputs, StepsizeSchedule::Kind kind);

/// Excess-risk bound of the mini-batch offline algorithm in terms of the
/// online regret R_D (needs lambda > 0).
double offline_utility_bound(const BoundInputs& inputs, double regret);

/// Centralized special cases (m = 1): h = 1 and mini-batch.
double centralized_risk_bound(const BoundInputs& inputs, double regret);
double centralized_minibatch_risk_bound(const BoundInputs& inputs,
                                        double regret);

/// Fraction of examples with y <w, x> > 0; ties count as errors.
double accuracy(const Eigen::Ref<const Vec>& w, const Dataset& data,
                std::span<const int> indices);
double accuracy(const Eigen::Ref<const Vec>& w, const Dataset& data);

}  // namespace gossipdp
