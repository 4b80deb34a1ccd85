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
#include <vector>

#include "gossipdp/data.hpp"
#include "gossipdp/loss.hpp"
#include "gossipdp/privacy.hpp"
#include "gossipdp/topology.hpp"
#include "gossipdp/types.hpp"

namespace gossipdp {

// One learner's parameter and its last noised broadcast w + sigma.
struct LearnerState {
  int index = 0;
  Vec w;
  Vec broadcast;
};

// Per round t each learner averages the neighbours' noised broadcasts with
// its mixing row, takes a projected subgradient step on its local example
// (the subgradient is taken at the averaged point), then broadcasts the new
// parameter plus fresh Laplace noise.  All learners share (n, loss, set,
// schedule, epsilon); data shards are learner-local.
struct OnlineRunConfig {
  int m = 1;
  int n = 1;
  std::int64_t rounds = 0;  // T
  LossModel loss = LossModel::hinge_loss();
  FeasibleSet set;
  StepsizeSchedule steps = StepsizeSchedule::convex();
  CommSchedule schedule;
  PrivacyParams privacy = PrivacyParams::off();
  const Dataset* data = nullptr;
  std::vector<std::vector<int>> shards;  // per-learner example indices
  std::uint64_t master_seed = 0;
  int reference = 0;                // learner whose trajectory scores regret
  std::vector<Vec> initial_points;  // empty: all learners start at 0
  bool record_full_trajectories = false;

  void validate() const;
};

// Per-round log of one seeded run.  Row t of `losses` holds f_t^i evaluated
// at the reference learner's pre-update parameter w_t; row t of `noise_l2`
// holds the norms of the fresh draws sigma_{t+1} made during round t, whose
// scale is noise_mu[t].  The round-0 broadcast draw sigma_0 (scale from
// alpha_1, where the schedule starts) is logged separately.
struct RunRecord {
  int m = 0;
  int n = 0;
  std::int64_t rounds = 0;
  int reference = 0;
  bool privacy_enabled = false;
  double epsilon = 0.0;

  Mat losses;    // rounds x m
  Mat noise_l2;  // rounds x m
  std::vector<double> noise_mu;
  std::vector<double> initial_noise_l2;
  double initial_noise_mu = 0.0;

  Mat ref_trajectory;  // (rounds+1) x n, w_t of the reference learner
  std::vector<Mat> full_trajectories;  // optional, (rounds+1) entries of m x n
  std::vector<Vec> final_params;

  // filled by the metrics layer once a comparator is available
  std::vector<double> cum_regret_normalized;

  double max_param_norm = 0.0;
  double wall_seconds = 0.0;

  double total_loss() const;

  enum class CsvMode { full, reference_only };
  /// Columns: t, learner, loss, noise_l2, cum_regret_normalized.
  void write_csv(std::ostream& out, CsvMode mode = CsvMode::full) const;
  /// Versioned text dump of the reference trajectory, for audit/replay.
  void write_trajectory(std::ostream& out) const;
};

/// sum_j weights(j) * broadcasts[j], summed in ascending j.
Vec weighted_average(const Eigen::Ref<const Eigen::RowVectorXd>& weights,
                     const std::vector<Vec>& broadcasts);

/// Noise scale mu(t) = S(t)/epsilon used for the broadcast drawn with
/// stepsize index t >= 1; zero when privacy is disabled.
double broadcast_noise_scale(const OnlineRunConfig& config, std::int64_t t);

/// One update from the averaged point b: w' = Pro[b - alpha_{t+1} g(b)],
/// broadcast' = w' + sigma_{t+1}.  t is the 0-based round index.
LearnerState learner_step(const LearnerState& state,
                          const Eigen::Ref<const Vec>& b,
                          const Eigen::Ref<const Vec>& x, double y,
                          std::int64_t t, const OnlineRunConfig& config);

RunRecord run_online(const OnlineRunConfig& config);

}  // namespace gossipdp
