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
#include <optional>
#include <span>
#include <vector>

#include "gossipdp/engine_online.hpp"

namespace gossipdp {

// Offline variant: T/h outer rounds, each driven by the average subgradient
// of a disjoint batch of h examples plus an explicit l2 pull phi_reg * w.
// The smaller per-round sensitivity divides the noise scale by h.
struct OfflineRunConfig {
  // Which parameter the phi_reg term pulls on.  The update as written uses
  // the pre-averaging local parameter; `averaged` is exposed because the
  // discrepancy with the subgradient point looks unintentional.
  enum class RegularizeAt { local, averaged };

  OnlineRunConfig base;  // base.rounds is the per-learner example budget T
  int batch_size = 1;    // h
  double phi_reg = 0.0;
  RegularizeAt regularize_at = RegularizeAt::local;
  std::vector<int> eval_indices;  // held-out examples (may be empty)

  std::int64_t outer_rounds() const { return base.rounds / batch_size; }
  void validate() const;
};

// Averaged iterate of the reference learner and its estimated expected-loss
// gap to the hindsight optimum, both measured on the held-out set.
struct ExcessRiskEstimate {
  int reference = 0;
  Vec averaged_iterate;
  Vec comparator;
  double risk_avg_iterate = 0.0;
  double risk_comparator = 0.0;
  double gap = 0.0;
};

struct OfflineRunResult {
  RunRecord record;
  Vec averaged_iterate;
  std::optional<ExcessRiskEstimate> risk;
};

/// Mean of per-example subgradients at b, summed in batch order.
Vec batch_subgradient(const LossModel& model, const Eigen::Ref<const Vec>& b,
                      const Dataset& data, std::span<const int> batch);

/// One mini-batch update: w' = Pro[b - alpha_{t+1} (phi_reg * w_reg +
/// batch_subgradient(b))], broadcast noise scale S(t+1)/(h epsilon).
LearnerState offline_learner_step(const LearnerState& state,
                                  const Eigen::Ref<const Vec>& b,
                                  const Dataset& data,
                                  std::span<const int> batch, std::int64_t t,
                                  const OfflineRunConfig& config);

OfflineRunResult run_offline(const OfflineRunConfig& config);

struct SvmResult {
  Vec weights;   // reference learner's averaged iterate
  double accuracy = 0.0;
};

/// Hinge-loss training via run_offline; accuracy is measured on the
/// config's held-out indices.
SvmResult train_svm(const OfflineRunConfig& config);

}  // namespace gossipdp
