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
#include <vector>

#include "gossipdp/loss.hpp"
#include "gossipdp/rng.hpp"
#include "gossipdp/types.hpp"

namespace gossipdp {

// Privacy level of the whole run.  Per-round noise is calibrated as
// mu(t) = S(t)/epsilon with S(t) the round's L1-sensitivity bound; disjoint
// per-round samples keep the guarantee at epsilon across rounds (parallel
// composition), so no budget accounting happens here.
struct PrivacyParams {
  double epsilon = 1.0;
  bool enabled = true;

  static PrivacyParams off() {
    return {std::numeric_limits<double>::infinity(), false};
  }
  void validate() const;
};

// Bookkeeping for one Laplace draw; `mu` must equal sensitivity/epsilon
// bitwise (both sides are computed from the same inputs).
struct NoiseDraw {
  std::int64_t round = 0;
  int learner = 0;
  double mu = 0.0;
  double l2_norm = 0.0;
};

/// L1-sensitivity bound of one projected-subgradient round: 2 alpha_t sqrt(n) L.
double sensitivity_online(double alpha_t, int n, double lipschitz_bound);

/// Mini-batch variant: the averaged subgradient divides the bound by h.
double sensitivity_minibatch(double alpha_t, int n, double lipschitz_bound,
                             int batch_size);

/// n i.i.d. draws with density (1/2mu) exp(-|x|/mu), via the inverse CDF
/// sigma = -mu sgn(u) ln(1 - 2|u|) of a uniform u in (-1/2, 1/2).
Vec laplace_vector(Rng& rng, int n, double mu);

// Empirical sensitivity audit: for each trial, two data streams differing in
// one example drive one noiseless update step from an identical shared
// state, and the L1 distance of the results is compared with the calibrated
// bound.  Instances are kept small (n <= 8, m <= 3, rounds <= 50) so the
// adversarial search stays cheap.
struct AuditConfig {
  int n = 2;
  int m = 1;
  std::int64_t rounds = 50;
  LossModel loss = LossModel::hinge_loss();
  FeasibleSet set;
  StepsizeSchedule steps = StepsizeSchedule::convex();
  int batch_size = 1;  // 1 audits the online step, > 1 the mini-batch step
  int trials = 1000;
  std::uint64_t seed = 0;
};

struct AuditTrial {
  int trial = 0;
  std::int64_t t = 0;
  double measured_l1 = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct AuditReport {
  std::vector<AuditTrial> trials;
  double max_ratio = 0.0;
  bool pass = false;  // all ratios <= 1 + 1e-9

  void write_csv(std::ostream& out) const;
};

AuditReport audit_sensitivity(const AuditConfig& config);

}  // namespace gossipdp
