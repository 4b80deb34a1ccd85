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
#include <string>
#include <utility>
#include <vector>

#include "gossipdp/types.hpp"

namespace gossipdp {

// Realizations of the time-variant mixing weights:
//   fixed_complete          uniform 1/m every round (baseline)
//   random_pairwise_gossip  a seeded random partial matching per round;
//                           matched pair (i,j) mixes with weight c drawn in
//                           [eta, 1/2], everyone else keeps self-weight 1.
//                           Every `window` rounds one deterministic ring
//                           round is inserted so each window's union graph
//                           is strongly connected by construction.
//   ring_rotation           convex combination of the identity and the
//                           cyclic shift, weight drawn in [eta, 1/2].
enum class ScheduleMode { fixed_complete, random_pairwise_gossip, ring_rotation };

const char* to_string(ScheduleMode mode);
ScheduleMode schedule_mode_from_string(const std::string& name);

// Parameters of a communication schedule.  `eta` lower-bounds every strictly
// positive matrix entry; `window` is the horizon over which the union of
// communication graphs must be strongly connected.
struct CommSchedule {
  int m = 1;
  double eta = 0.1;
  int window = 1;
  std::uint64_t seed = 0;
  ScheduleMode mode = ScheduleMode::fixed_complete;
};

// Geometric consensus constants:
//   theta = (1 - eta/(4 m^2))^(-2),  beta = (1 - eta/(4 m^2))^(1/window),
// and  max_ij |phi(k,s)_ij - 1/m| <= theta beta^(k-s).
struct ConsensusRate {
  double theta = 1.0;
  double beta = 0.0;
};

struct MatrixValidation {
  bool nonnegative = true;
  bool rows_stochastic = true;
  bool cols_stochastic = true;
  bool positive_entries_above_eta = true;
  bool diagonal_positive = true;  // informational, not part of pass()
  // offending (row, col); row-sum failures use col = -1, column-sum failures
  // use row = -1
  std::vector<std::pair<int, int>> offenders;

  bool pass() const {
    return nonnegative && rows_stochastic && cols_stochastic &&
           positive_entries_above_eta;
  }
  std::string summary() const;
};

/// The m-by-m mixing matrix for round t >= 0.  Deterministic in
/// (seed, mode, m, eta, window, t).
Mat generate_matrix(const CommSchedule& schedule, std::int64_t t);

/// Checks double stochasticity (within tol) and the positive-entry
/// threshold.  Reports findings; never throws on content.
MatrixValidation validate_matrix(const Mat& matrix, double eta,
                                 double tol = 1e-12);

/// phi(k, s) = A(k) A(k-1) ... A(s+1);  phi(s, s) = I.
Mat phi_product(const CommSchedule& schedule, std::int64_t k, std::int64_t s);

ConsensusRate consensus_rate(const CommSchedule& schedule);

/// True iff the union of communication graphs over rounds
/// t_start+1 .. t_start+window is strongly connected.
bool check_connectivity(const CommSchedule& schedule, std::int64_t t_start);

// Versioned text serialization, one matrix per round, row-major.  Entries
// are written with 17 significant digits so a reload is bit-exact.
void save_schedule(const CommSchedule& schedule, std::int64_t t_begin,
                   std::int64_t t_end, std::ostream& out);
void save_schedule(const CommSchedule& schedule, std::int64_t t_begin,
                   std::int64_t t_end, const std::string& path);

struct SavedSchedule {
  CommSchedule params;
  std::int64_t t_begin = 0;
  std::vector<Mat> matrices;
};

SavedSchedule load_schedule(std::istream& in);
SavedSchedule load_schedule(const std::string& path);

}  // namespace gossipdp
