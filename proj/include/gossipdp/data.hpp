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
#include <vector>

#include "gossipdp/types.hpp"

namespace gossipdp {

// Dense labelled dataset; one example per row, labels exactly +-1, and
// every feature vector inside the unit ball.
struct Dataset {
  Mat features;  // count x dim
  Vec labels;
  std::string name;
  std::uint64_t source_seed = 0;  // generation seed when synthetic
  Vec ground_truth;               // labelling hyperplane (synthetic only)

  int dim() const { return static_cast<int>(features.cols()); }
  int count() const { return static_cast<int>(features.rows()); }
};

/// Synthetic data: x uniform in the unit n-ball, labels from a hidden unit
/// hyperplane; examples with |<w_true, x>| < margin are resampled, so
/// margin > 0 yields linearly separable data.
Dataset generate_synthetic(int n, int count, double margin,
                           std::uint64_t seed);

/// Loads `label idx:val idx:val ...` text (1-based indices).  Vectors are
/// densified to exactly dim_cap entries; indices beyond the cap are
/// dropped, and any vector with norm > 1 is rescaled to unit norm.
Dataset load_sparse(const std::string& path, int dim_cap);
Dataset load_sparse(std::istream& in, int dim_cap, const std::string& name);

/// Writes the sparse text form (17 significant digits, zeros skipped) so a
/// reload reproduces the dense vectors bit-exactly.
void save_sparse(const Dataset& data, std::ostream& out);
void save_sparse(const Dataset& data, const std::string& path);

// Disjoint per-learner shards plus a held-out split.  `dropped` counts
// trailing examples discarded to keep shards equal-sized.
struct ShardPlan {
  std::vector<std::vector<int>> shards;
  std::vector<int> holdout;
  int dropped = 0;
  std::uint64_t seed = 0;
};

/// Seeded shuffle, held-out split removed first, remainder dealt
/// round-robin into m equal shards.
ShardPlan partition(const Dataset& data, int m, double holdout_fraction,
                    std::uint64_t seed);

}  // namespace gossipdp
