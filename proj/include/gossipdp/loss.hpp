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

#include "gossipdp/types.hpp"

namespace gossipdp {

enum class LossKind { hinge, logistic };

// Convex loss family  f(w; x, y) = base(y <w, x>) + (lambda/2) |w|^2.
//
// lipschitz_bound must dominate the subgradient norm over the feasible set
// and the data domain (|x| <= 1).  The factories below compute the natural
// bound 1 + lambda * radius; engines validate it against observed norms.
struct LossModel {
  LossKind kind = LossKind::hinge;
  double strong_convexity = 0.0;  // lambda >= 0
  double lipschitz_bound = 1.0;   // L > 0

  static LossModel hinge_loss(double lambda = 0.0, double radius = 1.0);
  static LossModel logistic_loss(double lambda = 0.0, double radius = 1.0);
};

// Euclidean ball of the given radius centered at the origin.
struct FeasibleSet {
  double radius = 1.0;
  double diameter() const { return 2.0 * radius; }
};

// alpha_t = 1/(lambda t) when strongly convex, 1/(2 sqrt(t)) otherwise.
struct StepsizeSchedule {
  enum class Kind { strongly_convex, convex };
  Kind kind = Kind::convex;
  double lambda = 0.0;

  static StepsizeSchedule strongly_convex(double lambda);
  static StepsizeSchedule convex();
};

/// Loss at w for a labelled example (x, y), y in {-1, +1}.
double loss_value(const LossModel& model, const Eigen::Ref<const Vec>& w,
                  const Eigen::Ref<const Vec>& x, double y);

/// A subgradient of the loss at w.  At the hinge kink (margin exactly 1)
/// the zero vector is returned; it is a valid subgradient and keeps the
/// update minimal.
Vec loss_subgradient(const LossModel& model, const Eigen::Ref<const Vec>& w,
                     const Eigen::Ref<const Vec>& x, double y);

/// Euclidean projection onto the ball.  Non-expansive and exactly
/// idempotent: points the norm test accepts are returned unchanged.
Vec project(const FeasibleSet& set, const Eigen::Ref<const Vec>& w);

/// Stepsize at round t >= 1.
double stepsize(const StepsizeSchedule& schedule, std::int64_t t);

}  // namespace gossipdp
