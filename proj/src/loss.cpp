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

#include "gossipdp/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace gossipdp {

namespace {

void check_pair(const Eigen::Ref<const Vec>& w,
                const Eigen::Ref<const Vec>& x) {
  if (w.size() != x.size())
    throw std::invalid_argument("loss: dimension mismatch between w and x");
}

}  // namespace

LossModel LossModel::hinge_loss(double lambda, double radius) {
  if (lambda < 0.0)
    throw std::invalid_argument("loss: strong convexity must be >= 0");
  return {LossKind::hinge, lambda, 1.0 + lambda * radius};
}

LossModel LossModel::logistic_loss(double lambda, double radius) {
  if (lambda < 0.0)
    throw std::invalid_argument("loss: strong convexity must be >= 0");
  return {LossKind::logistic, lambda, 1.0 + lambda * radius};
}

StepsizeSchedule StepsizeSchedule::strongly_convex(double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument(
        "stepsize: strongly convex schedule requires lambda > 0");
  return {Kind::strongly_convex, lambda};
}

StepsizeSchedule StepsizeSchedule::convex() { return {Kind::convex, 0.0}; }

double loss_value(const LossModel& model, const Eigen::Ref<const Vec>& w,
                  const Eigen::Ref<const Vec>& x, double y) {
  check_pair(w, x);
  const double margin = y * ordered_dot(w, x);
  double value;
  if (model.kind == LossKind::hinge) {
    value = std::max(1.0 - margin, 0.0);
  } else {
    // log(1 + exp(-margin)) without overflow on either tail
    const double z = -margin;
    value = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  }
  if (model.strong_convexity > 0.0)
    value += 0.5 * model.strong_convexity * ordered_squared_norm(w);
  return value;
}

Vec loss_subgradient(const LossModel& model, const Eigen::Ref<const Vec>& w,
                     const Eigen::Ref<const Vec>& x, double y) {
  check_pair(w, x);
  const double margin = y * ordered_dot(w, x);
  Vec g;
  if (model.kind == LossKind::hinge) {
    if (margin < 1.0)
      g = -y * x;
    else
      g = Vec::Zero(w.size());
  } else {
    const double slope = 1.0 / (1.0 + std::exp(margin));
    g = (-y * slope) * x;
  }
  if (model.strong_convexity > 0.0) g += model.strong_convexity * w;
  return g;
}

Vec project(const FeasibleSet& set, const Eigen::Ref<const Vec>& w) {
  if (!(set.radius > 0.0))
    throw std::invalid_argument("project: radius must be > 0");
  Vec out = w;
  double norm = ordered_norm(out);
  while (norm > set.radius) {
    const double scale = set.radius / norm;
    if (scale >= 1.0) break;  // sub-ulp overshoot; already on the boundary
    out *= scale;
    norm = ordered_norm(out);
  }
  return out;
}

double stepsize(const StepsizeSchedule& schedule, std::int64_t t) {
  if (t < 1)
    throw std::invalid_argument("stepsize: round indexing starts at 1");
  if (schedule.kind == StepsizeSchedule::Kind::strongly_convex) {
    if (!(schedule.lambda > 0.0))
      throw std::invalid_argument(
          "stepsize: strongly convex schedule requires lambda > 0");
    return 1.0 / (schedule.lambda * static_cast<double>(t));
  }
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(t)));
}

}  // namespace gossipdp
