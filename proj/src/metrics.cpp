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

#include "gossipdp/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "gossipdp/rng.hpp"

namespace gossipdp {

namespace {

double row_loss(const LossModel& base, double margin) {
  if (base.kind == LossKind::hinge) return std::max(1.0 - margin, 0.0);
  const double z = -margin;
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

}  // namespace

double RegretObjective::value(const Eigen::Ref<const Vec>& w) const {
  const Vec margins = labels.cwiseProduct(examples * w);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < margins.size(); ++k)
    acc += weights(k) * row_loss(base, margins(k));
  if (quad > 0.0) acc += 0.5 * quad * w.squaredNorm();
  return acc;
}

Vec RegretObjective::subgradient(const Eigen::Ref<const Vec>& w) const {
  const Vec margins = labels.cwiseProduct(examples * w);
  Vec coeff(margins.size());
  if (base.kind == LossKind::hinge) {
    for (Eigen::Index k = 0; k < margins.size(); ++k)
      coeff(k) = margins(k) < 1.0 ? -labels(k) * weights(k) : 0.0;
  } else {
    for (Eigen::Index k = 0; k < margins.size(); ++k)
      coeff(k) = -labels(k) * weights(k) / (1.0 + std::exp(margins(k)));
  }
  Vec g = examples.transpose() * coeff;
  if (quad > 0.0) g += quad * w;
  return g;
}

double RegretObjective::round_value(const Eigen::Ref<const Vec>& w,
                                    std::int64_t t) const {
  if (t < 0 || t >= rounds)
    throw std::invalid_argument("regret objective: round out of range");
  double acc = 0.0;
  const Eigen::Index begin = t * rows_per_round;
  for (Eigen::Index k = begin; k < begin + rows_per_round; ++k) {
    const double margin =
        labels(k) * examples.row(k).dot(w);
    acc += weights(k) * row_loss(base, margin);
  }
  if (quad > 0.0)
    acc += 0.5 * (quad / static_cast<double>(rounds)) * w.squaredNorm();
  return acc;
}

RegretObjective online_objective(const OnlineRunConfig& cfg) {
  cfg.validate();
  RegretObjective obj;
  obj.set = cfg.set;
  obj.base = cfg.loss;
  obj.base.strong_convexity = 0.0;
  obj.rounds = cfg.rounds;
  obj.rows_per_round = cfg.m;
  const Eigen::Index rows = cfg.rounds * cfg.m;
  obj.examples.resize(rows, cfg.n);
  obj.labels.resize(rows);
  obj.weights = Vec::Ones(rows);
  Eigen::Index k = 0;
  for (std::int64_t t = 0; t < cfg.rounds; ++t) {
    for (int i = 0; i < cfg.m; ++i, ++k) {
      const int row = cfg.shards[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(t)];
      obj.examples.row(k) = cfg.data->features.row(row);
      obj.labels(k) = cfg.data->labels(row);
    }
  }
  obj.quad = cfg.loss.strong_convexity * static_cast<double>(rows);
  return obj;
}

RegretObjective offline_objective(const OfflineRunConfig& cfg) {
  cfg.validate();
  const std::int64_t outer = cfg.outer_rounds();
  const int h = cfg.batch_size;
  RegretObjective obj;
  obj.set = cfg.base.set;
  obj.base = cfg.base.loss;
  obj.base.strong_convexity = 0.0;
  obj.rounds = outer;
  obj.rows_per_round = cfg.base.m * h;
  const Eigen::Index rows = outer * cfg.base.m * h;
  obj.examples.resize(rows, cfg.base.n);
  obj.labels.resize(rows);
  obj.weights = Vec::Constant(rows, 1.0 / static_cast<double>(h));
  Eigen::Index k = 0;
  for (std::int64_t t = 0; t < outer; ++t) {
    for (int i = 0; i < cfg.base.m; ++i) {
      for (int b = 0; b < h; ++b, ++k) {
        const int row = cfg.base.shards[static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(t * h + b)];
        obj.examples.row(k) = cfg.base.data->features.row(row);
        obj.labels(k) = cfg.base.data->labels(row);
      }
    }
  }
  // each (t, i) term carries (lambda/2 + phi/2) |w|^2
  obj.quad = static_cast<double>(outer * cfg.base.m) *
             (cfg.base.loss.strong_convexity + cfg.phi_reg);
  return obj;
}

Vec solve_comparator(const RegretObjective& obj, const ComparatorOptions& opt) {
  const Eigen::Index rows = obj.examples.rows();
  if (rows == 0) return Vec::Zero(obj.examples.cols());
  const int n = static_cast<int>(obj.examples.cols());

  // per-example scaling of the quadratic term for the stochastic phase
  const double weight_sum = obj.weights.sum();
  const double unit_quad = weight_sum > 0.0 ? obj.quad / weight_sum : 0.0;
  const StepsizeSchedule sgd_steps =
      unit_quad > 0.0 ? StepsizeSchedule::strongly_convex(unit_quad)
                      : StepsizeSchedule::convex();

  std::int64_t iterations = opt.sgd_iterations;
  if (iterations <= 0) iterations = 10 * std::max<std::int64_t>(obj.rounds, 1);

  Vec w = Vec::Zero(n);
  Vec avg = Vec::Zero(n);
  Vec x(n);
  for (std::int64_t it = 0; it < iterations; ++it) {
    const Eigen::Index k = static_cast<Eigen::Index>(it % rows);
    x = obj.examples.row(k).transpose();
    Vec g = loss_subgradient(obj.base, w, x, obj.labels(k));
    if (unit_quad > 0.0) g += unit_quad * w;
    w = project(obj.set, w - stepsize(sgd_steps, it + 1) * g);
    avg += (w - avg) / static_cast<double>(it + 1);
  }
  Vec best = obj.value(avg) <= obj.value(w) ? avg : w;
  double best_value = obj.value(best);

  // polish: coordinate and seeded random directions, shrinking radius
  std::vector<Vec> directions;
  directions.reserve(static_cast<std::size_t>(2 * n) +
                     static_cast<std::size_t>(opt.polish_random_directions));
  for (int j = 0; j < n; ++j) {
    Vec d = Vec::Zero(n);
    d(j) = 1.0;
    directions.push_back(d);
    directions.push_back(-d);
  }
  Rng rng = substream(opt.seed, Stream::comparator);
  for (int r = 0; r < opt.polish_random_directions; ++r) {
    Vec d(n);
    double ns;
    do {
      for (int j = 0; j < n; ++j) d(j) = rng.normal();
      ns = ordered_squared_norm(d);
    } while (!(ns > 0.0));
    directions.push_back(d / std::sqrt(ns));
  }

  std::int64_t evaluations = 0;
  double radius = opt.polish_initial_radius * obj.set.radius;
  while (radius > opt.polish_min_radius &&
         evaluations < opt.polish_max_evaluations) {
    bool improved = false;
    for (const Vec& d : directions) {
      if (evaluations >= opt.polish_max_evaluations) break;
      const Vec candidate = project(obj.set, best + radius * d);
      const double candidate_value = obj.value(candidate);
      ++evaluations;
      if (candidate_value < best_value) {
        best = candidate;
        best_value = candidate_value;
        improved = true;
      }
    }
    if (!improved) radius *= 0.5;
  }
  return best;
}

namespace {

RegretReport regret_against(const RunRecord& record,
                            const RegretObjective& objective,
                            const Vec& comparator) {
  if (record.rounds != objective.rounds)
    throw std::invalid_argument(
        "empirical_regret: record and objective round counts differ");
  if (record.losses.rows() != record.rounds)
    throw std::invalid_argument("empirical_regret: loss history missing");
  RegretReport report;
  report.comparator = comparator;
  report.comparator_objective = objective.value(comparator);
  report.privacy_enabled = record.privacy_enabled;
  report.cumulative.resize(static_cast<std::size_t>(record.rounds));
  report.normalized.resize(static_cast<std::size_t>(record.rounds));
  double trajectory = 0.0;
  double hindsight = 0.0;
  for (std::int64_t t = 0; t < record.rounds; ++t) {
    for (int i = 0; i < record.m; ++i) trajectory += record.losses(t, i);
    hindsight += objective.round_value(comparator, t);
    const double r = trajectory - hindsight;
    report.cumulative[static_cast<std::size_t>(t)] = r;
    report.normalized[static_cast<std::size_t>(t)] =
        r / static_cast<double>(t + 1);
  }
  return report;
}

}  // namespace

RegretReport empirical_regret(const RunRecord& record,
                              const RegretObjective& objective,
                              const ComparatorOptions& options) {
  return regret_against(record, objective,
                        solve_comparator(objective, options));
}

RegretReport empirical_regret(RunRecord& record,
                              const RegretObjective& objective,
                              const Vec& comparator) {
  RegretReport report = regret_against(record, objective, comparator);
  record.cum_regret_normalized = report.normalized;
  return report;
}

namespace {

void check_bound_inputs(const BoundInputs& in) {
  if (in.m < 1) throw std::invalid_argument("bound: m must be >= 1");
  if (in.T < 1) throw std::invalid_argument("bound: T must be >= 1");
  if (in.n < 1) throw std::invalid_argument("bound: n must be >= 1");
  if (!(in.L > 0.0)) throw std::invalid_argument("bound: L must be > 0");
  if (!(in.R > 0.0)) throw std::invalid_argument("bound: R must be > 0");
  if (!(in.epsilon > 0.0))
    throw std::invalid_argument("bound: epsilon must be > 0");
  if (!(in.beta >= 0.0 && in.beta < 1.0))
    throw std::invalid_argument("bound: beta must lie in [0, 1)");
  if (!(in.theta >= 1.0)) throw std::invalid_argument("bound: theta must be >= 1");
}

}  // namespace

double theorem2_bound(const BoundInputs& in, StepsizeSchedule::Kind kind) {
  check_bound_inputs(in);
  const double m = static_cast<double>(in.m);
  const double T = static_cast<double>(in.T);
  const double network = 3.0 * in.beta * in.theta * m * in.L / (1.0 - in.beta);
  const double path_coeff = in.R + network + 6.5 * in.L;
  const double noise_coeff = network + (2.0 * in.L + 1.0) / (2.0 * m);
  const double inv_eps = std::isinf(in.epsilon) ? 0.0 : 1.0 / in.epsilon;
  const double noise_mass = 2.0 * std::sqrt(2.0) * m * in.n * in.L * inv_eps;
  if (kind == StepsizeSchedule::Kind::strongly_convex) {
    if (!(in.lambda > 0.0))
      throw std::invalid_argument(
          "theorem2_bound: strongly convex case requires lambda > 0");
    const double horizon = 1.0 + std::log(T);
    return (m * in.L / in.lambda) * path_coeff * horizon +
           noise_coeff * (noise_mass / in.lambda) * horizon + m * in.R / 2.0;
  }
  const double horizon = std::sqrt(T) - 0.5;
  return 2.0 * m * in.L * path_coeff * horizon +
         noise_coeff * noise_mass * horizon + m * in.R / 2.0;
}

double offline_utility_bound(const BoundInputs& in, double regret) {
  check_bound_inputs(in);
  if (!(in.lambda > 0.0))
    throw UnsupportedCaseError(
        "offline_utility_bound: requires strong convexity (lambda > 0)");
  if (in.h < 1) throw std::invalid_argument("bound: h must be >= 1");
  if (in.T < in.h)
    throw std::invalid_argument("bound: T must be >= h");
  if (!(in.gamma > 0.0 && in.gamma < 1.0))
    throw std::invalid_argument("bound: gamma must lie in (0, 1)");
  if (regret < 0.0)
    throw std::invalid_argument("bound: regret must be >= 0");
  const double m = static_cast<double>(in.m);
  const double T = static_cast<double>(in.T);
  const double h = static_cast<double>(in.h);
  const double first = h * h * regret / (m * T);
  const double second = 4.0 *
                        std::sqrt(in.L * in.L * std::log(T / h) / in.lambda) *
                        h * std::sqrt(h * regret / m) / T;
  const double third = std::max(16.0 * in.L * in.L / in.lambda, 6.0) * h *
                       std::log(1.0 / in.gamma) / T;
  return first + second + third;
}

double centralized_risk_bound(const BoundInputs& in, double regret) {
  BoundInputs c = in;
  c.m = 1;
  c.h = 1;
  return offline_utility_bound(c, regret);
}

double centralized_minibatch_risk_bound(const BoundInputs& in, double regret) {
  BoundInputs c = in;
  c.m = 1;
  return offline_utility_bound(c, regret);
}

double accuracy(const Eigen::Ref<const Vec>& w, const Dataset& data,
                std::span<const int> indices) {
  if (indices.empty())
    throw std::invalid_argument("accuracy: evaluation set is empty");
  long correct = 0;
  for (const int row : indices) {
    const double margin =
        data.labels(row) * data.features.row(row).dot(w);
    if (margin > 0.0) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

double accuracy(const Eigen::Ref<const Vec>& w, const Dataset& data) {
  if (data.count() == 0)
    throw std::invalid_argument("accuracy: evaluation set is empty");
  std::vector<int> all(static_cast<std::size_t>(data.count()));
  for (int i = 0; i < data.count(); ++i) all[static_cast<std::size_t>(i)] = i;
  return accuracy(w, data, all);
}

}  // namespace gossipdp
