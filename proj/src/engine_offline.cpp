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

#include "gossipdp/engine_offline.hpp"

#include <chrono>
#include <stdexcept>

#include "gossipdp/metrics.hpp"
#include "gossipdp/rng.hpp"

namespace gossipdp {

void OfflineRunConfig::validate() const {
  if (batch_size < 1)
    throw std::invalid_argument("offline: batch size must be >= 1");
  if (phi_reg < 0.0)
    throw std::invalid_argument("offline: phi_reg must be >= 0");
  OnlineRunConfig probe = base;
  probe.rounds = 0;  // the consumed-example check below replaces it
  probe.validate();
  const std::int64_t consumed = outer_rounds() * batch_size;
  for (const auto& shard : base.shards) {
    if (static_cast<std::int64_t>(shard.size()) < consumed)
      throw RunTruncatedError(
          "offline: a learner's shard holds " + std::to_string(shard.size()) +
              " of " + std::to_string(consumed) + " required examples",
          static_cast<std::int64_t>(shard.size()) / batch_size);
  }
  for (const int idx : eval_indices) {
    if (idx < 0 || idx >= base.data->count())
      throw std::invalid_argument("offline: eval index out of range");
  }
}

Vec batch_subgradient(const LossModel& model, const Eigen::Ref<const Vec>& b,
                      const Dataset& data, std::span<const int> batch) {
  if (batch.empty())
    throw std::invalid_argument("batch_subgradient: empty batch");
  Vec acc = Vec::Zero(b.size());
  Vec x(b.size());
  for (const int row : batch) {
    x = data.features.row(row).transpose();
    acc += loss_subgradient(model, b, x, data.labels(row));
  }
  return acc / static_cast<double>(batch.size());
}

namespace {

double minibatch_noise_scale(const OfflineRunConfig& cfg, std::int64_t t) {
  if (!cfg.base.privacy.enabled) return 0.0;
  return sensitivity_minibatch(stepsize(cfg.base.steps, t), cfg.base.n,
                               cfg.base.loss.lipschitz_bound,
                               cfg.batch_size) /
         cfg.base.privacy.epsilon;
}

Vec offline_direction(const LearnerState& state,
                      const Eigen::Ref<const Vec>& b, const Dataset& data,
                      std::span<const int> batch,
                      const OfflineRunConfig& cfg) {
  Vec g = batch_subgradient(cfg.base.loss, b, data, batch);
  if (ordered_norm(g) > cfg.base.loss.lipschitz_bound + 1e-9)
    throw std::runtime_error(
        "run: observed subgradient norm exceeds the configured Lipschitz "
        "bound");
  if (cfg.phi_reg > 0.0) {
    const Vec& reg_point =
        cfg.regularize_at == OfflineRunConfig::RegularizeAt::local ? state.w
                                                                   : Vec(b);
    return cfg.phi_reg * reg_point + g;
  }
  return g;
}

}  // namespace

LearnerState offline_learner_step(const LearnerState& state,
                                  const Eigen::Ref<const Vec>& b,
                                  const Dataset& data,
                                  std::span<const int> batch, std::int64_t t,
                                  const OfflineRunConfig& cfg) {
  const double alpha = stepsize(cfg.base.steps, t + 1);
  const Vec direction = offline_direction(state, b, data, batch, cfg);
  LearnerState next;
  next.index = state.index;
  next.w = project(cfg.base.set, b - alpha * direction);
  const double mu = minibatch_noise_scale(cfg, t + 1);
  Vec sigma = Vec::Zero(cfg.base.n);
  if (cfg.base.privacy.enabled) {
    Rng rng = substream(cfg.base.master_seed, Stream::noise,
                        static_cast<std::uint64_t>(state.index),
                        static_cast<std::uint64_t>(t + 1));
    sigma = laplace_vector(rng, cfg.base.n, mu);
  }
  next.broadcast = next.w + sigma;
  return next;
}

OfflineRunResult run_offline(const OfflineRunConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const int m = cfg.base.m;
  const int n = cfg.base.n;
  const int h = cfg.batch_size;
  const std::int64_t outer = cfg.outer_rounds();
  const Dataset& data = *cfg.base.data;

  RunRecord rec;
  rec.m = m;
  rec.n = n;
  rec.rounds = outer;
  rec.reference = cfg.base.reference;
  rec.privacy_enabled = cfg.base.privacy.enabled;
  rec.epsilon = cfg.base.privacy.epsilon;
  rec.losses.resize(outer, m);
  rec.noise_l2.resize(outer, m);
  rec.noise_mu.resize(static_cast<std::size_t>(outer));
  rec.initial_noise_l2.resize(static_cast<std::size_t>(m), 0.0);
  rec.ref_trajectory.resize(outer + 1, n);

  std::vector<Vec> w(static_cast<std::size_t>(m));
  std::vector<Vec> bcast(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    w[static_cast<std::size_t>(i)] =
        cfg.base.initial_points.empty()
            ? Vec::Zero(n)
            : cfg.base.initial_points[static_cast<std::size_t>(i)];

  rec.initial_noise_mu = minibatch_noise_scale(cfg, 1);
  for (int i = 0; i < m; ++i) {
    Vec sigma = Vec::Zero(n);
    if (cfg.base.privacy.enabled) {
      Rng rng = substream(cfg.base.master_seed, Stream::noise,
                          static_cast<std::uint64_t>(i), 0);
      sigma = laplace_vector(rng, n, rec.initial_noise_mu);
    }
    rec.initial_noise_l2[static_cast<std::size_t>(i)] = ordered_norm(sigma);
    bcast[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + sigma;
  }

  const auto track_norm = [&](const Vec& v) {
    const double norm = ordered_norm(v);
    if (norm > rec.max_param_norm) rec.max_param_norm = norm;
    if (norm > cfg.base.set.radius + 1e-12)
      throw std::runtime_error("run: parameter escaped the feasible set");
  };
  for (const Vec& wi : w) track_norm(wi);

  Vec avg_sum = Vec::Zero(n);  // running sum of the reference iterates
  Vec x(n);
  for (std::int64_t t = 0; t < outer; ++t) {
    const Vec& w_ref = w[static_cast<std::size_t>(cfg.base.reference)];
    rec.ref_trajectory.row(t) = w_ref.transpose();
    for (int i = 0; i < m; ++i) {
      const auto& shard = cfg.base.shards[static_cast<std::size_t>(i)];
      double acc = 0.0;
      for (int k = 0; k < h; ++k) {
        const int row = shard[static_cast<std::size_t>(t * h + k)];
        x = data.features.row(row).transpose();
        acc += loss_value(cfg.base.loss, w_ref, x, data.labels(row));
      }
      double per_round = acc / static_cast<double>(h);
      if (cfg.phi_reg > 0.0)
        per_round += 0.5 * cfg.phi_reg * ordered_squared_norm(w_ref);
      rec.losses(t, i) = per_round;
    }

    const Mat a = generate_matrix(cfg.base.schedule, t + 1);
    std::vector<Vec> b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      b[static_cast<std::size_t>(i)] = weighted_average(a.row(i), bcast);

    const double mu = minibatch_noise_scale(cfg, t + 1);
    rec.noise_mu[static_cast<std::size_t>(t)] = mu;
    const double alpha = stepsize(cfg.base.steps, t + 1);
    for (int i = 0; i < m; ++i) {
      const auto& shard = cfg.base.shards[static_cast<std::size_t>(i)];
      const std::span<const int> batch(
          shard.data() + static_cast<std::size_t>(t * h),
          static_cast<std::size_t>(h));
      LearnerState state{i, w[static_cast<std::size_t>(i)], Vec()};
      const Vec direction = offline_direction(
          state, b[static_cast<std::size_t>(i)], data, batch, cfg);
      Vec& wi = w[static_cast<std::size_t>(i)];
      wi = project(cfg.base.set,
                   b[static_cast<std::size_t>(i)] - alpha * direction);
      track_norm(wi);
      Vec sigma = Vec::Zero(n);
      if (cfg.base.privacy.enabled) {
        Rng rng = substream(cfg.base.master_seed, Stream::noise,
                            static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(t + 1));
        sigma = laplace_vector(rng, n, mu);
      }
      rec.noise_l2(t, i) = ordered_norm(sigma);
      bcast[static_cast<std::size_t>(i)] = wi + sigma;
    }
    avg_sum += w[static_cast<std::size_t>(cfg.base.reference)];
  }
  rec.ref_trajectory.row(outer) =
      w[static_cast<std::size_t>(cfg.base.reference)].transpose();
  rec.final_params = w;

  OfflineRunResult result;
  result.averaged_iterate =
      outer > 0 ? Vec(avg_sum / static_cast<double>(outer)) : Vec::Zero(n);

  if (!cfg.eval_indices.empty() && outer > 0) {
    ExcessRiskEstimate risk;
    risk.reference = cfg.base.reference;
    risk.averaged_iterate = result.averaged_iterate;
    risk.comparator = solve_comparator(offline_objective(cfg));
    const auto mean_eval_loss = [&](const Vec& point) {
      double acc = 0.0;
      Vec xe(n);
      for (const int row : cfg.eval_indices) {
        xe = data.features.row(row).transpose();
        acc += loss_value(cfg.base.loss, point, xe, data.labels(row));
      }
      return acc / static_cast<double>(cfg.eval_indices.size());
    };
    risk.risk_avg_iterate = mean_eval_loss(risk.averaged_iterate);
    risk.risk_comparator = mean_eval_loss(risk.comparator);
    risk.gap = risk.risk_avg_iterate - risk.risk_comparator;
    result.risk = risk;
  }

  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  result.record = std::move(rec);
  return result;
}

SvmResult train_svm(const OfflineRunConfig& cfg) {
  if (cfg.base.loss.kind != LossKind::hinge)
    throw std::invalid_argument("train_svm: requires the hinge loss");
  if (cfg.eval_indices.empty())
    throw std::invalid_argument("train_svm: needs a held-out evaluation set");
  OfflineRunConfig training = cfg;
  training.eval_indices.clear();  // accuracy, not excess risk, is scored here
  const OfflineRunResult result = run_offline(training);
  SvmResult svm;
  svm.weights = result.averaged_iterate;
  svm.accuracy = accuracy(svm.weights, *cfg.base.data, cfg.eval_indices);
  return svm;
}

}  // namespace gossipdp
