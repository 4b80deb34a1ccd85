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

#include "gossipdp/engine_online.hpp"

#include <chrono>
#include <ostream>
#include <stdexcept>

#include "gossipdp/rng.hpp"
#include "gossipdp/util.hpp"

namespace gossipdp {

void OnlineRunConfig::validate() const {
  if (m < 1) throw std::invalid_argument("run: m must be >= 1");
  if (n < 1) throw std::invalid_argument("run: n must be >= 1");
  if (rounds < 0) throw std::invalid_argument("run: rounds must be >= 0");
  if (data == nullptr) throw std::invalid_argument("run: data is required");
  if (data->dim() != n)
    throw std::invalid_argument("run: dataset dimension does not match n");
  if (static_cast<int>(shards.size()) != m)
    throw std::invalid_argument("run: need one shard per learner");
  if (schedule.m != m)
    throw std::invalid_argument("run: schedule learner count does not match m");
  if (reference < 0 || reference >= m)
    throw std::invalid_argument("run: reference learner out of range");
  privacy.validate();
  if (!(loss.lipschitz_bound > 0.0))
    throw std::invalid_argument("run: Lipschitz bound must be > 0");
  if (!initial_points.empty()) {
    if (static_cast<int>(initial_points.size()) != m)
      throw std::invalid_argument("run: need one initial point per learner");
    for (const Vec& w0 : initial_points) {
      if (w0.size() != n)
        throw std::invalid_argument("run: initial point dimension mismatch");
      if (ordered_norm(w0) > set.radius + 1e-12)
        throw std::invalid_argument(
            "run: initial points must lie in the feasible set");
    }
  }
  for (const auto& shard : shards) {
    if (static_cast<std::int64_t>(shard.size()) < rounds)
      throw RunTruncatedError(
          "run: a learner's stream ends after " +
              std::to_string(shard.size()) + " of " + std::to_string(rounds) +
              " rounds",
          static_cast<std::int64_t>(shard.size()));
  }
}

Vec weighted_average(const Eigen::Ref<const Eigen::RowVectorXd>& weights,
                     const std::vector<Vec>& broadcasts) {
  if (static_cast<std::size_t>(weights.size()) != broadcasts.size())
    throw std::invalid_argument(
        "weighted_average: weight/vector count mismatch");
  if (broadcasts.empty())
    throw std::invalid_argument("weighted_average: empty input");
  Vec acc = Vec::Zero(broadcasts[0].size());
  for (std::size_t j = 0; j < broadcasts.size(); ++j)
    acc += weights(static_cast<Eigen::Index>(j)) * broadcasts[j];
  return acc;
}

double broadcast_noise_scale(const OnlineRunConfig& cfg, std::int64_t t) {
  if (!cfg.privacy.enabled) return 0.0;
  return sensitivity_online(stepsize(cfg.steps, t), cfg.n,
                            cfg.loss.lipschitz_bound) /
         cfg.privacy.epsilon;
}

namespace {

void check_subgradient_norm(const Vec& g, const LossModel& loss) {
  if (ordered_norm(g) > loss.lipschitz_bound + 1e-9)
    throw std::runtime_error(
        "run: observed subgradient norm exceeds the configured Lipschitz "
        "bound");
}

Vec noise_for(const OnlineRunConfig& cfg, int learner, std::int64_t draw_index,
              double mu) {
  if (!cfg.privacy.enabled) return Vec::Zero(cfg.n);
  Rng rng = substream(cfg.master_seed, Stream::noise,
                      static_cast<std::uint64_t>(learner),
                      static_cast<std::uint64_t>(draw_index));
  return laplace_vector(rng, cfg.n, mu);
}

}  // namespace

LearnerState learner_step(const LearnerState& state,
                          const Eigen::Ref<const Vec>& b,
                          const Eigen::Ref<const Vec>& x, double y,
                          std::int64_t t, const OnlineRunConfig& cfg) {
  const double alpha = stepsize(cfg.steps, t + 1);
  const Vec g = loss_subgradient(cfg.loss, b, x, y);
  check_subgradient_norm(g, cfg.loss);
  LearnerState next;
  next.index = state.index;
  next.w = project(cfg.set, b - alpha * g);
  const double mu = broadcast_noise_scale(cfg, t + 1);
  const Vec sigma = cfg.privacy.enabled
                        ? noise_for(cfg, state.index, t + 1, mu)
                        : Vec::Zero(cfg.n);
  next.broadcast = next.w + sigma;
  return next;
}

RunRecord run_online(const OnlineRunConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const int m = cfg.m;
  const int n = cfg.n;
  const std::int64_t T = cfg.rounds;

  RunRecord rec;
  rec.m = m;
  rec.n = n;
  rec.rounds = T;
  rec.reference = cfg.reference;
  rec.privacy_enabled = cfg.privacy.enabled;
  rec.epsilon = cfg.privacy.epsilon;
  rec.losses.resize(T, m);
  rec.noise_l2.resize(T, m);
  rec.noise_mu.resize(static_cast<std::size_t>(T));
  rec.initial_noise_l2.resize(static_cast<std::size_t>(m), 0.0);
  rec.ref_trajectory.resize(T + 1, n);

  std::vector<Vec> w(static_cast<std::size_t>(m));
  std::vector<Vec> bcast(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    w[static_cast<std::size_t>(i)] =
        cfg.initial_points.empty() ? Vec::Zero(n)
                                   : cfg.initial_points[static_cast<std::size_t>(i)];

  // round-0 broadcast; the stepsize schedule starts at t = 1, so the first
  // draw is calibrated with S(1)
  rec.initial_noise_mu = broadcast_noise_scale(cfg, 1);
  for (int i = 0; i < m; ++i) {
    const Vec sigma = cfg.privacy.enabled
                          ? noise_for(cfg, i, 0, rec.initial_noise_mu)
                          : Vec::Zero(n);
    rec.initial_noise_l2[static_cast<std::size_t>(i)] = ordered_norm(sigma);
    bcast[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + sigma;
  }

  const auto track_norm = [&](const Vec& v) {
    const double norm = ordered_norm(v);
    if (norm > rec.max_param_norm) rec.max_param_norm = norm;
    if (norm > cfg.set.radius + 1e-12)
      throw std::runtime_error("run: parameter escaped the feasible set");
  };
  for (const Vec& wi : w) track_norm(wi);

  if (cfg.record_full_trajectories) {
    Mat snap(m, n);
    for (int i = 0; i < m; ++i)
      snap.row(i) = w[static_cast<std::size_t>(i)].transpose();
    rec.full_trajectories.push_back(snap);
  }

  Vec x(n);
  for (std::int64_t t = 0; t < T; ++t) {
    const Vec& w_ref = w[static_cast<std::size_t>(cfg.reference)];
    rec.ref_trajectory.row(t) = w_ref.transpose();
    for (int i = 0; i < m; ++i) {
      const int row = cfg.shards[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(t)];
      x = cfg.data->features.row(row).transpose();
      rec.losses(t, i) = loss_value(cfg.loss, w_ref, x, cfg.data->labels(row));
    }

    const Mat a = generate_matrix(cfg.schedule, t + 1);
    std::vector<Vec> b(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      b[static_cast<std::size_t>(i)] = weighted_average(a.row(i), bcast);

    const double alpha = stepsize(cfg.steps, t + 1);
    const double mu = broadcast_noise_scale(cfg, t + 1);
    rec.noise_mu[static_cast<std::size_t>(t)] = mu;
    for (int i = 0; i < m; ++i) {
      const int row = cfg.shards[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(t)];
      x = cfg.data->features.row(row).transpose();
      const Vec g = loss_subgradient(cfg.loss, b[static_cast<std::size_t>(i)],
                                     x, cfg.data->labels(row));
      check_subgradient_norm(g, cfg.loss);
      Vec& wi = w[static_cast<std::size_t>(i)];
      wi = project(cfg.set, b[static_cast<std::size_t>(i)] - alpha * g);
      track_norm(wi);
      const Vec sigma = cfg.privacy.enabled ? noise_for(cfg, i, t + 1, mu)
                                            : Vec::Zero(n);
      rec.noise_l2(t, i) = ordered_norm(sigma);
      bcast[static_cast<std::size_t>(i)] = wi + sigma;
    }

    if (cfg.record_full_trajectories) {
      Mat snap(m, n);
      for (int i = 0; i < m; ++i)
        snap.row(i) = w[static_cast<std::size_t>(i)].transpose();
      rec.full_trajectories.push_back(snap);
    }
  }
  rec.ref_trajectory.row(T) =
      w[static_cast<std::size_t>(cfg.reference)].transpose();
  rec.final_params = w;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return rec;
}

double RunRecord::total_loss() const {
  double acc = 0.0;
  for (std::int64_t t = 0; t < rounds; ++t)
    for (int i = 0; i < m; ++i) acc += losses(t, i);
  return acc;
}

void RunRecord::write_csv(std::ostream& out, CsvMode mode) const {
  out << "t,learner,loss,noise_l2,cum_regret_normalized\n";
  const bool have_regret =
      static_cast<std::int64_t>(cum_regret_normalized.size()) == rounds;
  for (std::int64_t t = 0; t < rounds; ++t) {
    const int i_begin = mode == CsvMode::reference_only ? reference : 0;
    const int i_end = mode == CsvMode::reference_only ? reference + 1 : m;
    for (int i = i_begin; i < i_end; ++i) {
      out << t << ',' << i << ',' << format_g17(losses(t, i)) << ','
          << format_g17(noise_l2(t, i)) << ',';
      if (have_regret)
        out << format_g17(cum_regret_normalized[static_cast<std::size_t>(t)]);
      out << '\n';
    }
  }
}

void RunRecord::write_trajectory(std::ostream& out) const {
  out << "gossipdp-trajectory v1\n";
  out << "n " << n << " rounds " << rounds << " reference " << reference
      << "\n";
  for (std::int64_t t = 0; t <= rounds; ++t) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_g17(ref_trajectory(t, j));
    }
    out << '\n';
  }
}

}  // namespace gossipdp
