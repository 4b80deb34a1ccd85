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

// Test-only reference implementations, written against plain std::vector so
// they stay independent of the library's update paths.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gossipdp/privacy.hpp"
#include "gossipdp/rng.hpp"

namespace oracles {

using ScalarVec = std::vector<double>;

inline double dot(const ScalarVec& a, const ScalarVec& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

inline double norm(const ScalarVec& v) { return std::sqrt(dot(v, v)); }

// Mirrors the engine's ball projection semantics (rescale until the norm
// test passes) so trajectories can be compared bitwise.
inline void project_ball(ScalarVec& v, double radius) {
  double n = norm(v);
  while (n > radius) {
    const double scale = radius / n;
    if (scale >= 1.0) break;
    for (double& x : v) x *= scale;
    n = norm(v);
  }
}

inline ScalarVec hinge_subgradient(const ScalarVec& w, const ScalarVec& x,
                                   double y, double lambda) {
  const double margin = y * dot(w, x);
  ScalarVec g(w.size(), 0.0);
  if (margin < 1.0)
    for (std::size_t k = 0; k < w.size(); ++k) g[k] = -y * x[k];
  if (lambda > 0.0)
    for (std::size_t k = 0; k < w.size(); ++k) g[k] += lambda * w[k];
  return g;
}

inline double hinge_value(const ScalarVec& w, const ScalarVec& x, double y,
                          double lambda) {
  double value = std::max(1.0 - y * dot(w, x), 0.0);
  if (lambda > 0.0) value += 0.5 * lambda * dot(w, w);
  return value;
}

// Centralized projected online subgradient descent on a single stream,
// hinge loss, with the same noised self-average and broadcast structure as
// the m = 1 distributed engine.  Noise values are taken from the library's
// generator (the sampler has its own statistical tests); everything else is
// recomputed with plain loops.
struct CentralizedRun {
  std::vector<ScalarVec> trajectory;  // w_0 .. w_T
  std::vector<ScalarVec> broadcasts;  // round 0 .. T broadcasts
  std::vector<double> losses;         // f_t(w_t)
};

struct CentralizedConfig {
  int n = 2;
  std::int64_t rounds = 0;
  double radius = 1.0;
  double lambda = 0.0;       // hinge regularization
  double stepsize_lambda = 0.0;  // 0: 1/(2 sqrt t)
  bool private_run = false;
  double epsilon = 1.0;
  double lipschitz = 1.0;
  std::uint64_t master_seed = 0;
};

inline CentralizedRun run_centralized_hinge(
    const CentralizedConfig& cfg, const std::vector<ScalarVec>& xs,
    const std::vector<double>& ys) {
  CentralizedRun out;
  const auto alpha_at = [&](std::int64_t t) {
    return cfg.stepsize_lambda > 0.0
               ? 1.0 / (cfg.stepsize_lambda * static_cast<double>(t))
               : 1.0 / (2.0 * std::sqrt(static_cast<double>(t)));
  };
  const auto mu_at = [&](std::int64_t t) {
    return 2.0 * alpha_at(t) * std::sqrt(static_cast<double>(cfg.n)) *
           cfg.lipschitz / cfg.epsilon;
  };
  const auto noise_at = [&](std::int64_t draw, double mu) {
    ScalarVec sigma(static_cast<std::size_t>(cfg.n), 0.0);
    if (cfg.private_run) {
      gossipdp::Rng rng =
          gossipdp::substream(cfg.master_seed, gossipdp::Stream::noise, 0,
                              static_cast<std::uint64_t>(draw));
      const gossipdp::Vec v = gossipdp::laplace_vector(rng, cfg.n, mu);
      for (int k = 0; k < cfg.n; ++k) sigma[static_cast<std::size_t>(k)] = v(k);
    }
    return sigma;
  };

  ScalarVec w(static_cast<std::size_t>(cfg.n), 0.0);
  out.trajectory.push_back(w);
  ScalarVec sigma = noise_at(0, mu_at(1));
  ScalarVec bcast(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) bcast[k] = w[k] + sigma[k];
  out.broadcasts.push_back(bcast);

  for (std::int64_t t = 0; t < cfg.rounds; ++t) {
    const ScalarVec& x = xs[static_cast<std::size_t>(t)];
    const double y = ys[static_cast<std::size_t>(t)];
    out.losses.push_back(hinge_value(w, x, y, cfg.lambda));

    // m = 1: the single mixing weight is 1, so b = 1 * broadcast summed
    // into a zero accumulator
    ScalarVec b(w.size(), 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) b[k] += 1.0 * bcast[k];

    const ScalarVec g = hinge_subgradient(b, x, y, cfg.lambda);
    const double alpha = alpha_at(t + 1);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = b[k] - alpha * g[k];
    project_ball(w, cfg.radius);
    out.trajectory.push_back(w);

    sigma = noise_at(t + 1, mu_at(t + 1));
    for (std::size_t k = 0; k < w.size(); ++k) bcast[k] = w[k] + sigma[k];
    out.broadcasts.push_back(bcast);
  }
  return out;
}

// Boolean transitive closure; the library uses BFS instead.
inline bool floyd_warshall_strongly_connected(
    std::vector<std::vector<bool>> reach) {
  const std::size_t m = reach.size();
  for (std::size_t i = 0; i < m; ++i) reach[i][i] = true;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!reach[i][j]) return false;
  return true;
}

}  // namespace oracles
