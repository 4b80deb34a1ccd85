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

#include "gossipdp/privacy.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "gossipdp/util.hpp"

namespace gossipdp {

void PrivacyParams::validate() const {
  if (enabled && !(epsilon > 0.0))
    throw std::invalid_argument("privacy: epsilon must be > 0 when enabled");
}

double sensitivity_online(double alpha_t, int n, double lipschitz_bound) {
  if (!(alpha_t > 0.0))
    throw std::invalid_argument("sensitivity: alpha_t must be > 0");
  if (n < 1) throw std::invalid_argument("sensitivity: dimension must be >= 1");
  if (!(lipschitz_bound > 0.0))
    throw std::invalid_argument("sensitivity: L must be > 0");
  return 2.0 * alpha_t * std::sqrt(static_cast<double>(n)) * lipschitz_bound;
}

double sensitivity_minibatch(double alpha_t, int n, double lipschitz_bound,
                             int batch_size) {
  if (batch_size < 1)
    throw std::invalid_argument("sensitivity: batch size must be >= 1");
  return sensitivity_online(alpha_t, n, lipschitz_bound) /
         static_cast<double>(batch_size);
}

Vec laplace_vector(Rng& rng, int n, double mu) {
  if (n < 1)
    throw std::invalid_argument("laplace_vector: dimension must be >= 1");
  if (!(mu > 0.0))
    throw std::invalid_argument("laplace_vector: scale must be > 0");
  Vec sigma(n);
  for (int j = 0; j < n; ++j) {
    double u, tail;
    do {
      u = rng.uniform01() - 0.5;
      tail = 1.0 - 2.0 * std::abs(u);
    } while (!(tail > 0.0));
    const double sign = u < 0.0 ? -1.0 : 1.0;
    sigma(j) = -mu * sign * std::log(tail);
  }
  return sigma;
}

namespace {

// Uniform draw from the ball of the given radius.
Vec ball_point(Rng& rng, int n, double radius) {
  Vec x(n);
  double norm_sq;
  do {
    for (int j = 0; j < n; ++j) x(j) = rng.normal();
    norm_sq = ordered_squared_norm(x);
  } while (!(norm_sq > 0.0));
  const double r =
      radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(n));
  return x * (r / std::sqrt(norm_sq));
}

}  // namespace

AuditReport audit_sensitivity(const AuditConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 8)
    throw std::invalid_argument("audit: n must lie in [1, 8]");
  if (cfg.m < 1 || cfg.m > 3)
    throw std::invalid_argument("audit: m must lie in [1, 3]");
  if (cfg.rounds < 1 || cfg.rounds > 50)
    throw std::invalid_argument("audit: rounds must lie in [1, 50]");
  if (cfg.batch_size < 1)
    throw std::invalid_argument("audit: batch size must be >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("audit: trials must be >= 1");

  AuditReport report;
  report.trials.reserve(static_cast<std::size_t>(cfg.trials));
  const int h = cfg.batch_size;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng =
        substream(cfg.seed, Stream::audit, static_cast<std::uint64_t>(trial));
    const std::int64_t t =
        1 + static_cast<std::int64_t>(
                rng.below(static_cast<std::uint64_t>(cfg.rounds)));
    const double alpha = stepsize(cfg.steps, t);

    // shared state: the averaged point the step differentiates at
    const Vec b = ball_point(rng, cfg.n, cfg.set.radius);

    // batch with one swapped entry; shared examples come first so both
    // streams agree everywhere else
    Vec grad_sum = Vec::Zero(cfg.n);
    for (int k = 0; k + 1 < h; ++k) {
      const Vec x = ball_point(rng, cfg.n, 1.0);
      const double y = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      grad_sum += loss_subgradient(cfg.loss, b, x, y);
    }
    const Vec x_a = ball_point(rng, cfg.n, 1.0);
    const double y_a = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    const Vec x_b = ball_point(rng, cfg.n, 1.0);
    const double y_b = rng.uniform01() < 0.5 ? -1.0 : 1.0;

    const Vec mean_a =
        (grad_sum + loss_subgradient(cfg.loss, b, x_a, y_a)) /
        static_cast<double>(h);
    const Vec mean_b =
        (grad_sum + loss_subgradient(cfg.loss, b, x_b, y_b)) /
        static_cast<double>(h);
    const Vec w_a = project(cfg.set, b - alpha * mean_a);
    const Vec w_b = project(cfg.set, b - alpha * mean_b);

    double measured = 0.0;
    for (int j = 0; j < cfg.n; ++j) measured += std::abs(w_a(j) - w_b(j));
    const double bound =
        sensitivity_minibatch(alpha, cfg.n, cfg.loss.lipschitz_bound, h);
    const double ratio = measured / bound;
    report.trials.push_back({trial, t, measured, bound, ratio});
    if (ratio > report.max_ratio) report.max_ratio = ratio;
  }
  report.pass = report.max_ratio <= 1.0 + 1e-9;
  return report;
}

void AuditReport::write_csv(std::ostream& out) const {
  out << "trial,t,measured_l1,bound,ratio\n";
  for (const auto& tr : trials) {
    out << tr.trial << ',' << tr.t << ',' << format_g17(tr.measured_l1) << ','
        << format_g17(tr.bound) << ',' << format_g17(tr.ratio) << '\n';
  }
}

}  // namespace gossipdp
