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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gossipdp/loss.hpp"
#include "gossipdp/privacy.hpp"

using namespace gossipdp;

TEST_SUITE("privacy") {

TEST_CASE("online sensitivity formula") {
  CHECK(sensitivity_online(0.1, 4, 1.0) == doctest::Approx(0.4));
  CHECK(sensitivity_online(1.0, 1, 1.0) == doctest::Approx(2.0));
  // vanishes with the stepsize
  CHECK(sensitivity_online(1e-12, 4, 1.0) < 1e-11);
  CHECK_THROWS_AS(sensitivity_online(0.0, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sensitivity_online(0.1, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sensitivity_online(0.1, 4, 0.0), std::invalid_argument);
}

TEST_CASE("mini-batch sensitivity formula") {
  CHECK(sensitivity_minibatch(0.1, 4, 1.0, 5) == doctest::Approx(0.08));
  CHECK(sensitivity_minibatch(0.3, 9, 2.0, 1) ==
        sensitivity_online(0.3, 9, 2.0));
  CHECK(sensitivity_minibatch(1.0, 1, 1.0, 10) == doctest::Approx(0.2));
  CHECK_THROWS_AS(sensitivity_minibatch(0.1, 4, 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("laplace sampler statistics at one million draws") {
  for (const double mu : {1.0, 0.5}) {
    Rng rng = substream(404, Stream::noise, 1, 1);
    const int count = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    int nonpositive = 0;
    for (int k = 0; k < count; ++k) {
      const Vec v = laplace_vector(rng, 1, mu);
      sum += v(0);
      sum_sq += v(0) * v(0);
      if (v(0) <= 0.0) ++nonpositive;
    }
    const double mean = sum / count;
    const double second_moment = sum_sq / count;
    CHECK(std::abs(mean) < 0.005 * std::max(mu, 1.0));
    CHECK(std::abs(second_moment - 2.0 * mu * mu) < 0.02 * 2.0 * mu * mu);
    // median at zero: about half the draws on each side
    CHECK(std::abs(nonpositive / static_cast<double>(count) - 0.5) < 0.005);
  }
}

TEST_CASE("laplace sampler is deterministic from equal state") {
  Rng a = substream(7, Stream::noise, 2, 9);
  Rng b = substream(7, Stream::noise, 2, 9);
  const Vec va = laplace_vector(a, 16, 0.3);
  const Vec vb = laplace_vector(b, 16, 0.3);
  for (int k = 0; k < 16; ++k) CHECK(va(k) == vb(k));
}

TEST_CASE("laplace sampler rejects bad arguments") {
  Rng rng(1);
  CHECK_THROWS_AS(laplace_vector(rng, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laplace_vector(rng, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(laplace_vector(rng, 3, -1.0), std::invalid_argument);
}

TEST_CASE("privacy params validate epsilon") {
  PrivacyParams bad{0.0, true};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(PrivacyParams::off().validate());
}

TEST_CASE("noise scale decreases across rounds under both schedules") {
  for (const StepsizeSchedule schedule :
       {StepsizeSchedule::strongly_convex(0.5), StepsizeSchedule::convex()}) {
    const double epsilon = 0.3;
    double previous = 1e300;
    for (std::int64_t t = 1; t <= 500; ++t) {
      const double mu =
          sensitivity_online(stepsize(schedule, t), 10, 1.0) / epsilon;
      CHECK(mu < previous);
      previous = mu;
    }
  }
}

TEST_CASE("audit: differing examples with zero subgradients measure zero") {
  // Both differing examples sit in the hinge's flat region (radius 2 makes
  // satisfied margins reachable), so the two updates coincide exactly.
  const LossModel hinge = LossModel::hinge_loss();
  const FeasibleSet set{2.0};
  Vec b(2);
  b << 1.8, 0.0;
  Vec xa(2), xb(2);
  xa << 1.0, 0.0;   // margin 1.8 with y = +1
  xb << 0.8, 0.6;   // margin 1.44 with y = +1
  const Vec ga = loss_subgradient(hinge, b, xa, 1.0);
  const Vec gb = loss_subgradient(hinge, b, xb, 1.0);
  CHECK(ga.norm() == 0.0);
  CHECK(gb.norm() == 0.0);
  const Vec wa = project(set, b - 0.1 * ga);
  const Vec wb = project(set, b - 0.1 * gb);
  double l1 = 0.0;
  for (int k = 0; k < 2; ++k) l1 += std::abs(wa(k) - wb(k));
  CHECK(l1 == 0.0);
}

TEST_CASE("audit: adversarial antipodal pair attains the bound") {
  // grid over unit-circle directions, label-flipped antipodal pairs, b = 0
  const LossModel hinge = LossModel::hinge_loss();
  const FeasibleSet set{1.0};
  const double alpha = 0.1;
  const int grid = 2000;
  double max_l1 = 0.0;
  Vec b = Vec::Zero(2);
  for (int k = 0; k < grid; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / grid;
    Vec x(2);
    x << std::cos(angle), std::sin(angle);
    const Vec ga = loss_subgradient(hinge, b, x, 1.0);
    const Vec gb = loss_subgradient(hinge, b, Vec(-x), 1.0);
    const Vec wa = project(set, b - alpha * ga);
    const Vec wb = project(set, b - alpha * gb);
    double l1 = 0.0;
    for (int j = 0; j < 2; ++j) l1 += std::abs(wa(j) - wb(j));
    max_l1 = std::max(max_l1, l1);
  }
  const double bound = sensitivity_online(alpha, 2, 1.0);
  CHECK(max_l1 <= bound + 1e-12);
  CHECK(max_l1 == doctest::Approx(0.2 * std::sqrt(2.0)).epsilon(1e-5));
  CHECK(max_l1 / bound == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("audit: 1000 random adjacent trials never exceed the bound") {
  AuditConfig cfg;
  cfg.n = 2;
  cfg.m = 1;
  cfg.rounds = 50;
  cfg.loss = LossModel::hinge_loss();
  cfg.steps = StepsizeSchedule::convex();
  cfg.trials = 1000;
  cfg.seed = 2025;
  const AuditReport online = audit_sensitivity(cfg);
  CHECK(online.pass);
  CHECK(online.trials.size() == 1000);
  CHECK(online.max_ratio <= 1.0 + 1e-9);

  cfg.batch_size = 5;
  const AuditReport minibatch = audit_sensitivity(cfg);
  CHECK(minibatch.pass);
  for (const AuditTrial& trial : minibatch.trials)
    CHECK(trial.bound ==
          doctest::Approx(sensitivity_online(stepsize(cfg.steps, trial.t), 2,
                                             1.0) /
                          5.0));
}

TEST_CASE("audit rejects oversized instances") {
  AuditConfig cfg;
  cfg.n = 9;
  CHECK_THROWS_AS(audit_sensitivity(cfg), std::invalid_argument);
  cfg.n = 4;
  cfg.m = 4;
  CHECK_THROWS_AS(audit_sensitivity(cfg), std::invalid_argument);
  cfg.m = 2;
  cfg.rounds = 51;
  CHECK_THROWS_AS(audit_sensitivity(cfg), std::invalid_argument);
}

TEST_CASE("audit CSV has the documented columns") {
  AuditConfig cfg;
  cfg.trials = 3;
  const AuditReport report = audit_sensitivity(cfg);
  std::ostringstream out;
  report.write_csv(out);
  const std::string text = out.str();
  CHECK(text.rfind("trial,t,measured_l1,bound,ratio\n", 0) == 0);
}

}  // TEST_SUITE
