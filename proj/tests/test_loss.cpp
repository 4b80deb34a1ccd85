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

#include "gossipdp/loss.hpp"
#include "gossipdp/rng.hpp"

using namespace gossipdp;

namespace {

Vec random_ball_point(Rng& rng, int n, double radius) {
  Vec v(n);
  double ns;
  do {
    for (int k = 0; k < n; ++k) v(k) = rng.normal();
    ns = v.squaredNorm();
  } while (!(ns > 0.0));
  return v * (radius * std::pow(rng.uniform01(), 1.0 / n) / std::sqrt(ns));
}

}  // namespace

TEST_SUITE("loss") {

TEST_CASE("hinge values") {
  const LossModel hinge = LossModel::hinge_loss();
  Vec w = Vec::Zero(3);
  Vec x(3);
  x << 0.5, -0.2, 0.1;
  CHECK(loss_value(hinge, w, x, 1.0) == doctest::Approx(1.0));
  CHECK(loss_value(hinge, w, x, -1.0) == doctest::Approx(1.0));

  // margin 3: zero loss
  Vec w2(3);
  w2 << 6.0, 0.0, 0.0;
  CHECK(loss_value(hinge, w2, x, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("logistic value at the origin is log 2") {
  const LossModel logistic = LossModel::logistic_loss();
  Vec w = Vec::Zero(4);
  Vec x(4);
  x << 1.0, 0.0, 0.0, 0.0;
  CHECK(loss_value(logistic, w, x, 1.0) == doctest::Approx(std::log(2.0)));
  CHECK(loss_value(logistic, w, x, 1.0) == doctest::Approx(0.6931).epsilon(1e-3));
}

TEST_CASE("dimension mismatch is rejected") {
  const LossModel hinge = LossModel::hinge_loss();
  Vec w = Vec::Zero(3);
  Vec x = Vec::Zero(4);
  CHECK_THROWS_AS(loss_value(hinge, w, x, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(loss_subgradient(hinge, w, x, 1.0), std::invalid_argument);
}

TEST_CASE("hinge subgradient branches") {
  const LossModel hinge = LossModel::hinge_loss();
  Vec x(2);
  x << 0.6, 0.8;

  // satisfied margin: flat region
  Vec w_far(2);
  w_far << 3.0, 4.0;
  CHECK(loss_subgradient(hinge, w_far, x, 1.0).norm() == 0.0);

  // violated margin: -y x
  Vec w0 = Vec::Zero(2);
  const Vec g = loss_subgradient(hinge, w0, x, 1.0);
  CHECK(g(0) == doctest::Approx(-0.6));
  CHECK(g(1) == doctest::Approx(-0.8));

  // margin exactly 1: the kink returns zero
  Vec w_kink(2);
  w_kink << 0.6, 0.8;  // <w, x> = 1 exactly
  CHECK(ordered_dot(w_kink, x) == doctest::Approx(1.0));
  CHECK(loss_subgradient(hinge, w_kink, x, 1.0).norm() == 0.0);
}

TEST_CASE("kink subgradient satisfies the subgradient inequality on samples") {
  const LossModel hinge = LossModel::hinge_loss();
  Vec x(2);
  x << 0.6, 0.8;
  Vec w(2);
  w << 0.6, 0.8;
  const Vec g = loss_subgradient(hinge, w, x, 1.0);
  const double fw = loss_value(hinge, w, x, 1.0);
  Rng rng(99);
  for (int k = 0; k < 1000; ++k) {
    const Vec v = random_ball_point(rng, 2, 2.0);
    const double fv = loss_value(hinge, v, x, 1.0);
    CHECK(fv - fw - g.dot(v - w) >= -1e-9);
  }
}

TEST_CASE("subgradient validity for both loss kinds") {
  Rng rng(2024);
  for (const LossModel& model :
       {LossModel::hinge_loss(), LossModel::logistic_loss(),
        LossModel::hinge_loss(0.1, 1.0)}) {
    for (int k = 0; k < 1000; ++k) {
      const Vec w = random_ball_point(rng, 5, 1.0);
      const Vec x = random_ball_point(rng, 5, 1.0);
      const double y = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      const Vec v = random_ball_point(rng, 5, 1.0);
      const Vec g = loss_subgradient(model, w, x, y);
      const double gap = loss_value(model, v, x, y) -
                         loss_value(model, w, x, y) - g.dot(v - w);
      CHECK(gap >= -1e-9);
    }
  }
}

TEST_CASE("hinge subgradients stay within the Lipschitz bound") {
  Rng rng(5);
  const LossModel hinge = LossModel::hinge_loss();
  const LossModel hinge_reg = LossModel::hinge_loss(0.1, 1.0);
  CHECK(hinge_reg.lipschitz_bound == doctest::Approx(1.1));
  for (int k = 0; k < 1000; ++k) {
    const Vec w = random_ball_point(rng, 6, 1.0);
    const Vec x = random_ball_point(rng, 6, 1.0);
    const double y = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    CHECK(loss_subgradient(hinge, w, x, y).norm() <= 1.0 + 1e-12);
    CHECK(loss_subgradient(hinge_reg, w, x, y).norm() <=
          hinge_reg.lipschitz_bound + 1e-12);
  }
}

TEST_CASE("projection examples") {
  Vec w(2);
  w << 0.3, 0.4;
  const Vec inside = project(FeasibleSet{1.0}, w);
  CHECK(inside(0) == 0.3);
  CHECK(inside(1) == 0.4);

  Vec far(2);
  far << 3.0, 4.0;
  const Vec scaled = project(FeasibleSet{1.0}, far);
  CHECK(scaled(0) == doctest::Approx(0.6));
  CHECK(scaled(1) == doctest::Approx(0.8));

  Vec down(2);
  down << 0.0, -6.0;
  const Vec r2 = project(FeasibleSet{2.0}, down);
  CHECK(r2(0) == doctest::Approx(0.0));
  CHECK(r2(1) == doctest::Approx(-2.0));
}

TEST_CASE("projection is exactly idempotent and non-expansive") {
  Rng rng(31);
  const FeasibleSet set{1.0};
  for (int k = 0; k < 1000; ++k) {
    Vec u(4), v(4);
    for (int j = 0; j < 4; ++j) {
      u(j) = 4.0 * (rng.uniform01() - 0.5);
      v(j) = 4.0 * (rng.uniform01() - 0.5);
    }
    const Vec pu = project(set, u);
    const Vec pv = project(set, v);
    const Vec ppu = project(set, pu);
    for (int j = 0; j < 4; ++j) CHECK(pu(j) == ppu(j));  // bitwise
    CHECK((pu - pv).norm() <= (u - v).norm() + 1e-12);
    CHECK(ordered_norm(pu) <= set.radius);
  }
}

TEST_CASE("ball diameter") {
  CHECK(FeasibleSet{1.0}.diameter() == 2.0);
  CHECK(FeasibleSet{0.5}.diameter() == 1.0);
}

TEST_CASE("stepsize schedules") {
  const StepsizeSchedule sc = StepsizeSchedule::strongly_convex(1.0);
  CHECK(stepsize(sc, 4) == doctest::Approx(0.25));
  const StepsizeSchedule cx = StepsizeSchedule::convex();
  CHECK(stepsize(cx, 4) == doctest::Approx(0.25));
  const StepsizeSchedule sc2 = StepsizeSchedule::strongly_convex(2.0);
  CHECK(stepsize(sc2, 1) == doctest::Approx(0.5));

  CHECK_THROWS_AS(stepsize(sc, 0), std::invalid_argument);
  CHECK_THROWS_AS(StepsizeSchedule::strongly_convex(0.0),
                  std::invalid_argument);

  // strictly decreasing and positive
  for (std::int64_t t = 1; t < 1000; ++t) {
    CHECK(stepsize(sc, t) > stepsize(sc, t + 1));
    CHECK(stepsize(cx, t) > stepsize(cx, t + 1));
    CHECK(stepsize(cx, t) > 0.0);
  }
}

TEST_CASE("regularized hinge includes the quadratic term") {
  const LossModel reg = LossModel::hinge_loss(0.2, 1.0);
  Vec w(2), x(2);
  w << 1.0, 0.0;
  x << 0.0, 0.0;
  // hinge part is 1 (zero margin), plus 0.1 * |w|^2
  CHECK(loss_value(reg, w, x, 1.0) == doctest::Approx(1.1));
  const Vec g = loss_subgradient(reg, w, x, 1.0);
  CHECK(g(0) == doctest::Approx(0.2));  // -y x = 0, lambda w remains
}

}  // TEST_SUITE
