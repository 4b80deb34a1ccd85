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
#include <sstream>

#include "gossipdp/topology.hpp"
#include "oracles.hpp"

using namespace gossipdp;

namespace {

CommSchedule make(ScheduleMode mode, int m, double eta, int window,
                  std::uint64_t seed) {
  CommSchedule s;
  s.mode = mode;
  s.m = m;
  s.eta = eta;
  s.window = window;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("single learner always mixes trivially") {
  for (const ScheduleMode mode :
       {ScheduleMode::fixed_complete, ScheduleMode::random_pairwise_gossip,
        ScheduleMode::ring_rotation}) {
    const CommSchedule s = make(mode, 1, 0.5, 1, 3);
    const Mat a = generate_matrix(s, 17);
    CHECK(a.rows() == 1);
    CHECK(a(0, 0) == 1.0);
    CHECK(check_connectivity(s, 0));
  }
}

TEST_CASE("fixed complete is uniform") {
  const CommSchedule s = make(ScheduleMode::fixed_complete, 4, 0.1, 1, 0);
  const Mat a = generate_matrix(s, 5);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(a(i, j) == doctest::Approx(0.25));
}

TEST_CASE("infeasible thresholds are rejected") {
  CHECK_THROWS_AS(
      generate_matrix(make(ScheduleMode::fixed_complete, 4, 0.25, 1, 0), 0),
      InfeasibleThresholdError);
  CHECK_THROWS_AS(
      generate_matrix(make(ScheduleMode::random_pairwise_gossip, 4, 0.6, 4, 0),
                      1),
      InfeasibleThresholdError);
  CHECK_THROWS_AS(
      generate_matrix(make(ScheduleMode::ring_rotation, 4, 0.6, 4, 0), 1),
      InfeasibleThresholdError);
  CHECK_THROWS_AS(generate_matrix(make(ScheduleMode::fixed_complete, 0, 0.1,
                                       1, 0), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_matrix(make(ScheduleMode::fixed_complete, 2, 1.5,
                                       1, 0), 0),
                  std::invalid_argument);
}

TEST_CASE("pairwise gossip matrices for m=2 have the expected shape") {
  const double eta = 0.1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CommSchedule s =
        make(ScheduleMode::random_pairwise_gossip, 2, eta, 4, seed);
    for (std::int64_t t = 0; t < 20; ++t) {
      const Mat a = generate_matrix(s, t);
      CHECK(validate_matrix(a, eta).pass());
      CHECK(a(0, 1) == doctest::Approx(a(1, 0)));
      const double c = a(0, 1);
      const bool idle = c == 0.0;
      const bool mixing = c >= eta && c <= 0.5;
      CHECK((idle || mixing));
      CHECK(a(0, 0) == doctest::Approx(1.0 - c));
    }
  }
}

TEST_CASE("every generated matrix passes validation in every mode") {
  for (const ScheduleMode mode :
       {ScheduleMode::fixed_complete, ScheduleMode::random_pairwise_gossip,
        ScheduleMode::ring_rotation}) {
    for (const int m : {2, 3, 5, 8}) {
      const double eta = mode == ScheduleMode::fixed_complete ? 0.5 / m : 0.1;
      const CommSchedule s = make(mode, m, eta, m, 77);
      for (std::int64_t t = 0; t < 50; ++t) {
        const MatrixValidation report =
            validate_matrix(generate_matrix(s, t), eta);
        CHECK(report.pass());
        CHECK(report.diagonal_positive);
      }
    }
  }
}

TEST_CASE("validate_matrix catches the documented failures") {
  Mat good(2, 2);
  good << 0.5, 0.5, 0.5, 0.5;
  CHECK(validate_matrix(good, 0.1).pass());

  Mat bad_cols(2, 2);
  bad_cols << 0.9, 0.1, 0.2, 0.8;
  const MatrixValidation r1 = validate_matrix(bad_cols, 0.1);
  CHECK_FALSE(r1.pass());
  CHECK(r1.rows_stochastic);
  CHECK_FALSE(r1.cols_stochastic);

  Mat below_eta(2, 2);
  below_eta << 0.95, 0.05, 0.05, 0.95;
  const MatrixValidation r2 = validate_matrix(below_eta, 0.1);
  CHECK_FALSE(r2.pass());
  CHECK_FALSE(r2.positive_entries_above_eta);
  CHECK(r2.rows_stochastic);
  CHECK(r2.cols_stochastic);
  CHECK(r2.offenders.size() == 2);

  CHECK_THROWS_AS(validate_matrix(Mat::Zero(2, 3), 0.1),
                  std::invalid_argument);
}

TEST_CASE("phi product basics") {
  const CommSchedule s = make(ScheduleMode::fixed_complete, 4, 0.1, 1, 0);
  const Mat identity = phi_product(s, 7, 7);
  CHECK(identity.isApprox(Mat::Identity(4, 4)));
  const Mat single = phi_product(s, 8, 7);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(single(i, j) == doctest::Approx(0.25));
  CHECK_THROWS_AS(phi_product(s, 3, 5), std::invalid_argument);
}

TEST_CASE("consensus rate formulas") {
  const ConsensusRate r1 = consensus_rate(make(
      ScheduleMode::fixed_complete, 1, 0.5, 1, 0));
  CHECK(r1.theta == doctest::Approx(std::pow(0.875, -2.0)));
  CHECK(r1.theta == doctest::Approx(1.306122).epsilon(1e-5));
  CHECK(r1.beta == doctest::Approx(0.875));

  const ConsensusRate r2 = consensus_rate(make(
      ScheduleMode::fixed_complete, 2, 0.16, 1, 0));
  CHECK(r2.theta == doctest::Approx(std::pow(0.99, -2.0)));
  CHECK(r2.theta == doctest::Approx(1.020304).epsilon(1e-5));
  CHECK(r2.beta == doctest::Approx(0.99));

  // eta -> 0 limit: theta -> 1, beta -> 1
  const ConsensusRate r3 = consensus_rate(make(
      ScheduleMode::fixed_complete, 2, 1e-12, 4, 0));
  CHECK(r3.theta == doctest::Approx(1.0));
  CHECK(r3.beta == doctest::Approx(1.0));

  CHECK_THROWS_AS(consensus_rate(make(ScheduleMode::fixed_complete, 2, 0.0,
                                      1, 0)),
                  std::invalid_argument);
}

TEST_CASE("geometric consensus bound holds along products") {
  for (const ScheduleMode mode :
       {ScheduleMode::fixed_complete, ScheduleMode::random_pairwise_gossip,
        ScheduleMode::ring_rotation}) {
    for (const int m : {2, 4, 8}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const double eta =
            mode == ScheduleMode::fixed_complete ? 0.5 / m : 0.1;
        const CommSchedule s = make(mode, m, eta, m, seed);
        const ConsensusRate rate = consensus_rate(s);
        for (const std::int64_t start : {std::int64_t{0}, std::int64_t{5}}) {
          Mat phi = Mat::Identity(m, m);
          for (std::int64_t d = 1; d <= 200; ++d) {
            phi = generate_matrix(s, start + d) * phi;
            const double deviation =
                (phi.array() - 1.0 / m).abs().maxCoeff();
            CHECK(deviation <=
                  rate.theta * std::pow(rate.beta, static_cast<double>(d)) +
                      1e-9);
            // products of doubly stochastic matrices stay doubly stochastic
            for (int i = 0; i < m; ++i) {
              CHECK(std::abs(phi.row(i).sum() - 1.0) < 1e-9);
              CHECK(std::abs(phi.col(i).sum() - 1.0) < 1e-9);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("phi_product matches the incremental product") {
  const CommSchedule s =
      make(ScheduleMode::ring_rotation, 3, 0.1, 3, 11);
  const ConsensusRate rate = consensus_rate(s);
  const Mat phi = phi_product(s, 20, 0);
  CHECK((phi.array() - 1.0 / 3).abs().maxCoeff() <=
        rate.theta * std::pow(rate.beta, 20.0) + 1e-9);
}

TEST_CASE("connectivity agrees with a transitive-closure oracle") {
  for (const ScheduleMode mode :
       {ScheduleMode::fixed_complete, ScheduleMode::random_pairwise_gossip,
        ScheduleMode::ring_rotation}) {
    for (const int m : {2, 3, 5}) {
      for (const int window : {1, m}) {
        const double eta =
            mode == ScheduleMode::fixed_complete ? 0.5 / m : 0.1;
        const CommSchedule s = make(mode, m, eta, window, 13);
        for (std::int64_t t0 = 0; t0 < 20; ++t0) {
          std::vector<std::vector<bool>> adj(
              static_cast<std::size_t>(m), std::vector<bool>(m, false));
          for (std::int64_t t = t0 + 1; t <= t0 + window; ++t) {
            const Mat a = generate_matrix(s, t);
            for (int i = 0; i < m; ++i)
              for (int j = 0; j < m; ++j)
                if (a(i, j) > 0.0) adj[static_cast<std::size_t>(i)][j] = true;
          }
          CHECK(check_connectivity(s, t0) ==
                oracles::floyd_warshall_strongly_connected(adj));
        }
      }
    }
  }
}

TEST_CASE("gossip windows are strongly connected by construction") {
  for (const int m : {2, 4, 8}) {
    const CommSchedule s =
        make(ScheduleMode::random_pairwise_gossip, m, 0.1, m, 21);
    for (std::int64_t t0 = 0; t0 < 50; ++t0) CHECK(check_connectivity(s, t0));
  }
}

TEST_CASE("matrix generation is deterministic") {
  const CommSchedule s =
      make(ScheduleMode::random_pairwise_gossip, 6, 0.1, 6, 99);
  for (std::int64_t t = 0; t < 25; ++t) {
    const Mat a = generate_matrix(s, t);
    const Mat b = generate_matrix(s, t);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);  // bitwise
  }
}

TEST_CASE("schedule text round trip is bit exact") {
  const CommSchedule s =
      make(ScheduleMode::random_pairwise_gossip, 5, 0.17, 5, 4242);
  std::stringstream buffer;
  save_schedule(s, 0, 12, buffer);
  const SavedSchedule loaded = load_schedule(buffer);
  CHECK(loaded.params.m == 5);
  CHECK(loaded.params.eta == 0.17);
  CHECK(loaded.params.window == 5);
  CHECK(loaded.params.seed == 4242);
  CHECK(loaded.params.mode == ScheduleMode::random_pairwise_gossip);
  CHECK(loaded.t_begin == 0);
  REQUIRE(loaded.matrices.size() == 13);
  for (std::int64_t t = 0; t <= 12; ++t) {
    const Mat a = generate_matrix(s, t);
    const Mat& b = loaded.matrices[static_cast<std::size_t>(t)];
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("schedule loader reports bad input with line numbers") {
  std::stringstream bad("gossipdp-schedule v1\nmode fixed_complete\nm 2\n");
  CHECK_THROWS_AS(load_schedule(bad), ParseError);
  std::stringstream wrong_header("not-a-schedule\n");
  CHECK_THROWS_AS(load_schedule(wrong_header), ParseError);
}

}  // TEST_SUITE
