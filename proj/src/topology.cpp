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

#include "gossipdp/topology.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gossipdp/rng.hpp"
#include "gossipdp/util.hpp"

namespace gossipdp {

namespace {

// Fraction of candidate pairs that actually gossip in a matching round.
constexpr double kGossipPairProbability = 0.8;

void check_schedule(const CommSchedule& s) {
  if (s.m < 1) throw std::invalid_argument("schedule: m must be >= 1");
  if (!(s.eta > 0.0 && s.eta < 1.0))
    throw std::invalid_argument("schedule: eta must lie in (0, 1)");
  if (s.window < 1)
    throw std::invalid_argument("schedule: window must be >= 1");
}

// (1 - c) I + c P with P the cyclic shift; doubly stochastic, every positive
// entry in {c, 1 - c} >= eta, diagonal positive, and the support contains
// the full directed ring, so a single round is already strongly connected.
Mat ring_matrix(const CommSchedule& s, std::int64_t t) {
  Rng rng = substream(s.seed, Stream::schedule, static_cast<std::uint64_t>(t));
  const double c = rng.uniform(s.eta, 0.5);
  Mat a = Mat::Zero(s.m, s.m);
  for (int i = 0; i < s.m; ++i) {
    a(i, i) = 1.0 - c;
    a(i, (i + 1) % s.m) += c;
  }
  return a;
}

Mat gossip_matrix(const CommSchedule& s, std::int64_t t) {
  Rng rng = substream(s.seed, Stream::schedule, static_cast<std::uint64_t>(t));
  std::vector<int> order(static_cast<std::size_t>(s.m));
  std::iota(order.begin(), order.end(), 0);
  for (int k = s.m - 1; k > 0; --k) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k + 1)));
    std::swap(order[static_cast<std::size_t>(k)],
              order[static_cast<std::size_t>(j)]);
  }
  Mat a = Mat::Identity(s.m, s.m);
  for (int k = 0; k + 1 < s.m; k += 2) {
    const bool active = rng.uniform01() < kGossipPairProbability;
    if (!active) continue;
    const double c = rng.uniform(s.eta, 0.5);
    const int i = order[static_cast<std::size_t>(k)];
    const int j = order[static_cast<std::size_t>(k + 1)];
    a(i, i) = 1.0 - c;
    a(j, j) = 1.0 - c;
    a(i, j) = c;
    a(j, i) = c;
  }
  return a;
}

}  // namespace

const char* to_string(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::fixed_complete:
      return "fixed_complete";
    case ScheduleMode::random_pairwise_gossip:
      return "random_pairwise_gossip";
    case ScheduleMode::ring_rotation:
      return "ring_rotation";
  }
  return "unknown";
}

ScheduleMode schedule_mode_from_string(const std::string& name) {
  if (name == "fixed_complete") return ScheduleMode::fixed_complete;
  if (name == "random_pairwise_gossip")
    return ScheduleMode::random_pairwise_gossip;
  if (name == "ring_rotation") return ScheduleMode::ring_rotation;
  throw std::invalid_argument("schedule: unknown mode '" + name + "'");
}

Mat generate_matrix(const CommSchedule& s, std::int64_t t) {
  check_schedule(s);
  if (t < 0) throw std::invalid_argument("schedule: round must be >= 0");
  if (s.m == 1) return Mat::Ones(1, 1);
  switch (s.mode) {
    case ScheduleMode::fixed_complete:
      if (s.eta >= 1.0 / s.m)
        throw InfeasibleThresholdError(
            "schedule: fixed_complete entries are 1/m, so eta must be < 1/m");
      return Mat::Constant(s.m, s.m, 1.0 / s.m);
    case ScheduleMode::ring_rotation:
      if (s.eta > 0.5)
        throw InfeasibleThresholdError(
            "schedule: ring_rotation requires eta <= 1/2");
      return ring_matrix(s, t);
    case ScheduleMode::random_pairwise_gossip:
      if (s.eta > 0.5)
        throw InfeasibleThresholdError(
            "schedule: random_pairwise_gossip requires eta <= 1/2");
      // Matchings alone give only probabilistic connectivity; one ring
      // round per window makes every window strongly connected.
      if (t % s.window == 0) return ring_matrix(s, t);
      return gossip_matrix(s, t);
  }
  throw std::invalid_argument("schedule: unknown mode");
}

MatrixValidation validate_matrix(const Mat& a, double eta, double tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("validate_matrix: matrix must be square");
  MatrixValidation r;
  const int m = static_cast<int>(a.rows());
  for (int i = 0; i < m; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < m; ++j) row_sum += a(i, j);
    if (std::abs(row_sum - 1.0) > tol) {
      r.rows_stochastic = false;
      r.offenders.emplace_back(i, -1);
    }
  }
  for (int j = 0; j < m; ++j) {
    double col_sum = 0.0;
    for (int i = 0; i < m; ++i) col_sum += a(i, j);
    if (std::abs(col_sum - 1.0) > tol) {
      r.cols_stochastic = false;
      r.offenders.emplace_back(-1, j);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = a(i, j);
      if (v < 0.0) {
        r.nonnegative = false;
        r.offenders.emplace_back(i, j);
      } else if (v > 0.0 && v < eta) {
        r.positive_entries_above_eta = false;
        r.offenders.emplace_back(i, j);
      }
    }
    if (!(a(i, i) > 0.0)) r.diagonal_positive = false;
  }
  return r;
}

std::string MatrixValidation::summary() const {
  std::ostringstream out;
  out << (pass() ? "pass" : "fail");
  if (!nonnegative) out << " negative-entry";
  if (!rows_stochastic) out << " row-sums";
  if (!cols_stochastic) out << " column-sums";
  if (!positive_entries_above_eta) out << " entries-below-eta";
  if (!diagonal_positive) out << " zero-diagonal";
  if (!offenders.empty()) {
    out << " at";
    for (const auto& [i, j] : offenders) out << " (" << i << "," << j << ")";
  }
  return out.str();
}

Mat phi_product(const CommSchedule& s, std::int64_t k, std::int64_t s0) {
  check_schedule(s);
  if (k < s0) throw std::invalid_argument("phi_product: requires k >= s");
  Mat phi = Mat::Identity(s.m, s.m);
  for (std::int64_t t = s0 + 1; t <= k; ++t)
    phi = generate_matrix(s, t) * phi;
  return phi;
}

ConsensusRate consensus_rate(const CommSchedule& s) {
  check_schedule(s);
  const double base = 1.0 - s.eta / (4.0 * s.m * s.m);
  return {std::pow(base, -2.0), std::pow(base, 1.0 / s.window)};
}

bool check_connectivity(const CommSchedule& s, std::int64_t t_start) {
  check_schedule(s);
  if (t_start < 0)
    throw std::invalid_argument("check_connectivity: t_start must be >= 0");
  const int m = s.m;
  if (m == 1) return true;
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(m),
                                     std::vector<bool>(m, false));
  for (std::int64_t t = t_start + 1; t <= t_start + s.window; ++t) {
    const Mat a = generate_matrix(s, t);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (a(i, j) > 0.0) adj[static_cast<std::size_t>(i)][j] = true;
  }
  // strongly connected <=> node 0 reaches everyone along edges and along
  // reversed edges
  const auto reaches_all = [&](bool reversed) {
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < m; ++v) {
        const bool edge = reversed ? adj[static_cast<std::size_t>(v)][u]
                                   : adj[static_cast<std::size_t>(u)][v];
        if (edge && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == m;
  };
  return reaches_all(false) && reaches_all(true);
}

void save_schedule(const CommSchedule& s, std::int64_t t_begin,
                   std::int64_t t_end, std::ostream& out) {
  check_schedule(s);
  if (t_end < t_begin)
    throw std::invalid_argument("save_schedule: t_end must be >= t_begin");
  out << "gossipdp-schedule v1\n";
  out << "mode " << to_string(s.mode) << "\n";
  out << "m " << s.m << "\n";
  out << "eta " << format_g17(s.eta) << "\n";
  out << "window " << s.window << "\n";
  out << "seed " << s.seed << "\n";
  out << "t_begin " << t_begin << "\n";
  out << "rounds " << (t_end - t_begin + 1) << "\n";
  for (std::int64_t t = t_begin; t <= t_end; ++t) {
    const Mat a = generate_matrix(s, t);
    out << "round " << t << "\n";
    for (int i = 0; i < s.m; ++i) {
      for (int j = 0; j < s.m; ++j) {
        if (j) out << ' ';
        out << format_g17(a(i, j));
      }
      out << '\n';
    }
  }
}

void save_schedule(const CommSchedule& s, std::int64_t t_begin,
                   std::int64_t t_end, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("save_schedule: cannot open '" + path + "'");
  save_schedule(s, t_begin, t_end, out);
}

SavedSchedule load_schedule(std::istream& in) {
  SavedSchedule result;
  std::string line;
  int line_no = 0;
  const auto next_line = [&]() {
    if (!std::getline(in, line))
      throw ParseError("schedule line " + std::to_string(line_no + 1) +
                       ": unexpected end of file");
    ++line_no;
  };
  next_line();
  if (line != "gossipdp-schedule v1")
    throw ParseError("schedule line 1: bad header '" + line + "'");
  std::int64_t rounds = 0;
  const auto read_field = [&](const std::string& key) {
    next_line();
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key)
      throw ParseError("schedule line " + std::to_string(line_no) +
                       ": expected field '" + key + "'");
    return ls;
  };
  {
    std::string mode;
    read_field("mode") >> mode;
    result.params.mode = schedule_mode_from_string(mode);
  }
  read_field("m") >> result.params.m;
  read_field("eta") >> result.params.eta;
  read_field("window") >> result.params.window;
  read_field("seed") >> result.params.seed;
  read_field("t_begin") >> result.t_begin;
  read_field("rounds") >> rounds;
  const int m = result.params.m;
  for (std::int64_t r = 0; r < rounds; ++r) {
    next_line();
    if (line.rfind("round ", 0) != 0)
      throw ParseError("schedule line " + std::to_string(line_no) +
                       ": expected 'round <t>'");
    Mat a(m, m);
    for (int i = 0; i < m; ++i) {
      next_line();
      std::istringstream ls(line);
      for (int j = 0; j < m; ++j) {
        if (!(ls >> a(i, j)))
          throw ParseError("schedule line " + std::to_string(line_no) +
                           ": expected " + std::to_string(m) + " entries");
      }
    }
    result.matrices.push_back(std::move(a));
  }
  return result;
}

SavedSchedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_schedule: cannot open '" + path + "'");
  return load_schedule(in);
}

}  // namespace gossipdp
