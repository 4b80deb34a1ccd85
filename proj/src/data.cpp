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

#include "gossipdp/data.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gossipdp/loss.hpp"
#include "gossipdp/rng.hpp"
#include "gossipdp/util.hpp"

namespace gossipdp {

Dataset generate_synthetic(int n, int count, double margin,
                           std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("synthetic: dimension must be >= 1");
  if (count < 1) throw std::invalid_argument("synthetic: count must be >= 1");
  if (margin < 0.0)
    throw std::invalid_argument("synthetic: margin must be >= 0");
  if (margin >= 1.0)
    throw std::invalid_argument(
        "synthetic: margin must be < 1 (resampling cannot terminate)");

  Rng rng = substream(seed, Stream::data);
  Vec w_true(n);
  double norm_sq;
  do {
    for (int j = 0; j < n; ++j) w_true(j) = rng.normal();
    norm_sq = ordered_squared_norm(w_true);
  } while (!(norm_sq > 0.0));
  w_true /= std::sqrt(norm_sq);

  Dataset data;
  data.features.resize(count, n);
  data.labels.resize(count);
  data.name = "synthetic";
  data.source_seed = seed;
  data.ground_truth = w_true;

  Vec x(n);
  for (int i = 0; i < count; ++i) {
    double dot;
    do {
      double xs;
      do {
        for (int j = 0; j < n; ++j) x(j) = rng.normal();
        xs = ordered_squared_norm(x);
      } while (!(xs > 0.0));
      const double r =
          std::pow(rng.uniform01(), 1.0 / static_cast<double>(n));
      x *= r / std::sqrt(xs);
      dot = ordered_dot(w_true, x);
    } while (std::abs(dot) < margin);
    data.features.row(i) = x.transpose();
    data.labels(i) = dot >= 0.0 ? 1.0 : -1.0;
  }
  return data;
}

Dataset load_sparse(std::istream& in, int dim_cap, const std::string& name) {
  if (dim_cap < 1)
    throw std::invalid_argument("load_sparse: dimension cap must be >= 1");
  std::vector<Vec> rows;
  std::vector<double> labels;
  std::string line;
  int line_no = 0;
  const FeasibleSet unit_ball{1.0};
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string token;
    if (!(ls >> token)) continue;  // blank line
    double y;
    if (token == "+1" || token == "1")
      y = 1.0;
    else if (token == "-1")
      y = -1.0;
    else
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown label '" + token + "'");
    Vec x = Vec::Zero(dim_cap);
    while (ls >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos || colon == 0 ||
          colon + 1 >= token.size())
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed feature '" + token + "'");
      int idx;
      double val;
      try {
        std::size_t idx_end, val_end;
        idx = std::stoi(token.substr(0, colon), &idx_end);
        val = std::stod(token.substr(colon + 1), &val_end);
        if (idx_end != colon || val_end != token.size() - colon - 1)
          throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed feature '" + token + "'");
      }
      if (idx < 1)
        throw ParseError("line " + std::to_string(line_no) +
                         ": feature index must be >= 1");
      if (idx > dim_cap) continue;  // beyond the cap
      x(idx - 1) = val;
    }
    // renormalize onto the unit ball; the projection is idempotent, so
    // save/load round trips are bit-exact
    rows.push_back(project(unit_ball, x));
    labels.push_back(y);
  }
  Dataset data;
  data.name = name;
  data.features.resize(static_cast<Eigen::Index>(rows.size()), dim_cap);
  data.labels.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.features.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    data.labels(static_cast<Eigen::Index>(i)) = labels[i];
  }
  return data;
}

Dataset load_sparse(const std::string& path, int dim_cap) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("load_sparse: cannot open '" + path + "'");
  return load_sparse(in, dim_cap, path);
}

void save_sparse(const Dataset& data, std::ostream& out) {
  for (int i = 0; i < data.count(); ++i) {
    out << (data.labels(i) > 0 ? "+1" : "-1");
    for (int j = 0; j < data.dim(); ++j) {
      const double v = data.features(i, j);
      if (v != 0.0) out << ' ' << (j + 1) << ':' << format_g17(v);
    }
    out << '\n';
  }
}

void save_sparse(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("save_sparse: cannot open '" + path + "'");
  save_sparse(data, out);
}

ShardPlan partition(const Dataset& data, int m, double holdout_fraction,
                    std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("partition: m must be >= 1");
  if (holdout_fraction < 0.0 || holdout_fraction >= 1.0)
    throw std::invalid_argument(
        "partition: holdout fraction must lie in [0, 1)");
  const int count = data.count();
  std::vector<int> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0);
  Rng rng = substream(seed, Stream::shuffle);
  for (int k = count - 1; k > 0; --k) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(k + 1)));
    std::swap(order[static_cast<std::size_t>(k)],
              order[static_cast<std::size_t>(j)]);
  }
  const int hold_n =
      static_cast<int>(std::llround(holdout_fraction * count));
  const int train_n = count - hold_n;
  if (train_n < m)
    throw std::invalid_argument("partition: fewer than m training examples");

  ShardPlan plan;
  plan.seed = seed;
  plan.holdout.assign(order.begin(), order.begin() + hold_n);
  plan.shards.resize(static_cast<std::size_t>(m));
  const int per_shard = train_n / m;
  const int used = per_shard * m;
  plan.dropped = train_n - used;
  for (auto& shard : plan.shards)
    shard.reserve(static_cast<std::size_t>(per_shard));
  for (int k = 0; k < used; ++k)
    plan.shards[static_cast<std::size_t>(k % m)].push_back(
        order[static_cast<std::size_t>(hold_n + k)]);
  return plan;
}

}  // namespace gossipdp
