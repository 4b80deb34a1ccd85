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

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gossipdp {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VectorX<double>;
using Mat = MatrixX<double>;

// Reductions in update paths accumulate in ascending index order.  Several
// contracts compare trajectories bitwise against independent scalar
// implementations, so these sums must not depend on SIMD width or unrolling.
template <typename DerivedA, typename DerivedB>
double ordered_dot(const Eigen::MatrixBase<DerivedA>& a,
                   const Eigen::MatrixBase<DerivedB>& b) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a(i) * b(i);
  return acc;
}

template <typename Derived>
double ordered_squared_norm(const Eigen::MatrixBase<Derived>& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += v(i) * v(i);
  return acc;
}

template <typename Derived>
double ordered_norm(const Eigen::MatrixBase<Derived>& v) {
  return std::sqrt(ordered_squared_norm(v));
}

// Thrown when a learner's data stream ends before the configured horizon.
class RunTruncatedError : public std::runtime_error {
 public:
  RunTruncatedError(const std::string& what, std::int64_t completed)
      : std::runtime_error(what), completed_rounds(completed) {}
  std::int64_t completed_rounds;
};

// Thrown when the positive-entry threshold eta cannot be met by a schedule
// mode (e.g. a uniform complete matrix has entries 1/m < eta).
class InfeasibleThresholdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown for bound formulas outside their domain (e.g. lambda = 0 where
// strong convexity is required).
class UnsupportedCaseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// File-format errors; the message carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment-spec errors; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gossipdp
