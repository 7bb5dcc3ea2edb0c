// Copyright 2026 The beliefval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Distances between finitely supported distributions of beliefs.
//
// Two distances are exposed: the Kantorovich-Rubinstein (earth mover)
// distance with ground cost ||x - y||_1, and d*, computed through its
// transport-like dual
//
//   d*(u, v) = min  sum_{x,y} || x alpha(x,y) - y beta(x,y) ||_1
//              over alpha, beta >= 0 with sum_y alpha(x,y) = u(x) and
//              sum_x beta(x,y) = v(y).
//
// Non-revealing game functions p -> Val(sum_k p^k G^k) give one-sided lower
// bounds on d*, and the posterior map sends joint laws on K x S to the law of
// the posterior belief.

#ifndef BELIEFVAL_METRIC_HPP_
#define BELIEFVAL_METRIC_HPP_

#include <cstddef>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "beliefval/core.hpp"
#include "beliefval/lp.hpp"
#include "beliefval/matrix.hpp"

namespace beliefval::metric {

// Coupling indexed by (atom of u, atom of v).
struct TransportPlan {
  Matrix coupling;
};

// The pair (alpha, beta), both indexed by (atom of u, atom of v).
struct DualityWitness {
  Matrix alpha;
  Matrix beta;
};

// One matrix game per state k, all of the same shape.
class MatrixFamily {
 public:
  explicit MatrixFamily(std::vector<lp::MatrixGame> games);

  std::size_t dim() const { return games_.size(); }
  std::size_t rows() const { return games_.front().num_rows(); }
  std::size_t cols() const { return games_.front().num_cols(); }
  const lp::MatrixGame& game(std::size_t k) const { return games_[k]; }

  // sum_k p^k G^k.
  Matrix average(const SimplexPoint& p) const;

 private:
  std::vector<lp::MatrixGame> games_;
};

struct KrResult {
  double distance = 0.0;
  TransportPlan plan;
};

struct DstarResult {
  double distance = 0.0;
  DualityWitness witness;
};

KrResult kr_distance(const BeliefDist& u, const BeliefDist& v);

DstarResult dstar_distance(const BeliefDist& u, const BeliefDist& v);

// sum_{x,y} || x alpha(x,y) - y beta(x,y) ||_1 for a given witness.
double witness_cost(const BeliefDist& u, const BeliefDist& v, const DualityWitness& w);

// Throws std::invalid_argument unless w is nonnegative with the marginals of
// u and v (within 1e-9).
void check_witness(const BeliefDist& u, const BeliefDist& v, const DualityWitness& w);

// Val(sum_k p^k G^k).
double nonrevealing_value(const MatrixFamily& family, const SimplexPoint& p);

// u(f) - v(f) for the non-revealing function f of `family`.
double certificate_gap(const BeliefDist& u, const BeliefDist& v, const MatrixFamily& family);

// max over families and signs of u(f) - v(f); 0 for an empty list.
double dstar_lower_bound(const BeliefDist& u, const BeliefDist& v,
                         std::span<const MatrixFamily> families);

// Entries uniform in [-1, 1] with the given shape.
MatrixFamily random_matrix_family(std::size_t dim, std::size_t rows, std::size_t cols,
                                  std::mt19937_64& rng);

// Shape drawn uniformly from {1..max_rows} x {1..max_cols}.
MatrixFamily random_matrix_family(std::size_t dim, std::mt19937_64& rng,
                                  std::size_t max_rows = 3, std::size_t max_cols = 3);

// Law of the posterior on K given the signal; null signals are skipped.
BeliefDist posterior_map(const JointDist& pi);

// Joint laws on K x (U x V), signal index x * |V| + y, with
// pi(k,(x,y)) = x^k alpha(x,y) and pi'(k,(x,y)) = y^k beta(x,y).
std::pair<JointDist, JointDist> disintegration_pair(const BeliefDist& u,
                                                    const BeliefDist& v,
                                                    const DualityWitness& w);

}  // namespace beliefval::metric

#endif  // BELIEFVAL_METRIC_HPP_
