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

// Partially observed problems reduced to MDPs on the belief simplex, and
// value iteration for those MDPs on a finite grid.

#ifndef BELIEFVAL_PARTIAL_HPP_
#define BELIEFVAL_PARTIAL_HPP_

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "beliefval/core.hpp"
#include "beliefval/dp.hpp"
#include "beliefval/metric.hpp"

namespace beliefval::partial {

// Hidden state K, actions A, signals S. q(k, a) is a law on (next state,
// signal), stored as a JointDist over K x S; g(k, a) in [0, 1].
class PomdpModel {
 public:
  PomdpModel(std::size_t num_actions, std::vector<JointDist> transitions,
             std::vector<double> payoffs, SimplexPoint initial);

  std::size_t num_states() const { return initial_.dim(); }
  std::size_t num_actions() const { return num_actions_; }
  std::size_t num_signals() const { return transitions_.front().num_signals(); }
  const JointDist& transition(std::size_t k, std::size_t a) const {
    return transitions_[k * num_actions_ + a];
  }
  double payoff(std::size_t k, std::size_t a) const { return payoffs_[k * num_actions_ + a]; }
  const SimplexPoint& initial() const { return initial_; }

 private:
  std::size_t num_actions_;
  std::vector<JointDist> transitions_;
  std::vector<double> payoffs_;
  SimplexPoint initial_;
};

// Embeds a fully observed MDP: the signal is the next state.
PomdpModel fully_observed(const dp::FiniteMDP& mdp, SimplexPoint initial);

struct BeliefUpdate {
  double prob;
  SimplexPoint next;  // uniform when prob is 0
};

BeliefUpdate belief_update(const PomdpModel& pomdp, const SimplexPoint& p, std::size_t a,
                           std::size_t s);

// A full-information MDP on Delta(K) with finitely many actions.
struct BeliefMdp {
  std::size_t dim = 0;
  std::size_t num_actions = 0;
  std::function<double(const SimplexPoint&, std::size_t)> payoff;
  std::function<BeliefDist(const SimplexPoint&, std::size_t)> kernel;
};

BeliefMdp pomdp_to_belief_mdp(const PomdpModel& pomdp);

// Finite point set covering Delta(K). For |K| = 2 the points are
// (i/m, 1 - i/m) and values are interpolated linearly; for |K| >= 3 the
// points are the lattice with denominator m and a query is snapped to the
// nearest one by largest-remainder rounding.
class BeliefGrid {
 public:
  // Throws std::invalid_argument for dim < 2 or resolution < 1.
  static BeliefGrid uniform(std::size_t dim, std::size_t resolution);

  std::size_t dim() const { return dim_; }
  std::size_t resolution() const { return resolution_; }
  std::size_t size() const { return points_.size(); }
  const SimplexPoint& point(std::size_t i) const { return points_[i]; }
  // Upper bound on the L1 distance from any belief to the grid point(s) it
  // is mapped to.
  double mesh() const { return mesh_; }

  // Grid indices and weights whose combination stands in for p.
  std::vector<std::pair<std::size_t, double>> interpolate(const SimplexPoint& p) const;
  std::size_t index_of_lattice(std::span<const std::size_t> counts) const;

 private:
  BeliefGrid() = default;

  std::size_t dim_ = 0;
  std::size_t resolution_ = 0;
  double mesh_ = 0.0;
  std::vector<SimplexPoint> points_;
  // binom_[n][k] = C(n, k), used to rank lattice points.
  std::vector<std::vector<std::size_t>> binom_;
};

struct GridValue {
  std::vector<double> values;  // one per grid point
  double error_bound = 0.0;
};

// Backward induction on the grid with interpolated continuation values.
// The bound 2 * mesh uses that every v_theta is 1-Lipschitz.
GridValue grid_value_theta(const BeliefMdp& bmdp, const BeliefGrid& grid,
                           const Evaluation& theta);

// Linear (|K| = 2) or nearest-point read-out of a grid value function.
double grid_lookup(const BeliefGrid& grid, std::span<const double> values,
                   const SimplexPoint& p);

// Zero-sum game where player 1 knows the state and alone drives the law of
// (next state, player-2 signal). qbar(k, i) is a JointDist over K x D and
// payoffs are g(k, i, j) in [0, 1].
class InformedGame {
 public:
  InformedGame(std::size_t num_rows, std::size_t num_cols, std::vector<JointDist> transitions,
               std::vector<double> payoffs, JointDist initial);

  std::size_t num_states() const { return initial_.num_states(); }
  std::size_t num_rows() const { return num_rows_; }
  std::size_t num_cols() const { return num_cols_; }
  std::size_t num_signals() const { return initial_.num_signals(); }
  const JointDist& transition(std::size_t k, std::size_t i) const {
    return transitions_[k * num_rows_ + i];
  }
  double payoff(std::size_t k, std::size_t i, std::size_t j) const {
    return payoffs_[(k * num_rows_ + i) * num_cols_ + j];
  }
  const JointDist& initial() const { return initial_; }
  // Player 2's belief on the state before the first stage.
  SimplexPoint initial_belief() const;

 private:
  std::size_t num_rows_;
  std::size_t num_cols_;
  std::vector<JointDist> transitions_;
  std::vector<double> payoffs_;
  JointDist initial_;
};

// All a in Delta(I)^K whose coordinates are multiples of 1/resolution,
// flattened as a[k * I + i].
std::vector<std::vector<double>> action_grid(std::size_t num_states, std::size_t num_rows,
                                             std::size_t resolution);

// Auxiliary MDP of player 2's belief: r(p, a) = min_j sum p^k a^k(i) g(k,i,j),
// kernel(p, a) = posterior map of the law of (next state, signal).
// Throws std::invalid_argument for resolution < 2.
BeliefMdp informed_to_belief_mdp(const InformedGame& game, std::size_t action_grid_res);

struct CavResult {
  std::vector<double> nonrevealing;  // f*(p) per grid point
  std::vector<double> concavified;   // least concave majorant on the grid
};

// Throws std::invalid_argument when the family and grid dimensions differ.
CavResult cav_u(const metric::MatrixFamily& fam, const BeliefGrid& grid);

struct LipschitzAudit {
  double payoff_excess = 0.0;  // max of |r(p,a) - r(p',a)| - |p - p'|_1
  double kernel_excess = 0.0;  // same for E f(kernel) over certificates f
};

LipschitzAudit audit_lipschitz(const BeliefMdp& bmdp, std::size_t trials,
                               std::size_t families_per_trial, std::mt19937_64& rng);

}  // namespace beliefval::partial

#endif  // BELIEFVAL_PARTIAL_HPP_
