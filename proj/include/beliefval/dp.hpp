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

// Dynamic programming for gambling houses and finite Markov decision
// processes under general stage evaluations, and the linear programs that
// characterize the long-run value of a finite MDP.

#ifndef BELIEFVAL_DP_HPP_
#define BELIEFVAL_DP_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "beliefval/core.hpp"
#include "beliefval/matrix.hpp"

namespace beliefval::dp {

// Sparse distribution over states: (state, probability) pairs.
using StateDist = std::vector<std::pair<std::size_t, double>>;

// Merges repeated targets, drops zero entries and normalizes. Throws
// std::invalid_argument on out-of-range targets or a mass different from 1.
StateDist make_state_dist(StateDist entries, std::size_t num_states);

// States X, a nonempty list F(x) of distributions per state, payoff r on X.
// The decision maker picks u in conv F(x); the next state is drawn from u and
// its payoff is collected.
class GamblingHouse {
 public:
  GamblingHouse(std::vector<double> payoffs, std::vector<std::vector<StateDist>> options);

  std::size_t num_states() const { return payoffs_.size(); }
  double payoff(std::size_t x) const { return payoffs_[x]; }
  const std::vector<StateDist>& options(std::size_t x) const { return options_[x]; }

 private:
  std::vector<double> payoffs_;
  std::vector<std::vector<StateDist>> options_;
};

// States K, actions A, dense transitions q(k, a) and payoffs g(k, a) in [0, 1].
class FiniteMDP {
 public:
  // transitions[k * A + a] is a distribution over K; payoffs[k * A + a].
  FiniteMDP(std::size_t num_states, std::size_t num_actions,
            std::vector<std::vector<double>> transitions, std::vector<double> payoffs);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  std::span<const double> transition(std::size_t k, std::size_t a) const {
    return transitions_[k * num_actions_ + a];
  }
  double payoff(std::size_t k, std::size_t a) const { return payoffs_[k * num_actions_ + a]; }

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<std::vector<double>> transitions_;
  std::vector<double> payoffs_;
};

// Action a at state x picks the a-th option of F(x) (the last one when F(x)
// is shorter) and pays the expected payoff of the state it leads to, so
// stage payoffs coincide with those of the house.
FiniteMDP house_to_mdp(const GamblingHouse& house);

// theta-value of every starting state, by backward induction over the
// horizon of theta. Maximizing over the listed options is exact because the
// recursive objective is affine in u.
std::vector<double> value_theta_house(const GamblingHouse& house, const Evaluation& theta);

struct MdpThetaSolution {
  std::vector<double> values;
  // Optimal first-stage action per state; ties go to the lowest index.
  std::vector<std::size_t> first_actions;
};

MdpThetaSolution solve_theta_mdp(const FiniteMDP& mdp, const Evaluation& theta);

inline std::vector<double> value_theta_mdp(const FiniteMDP& mdp, const Evaluation& theta) {
  return solve_theta_mdp(mdp, theta).values;
}

// Averages theta (a distribution over stages {0..T}) over windows of n
// consecutive stages: beta_l = (1/n) sum_{t=max(0,l-n)}^{min(T,l-1)} theta_t,
// l = 1..T+n. Its impatience is at most 3/n.
Evaluation window_transform(std::span<const double> theta, std::size_t n);

// A stationary occupation measure on K x A with marginal p and payoff y.
struct InvariantCouple {
  std::vector<double> p;
  double payoff = 0.0;
  Matrix occupation;  // K x A
};

// Feasibility of sum_a pi(k,a) = p(k), stationarity of pi and
// sum pi g = y. Returned witnesses have all residuals within 1e-9.
std::optional<InvariantCouple> check_invariant_couple(const FiniteMDP& mdp,
                                                      std::span<const double> p, double y);

// max over stationary pi in Delta(K x A) of sum pi(k,a) (g(k,a) - w(k)).
// Positive exactly when some invariant couple (p, y) has y > w(p).
double max_invariant_payoff(const FiniteMDP& mdp, std::span<const double> w);

struct LimitValueCertificate {
  std::vector<double> w;
  std::vector<double> h;
};

struct LimitValueResult {
  double value = 0.0;
  LimitValueCertificate certificate;
};

// min w(start) over w in [0,1]^K and h in R^K subject to
//   w(k) >= sum_k' q(k,a)(k') w(k')                    (excessive)
//   w(k) + h(k) >= g(k,a) + sum_k' q(k,a)(k') h(k')    (superharmonic)
// for all k, a. Throws lp::SolverError if the LP fails.
LimitValueResult limit_value_lp(const FiniteMDP& mdp, std::size_t start);

bool excessive_check(const FiniteMDP& mdp, std::span<const double> w);

// An h making (w, h) superharmonic, if one exists.
std::optional<std::vector<double>> find_superharmonic_bias(const FiniteMDP& mdp,
                                                           std::span<const double> w);

// n0 * I(theta): how much a block strategy built from n0-stage averages can
// lose against theta.
double block_strategy_payoff_bound(const FiniteMDP& mdp, std::size_t n0,
                                   const Evaluation& theta, std::span<const double> values);

}  // namespace beliefval::dp

#endif  // BELIEFVAL_DP_HPP_
