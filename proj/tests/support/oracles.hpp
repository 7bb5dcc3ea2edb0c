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

// Independent reference computations for the tests. None of them calls the
// LP solver.

#ifndef BELIEFVAL_TESTS_SUPPORT_ORACLES_HPP_
#define BELIEFVAL_TESTS_SUPPORT_ORACLES_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "beliefval/core.hpp"
#include "beliefval/dp.hpp"
#include "beliefval/matrix.hpp"
#include "beliefval/partial.hpp"

namespace beliefval::testing {

// Random belief distribution with `support` atoms drawn uniformly.
BeliefDist random_belief_dist(std::size_t dim, std::size_t support, std::mt19937_64& rng);

// Atoms at vertices of the simplex with random weights.
BeliefDist random_vertex_dist(std::size_t dim, std::mt19937_64& rng);

// Each q(k, a) supported on 1..K random states; payoffs uniform in [0, 1].
dp::FiniteMDP random_mdp(std::size_t states, std::size_t actions, std::mt19937_64& rng);

// Two atoms on Delta(2) with first coordinates in {0, 1/2, 1} and weights
// in multiples of 1/125. Every vertex of the d* polytope then lies on a
// 1e-3 grid of alpha.
BeliefDist random_lattice_pair_dist(std::mt19937_64& rng);

// Minimum-cost transport between u and v with L1 ground cost, by
// enumerating the basic solutions of the transportation polytope.
// Intended for supports of size <= 3.
double transport_by_enumeration(const BeliefDist& u, const BeliefDist& v);

// Value of a small zero-sum game by support enumeration.
double game_value_by_supports(const Matrix& g);

// min of the d* objective (alpha, beta couplings) for |U|, |V| <= 2 and K = 2: a grid of step
// `mesh` over alpha, and an exact one-dimensional minimization over beta.
double m4_grid_minimum(const BeliefDist& u, const BeliefDist& v, double mesh);

// Exact value of a belief MDP from p by expanding the full tree of
// posteriors; exponential in the horizon of theta.
double tree_value(const partial::BeliefMdp& bmdp, const SimplexPoint& p, const Evaluation& theta);

// (1/n) sum_{t=1}^n r(x_{t+1}) along the unique play of a house in which
// every state has a single deterministic option.
double deterministic_play_average(const dp::GamblingHouse& house, std::size_t start,
                                  std::size_t n);

// Upper concave envelope of (x_i, f_i) at each x_i by trying every chord.
std::vector<double> chord_envelope(const std::vector<double>& x, const std::vector<double>& f);

struct SampledPosterior {
  std::vector<double> signal_freq;     // per signal
  std::vector<SimplexPoint> posterior;  // per signal (uniform if never seen)
};

// Simulates (k, i, k', d) for an informed game and mixed action a, and
// tabulates player 2's empirical posterior on k' given d.
SampledPosterior sample_posteriors(const partial::InformedGame& game, const SimplexPoint& p,
                                   const std::vector<double>& action, std::size_t samples,
                                   std::mt19937_64& rng);

}  // namespace beliefval::testing

#endif  // BELIEFVAL_TESTS_SUPPORT_ORACLES_HPP_
