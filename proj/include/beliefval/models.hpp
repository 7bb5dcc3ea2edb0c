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

// Built-in encodings of classical examples: the two-state alternating
// house, an irrational rotation of the circle, a house with a tunable speed
// of convergence, a POMDP played in the dark, and two repeated games with an
// informed controller.

#ifndef BELIEFVAL_MODELS_HPP_
#define BELIEFVAL_MODELS_HPP_

#include <cstddef>

#include "beliefval/dp.hpp"
#include "beliefval/metric.hpp"
#include "beliefval/partial.hpp"

namespace beliefval::models {

// X = {0, 1}, F(x) = {delta_{1-x}}, r(x) = x.
dp::GamblingHouse alternating_house();

// Stage payoff (1 + cos(start + t)) / 2 for t = 1..n: the orbit of the
// rotation by one radian, as a chain of n + 1 states ending in a loop.
dp::GamblingHouse circle_house(double start, std::size_t n);

// States (a, b, c) = (0, 1, 2). From a, for alpha on a grid of [0, 1/2]
// with step alpha_step, move to b w.p. alpha, to c w.p. alpha^l and stay
// otherwise; b and c are absorbing. Only b pays (payoff 1).
dp::GamblingHouse speed_house(double l, double alpha_step = 1e-3);

// Discounted value at a of the continuous-alpha version of speed_house.
double speed_house_closed_form(double lambda, double l);

// Two states, one signal. Action a keeps the state and pays 1 in state 1;
// action b pays 0 and moves state 0 to state 1 w.p. 1/2. Starts in state 0.
partial::PomdpModel dark_pomdp();

// max over n <= n_max of (1 - lambda)^n (1 - 2^-n): the discounted payoff
// of playing b n times and a forever after.
double dark_strategy_oracle(double lambda, std::size_t n_max = 200);

// G^1 = [[1,0],[0,0]], G^2 = [[0,0],[0,1]].
metric::MatrixFamily diagonal_family();

// The state is drawn once and kept; player 2 sees player 1's action.
partial::InformedGame fixed_state_game();

// Same payoffs; the state persists w.p. `persistence` and switches
// otherwise, independently of the actions. Player 2 sees player 1's action.
partial::InformedGame switching_state_game(double persistence);

// p / (4p - 1), the value of switching_state_game for p in [1/2, 2/3).
double switching_state_value(double persistence);

}  // namespace beliefval::models

#endif  // BELIEFVAL_MODELS_HPP_
