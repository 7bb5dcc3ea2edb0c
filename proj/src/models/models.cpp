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

#include "beliefval/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace beliefval::models {
namespace {

lp::MatrixGame game_from(std::vector<std::vector<double>> rows) {
  return lp::MatrixGame(Matrix::from_rows(std::move(rows)));
}

// Two-state game with G^1 = [[1,0],[0,0]], G^2 = [[0,0],[0,1]] and signal d = i.
partial::InformedGame two_state_game(double stay) {
  const double g[2][2][2] = {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}};
  std::vector<double> payoffs;
  std::vector<JointDist> q;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i) {
      payoffs.push_back(g[k][i][0]);
      payoffs.push_back(g[k][i][1]);
      std::vector<double> table(4, 0.0);  // (k', d) with d = i
      table[k * 2 + i] = stay;
      table[(1 - k) * 2 + i] = 1.0 - stay;
      q.emplace_back(2, 2, std::move(table));
    }
  JointDist initial(2, 2, {0.5, 0.0, 0.5, 0.0});
  return partial::InformedGame(2, 2, std::move(q), std::move(payoffs), std::move(initial));
}

}  // namespace

dp::GamblingHouse alternating_house() {
  return dp::GamblingHouse({0.0, 1.0}, {{{{1, 1.0}}}, {{{0, 1.0}}}});
}

dp::GamblingHouse circle_house(double start, std::size_t n) {
  if (n == 0) throw std::invalid_argument("circle_house: n must be >= 1");
  std::vector<double> r(n + 1);
  std::vector<std::vector<dp::StateDist>> options(n + 1);
  for (std::size_t t = 0; t <= n; ++t) {
    r[t] = std::clamp((1.0 + std::cos(start + static_cast<double>(t))) / 2.0, 0.0, 1.0);
    options[t] = {{{std::min(t + 1, n), 1.0}}};
  }
  return dp::GamblingHouse(std::move(r), std::move(options));
}

dp::GamblingHouse speed_house(double l, double alpha_step) {
  if (!(l > 1.0)) throw std::invalid_argument("speed_house: l must exceed 1");
  if (!(alpha_step > 0.0 && alpha_step <= 0.5)) {
    throw std::invalid_argument("speed_house: alpha_step must be in (0, 1/2]");
  }
  const auto steps = static_cast<std::size_t>(std::llround(0.5 / alpha_step));
  std::vector<dp::StateDist> from_a;
  for (std::size_t s = 0; s <= steps; ++s) {
    const double alpha = std::min(0.5, static_cast<double>(s) * alpha_step);
    const double to_c = std::pow(alpha, l);
    from_a.push_back({{0, 1.0 - alpha - to_c}, {1, alpha}, {2, to_c}});
  }
  return dp::GamblingHouse({0.0, 1.0, 0.0}, {from_a, {{{1, 1.0}}}, {{{2, 1.0}}}});
}

double speed_house_closed_form(double lambda, double l) {
  const double base = lambda / ((1.0 - lambda) * (l - 1.0));
  return 1.0 / ((1.0 - lambda) * (l * std::pow(base, (l - 1.0) / l) + 1.0));
}

partial::PomdpModel dark_pomdp() {
  // transitions[k * A + a] over (k', s) with a single signal.
  std::vector<JointDist> q{
      JointDist(2, 1, {1.0, 0.0}),  // k = 0, a
      JointDist(2, 1, {0.5, 0.5}),  // k = 0, b
      JointDist(2, 1, {0.0, 1.0}),  // k = 1, a
      JointDist(2, 1, {0.0, 1.0}),  // k = 1, b
  };
  return partial::PomdpModel(2, std::move(q), {0.0, 0.0, 1.0, 0.0},
                             SimplexPoint::vertex(2, 0));
}

double dark_strategy_oracle(double lambda, std::size_t n_max) {
  double best = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    best = std::max(best, std::pow(1.0 - lambda, nd) * (1.0 - std::pow(2.0, -nd)));
  }
  return best;
}

metric::MatrixFamily diagonal_family() {
  return metric::MatrixFamily({game_from({{1, 0}, {0, 0}}), game_from({{0, 0}, {0, 1}})});
}

partial::InformedGame fixed_state_game() { return two_state_game(1.0); }

partial::InformedGame switching_state_game(double persistence) {
  if (!(persistence >= 0.0 && persistence <= 1.0)) {
    throw std::invalid_argument("switching_state_game: persistence must be in [0, 1]");
  }
  return two_state_game(persistence);
}

double switching_state_value(double persistence) { return persistence / (4.0 * persistence - 1.0); }

}  // namespace beliefval::models
