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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "beliefval/lp.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

namespace bv = beliefval;
namespace lp = beliefval::lp;

namespace {

double row_activity(const lp::LinearProgram& prog, std::size_t r, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < prog.num_vars(); ++j) s += prog.constraints(r, j) * x[j];
  return s;
}

// Feasible at a random nonnegative point, bounded because every cost is
// positive on an unbounded-above variable.
lp::LinearProgram random_feasible_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), unit(0.0, 1.0);
  const std::size_t n = dim(rng);
  const std::size_t m = dim(rng);
  lp::LinearProgram prog(n);
  std::vector<double> x0(n);
  for (std::size_t j = 0; j < n; ++j) {
    x0[j] = unit(rng);
    prog.objective[j] = unit(rng) + 0.1;
    if (unit(rng) < 0.3) {
      prog.upper[j] = x0[j] + unit(rng);
      prog.objective[j] = coef(rng);
    }
    if (unit(rng) < 0.2 && prog.upper[j] < lp::kInfinity) {
      prog.lower[j] = -lp::kInfinity;
      prog.objective[j] = -(unit(rng) + 0.1);
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<std::pair<std::size_t, double>> terms;
    double act = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      // Sparse rows with a few exact zeros and repeated values keep things degenerate.
      const double a = unit(rng) < 0.3 ? 0.0 : std::round(coef(rng) * 4.0) / 4.0;
      terms.emplace_back(j, a);
      act += a * x0[j];
    }
    const double pick = unit(rng);
    if (pick < 0.3) {
      prog.add_row(terms, lp::RowSense::kEqual, act);
    } else if (pick < 0.65) {
      prog.add_row(terms, lp::RowSense::kLessEqual, act + (unit(rng) < 0.5 ? 0.0 : unit(rng)));
    } else {
      prog.add_row(terms, lp::RowSense::kGreaterEqual, act - (unit(rng) < 0.5 ? 0.0 : unit(rng)));
    }
  }
  return prog;
}

double grid_game_value(const bv::Matrix& g) {
  // Two-row games: max over x on a 1e-3 grid of the worst column.
  double best = -1e9;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    double worst = 1e9;
    for (std::size_t j = 0; j < g.cols(); ++j) worst = std::min(worst, x * g(0, j) + (1 - x) * g(1, j));
    best = std::max(best, worst);
  }
  return best;
}

bv::Matrix random_matrix(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> e(-1.0, 1.0);
  bv::Matrix g(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = e(rng);
  return g;
}

}  // namespace

TEST_CASE("small programs") {
  lp::LinearProgram a(1);
  a.objective[0] = 1.0;
  a.add_row({{0, 1.0}}, lp::RowSense::kGreaterEqual, 3.0);
  const auto sa = lp::solve_lp(a);
  REQUIRE(sa.status == lp::Status::kOptimal);
  CHECK(sa.x[0] == doctest::Approx(3.0));
  CHECK(sa.objective == doctest::Approx(3.0));

  lp::LinearProgram b(1);
  b.add_row({{0, 1.0}}, lp::RowSense::kLessEqual, -1.0);
  CHECK(lp::solve_lp(b).status == lp::Status::kInfeasible);

  lp::LinearProgram c(1);
  c.objective[0] = -1.0;
  CHECK(lp::solve_lp(c).status == lp::Status::kUnbounded);

  // Free variable pinned by an equality; reported value must be the original.
  lp::LinearProgram d(2);
  d.lower[0] = -lp::kInfinity;
  d.objective = {1.0, 1.0};
  d.add_row({{0, 1.0}, {1, -1.0}}, lp::RowSense::kEqual, -2.5);
  const auto sd = lp::solve_lp(d);
  REQUIRE(sd.status == lp::Status::kOptimal);
  CHECK(sd.x[0] == doctest::Approx(-2.5));
  CHECK(sd.x[1] == doctest::Approx(0.0));

  // Shifted bounds.
  lp::LinearProgram e(1);
  e.lower[0] = 2.0;
  e.upper[0] = 5.0;
  e.objective[0] = -1.0;
  const auto se = lp::solve_lp(e);
  CHECK(se.x[0] == doctest::Approx(5.0));
}

TEST_CASE("invalid programs are rejected") {
  lp::LinearProgram a(2);
  CHECK_THROWS_AS(a.add_row({{3, 1.0}}, lp::RowSense::kEqual, 0.0), std::invalid_argument);
  a.objective[0] = NAN;
  CHECK_THROWS_AS(lp::solve_lp(a), std::invalid_argument);
  lp::LinearProgram b(1);
  b.lower[0] = 2.0;
  b.upper[0] = 1.0;
  CHECK_THROWS_AS(lp::solve_lp(b), std::invalid_argument);
}

TEST_CASE("random programs: feasibility, duality and complementary slackness") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const lp::LinearProgram prog = random_feasible_lp(rng);
    const lp::LpSolution sol = lp::solve_lp(prog);
    REQUIRE(sol.status == lp::Status::kOptimal);
    const auto again = lp::solve_lp(prog);
    CHECK(again.x == sol.x);
    for (std::size_t j = 0; j < prog.num_vars(); ++j) {
      CHECK(sol.x[j] >= prog.lower[j] - 1e-9);
      CHECK(sol.x[j] <= prog.upper[j] + 1e-9);
    }
    for (std::size_t r = 0; r < prog.num_rows(); ++r) {
      double scale = 1.0;
      for (std::size_t j = 0; j < prog.num_vars(); ++j)
        scale = std::max(scale, std::abs(prog.constraints(r, j)));
      const double act = row_activity(prog, r, sol.x);
      const double slack = act - prog.rhs[r];
      switch (prog.senses[r]) {
        case lp::RowSense::kEqual:
          CHECK(std::abs(slack) <= 1e-9 * scale);
          break;
        case lp::RowSense::kLessEqual:
          CHECK(slack <= 1e-9 * scale);
          CHECK(sol.duals[r] <= 1e-12);
          break;
        case lp::RowSense::kGreaterEqual:
          CHECK(slack >= -1e-9 * scale);
          CHECK(sol.duals[r] >= -1e-12);
          break;
      }
      CHECK(std::abs(sol.duals[r] * slack) <= 1e-8);
    }
    CHECK(std::abs(sol.objective - sol.dual_objective) <= 1e-8);
  }
}

TEST_CASE("transport LP matches vertex enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto u = bv::testing::random_belief_dist(3, size(rng), rng);
    const auto v = bv::testing::random_belief_dist(3, size(rng), rng);
    lp::LinearProgram prog(u.size() * v.size());
    for (std::size_t x = 0; x < u.size(); ++x)
      for (std::size_t y = 0; y < v.size(); ++y)
        prog.objective[x * v.size() + y] = bv::l1_distance(u.point(x), v.point(y));
    for (std::size_t x = 0; x < u.size(); ++x) {
      std::vector<std::pair<std::size_t, double>> t;
      for (std::size_t y = 0; y < v.size(); ++y) t.emplace_back(x * v.size() + y, 1.0);
      prog.add_row(t, lp::RowSense::kEqual, u.weight(x));
    }
    for (std::size_t y = 0; y < v.size(); ++y) {
      std::vector<std::pair<std::size_t, double>> t;
      for (std::size_t x = 0; x < u.size(); ++x) t.emplace_back(x * v.size() + y, 1.0);
      prog.add_row(t, lp::RowSense::kEqual, v.weight(y));
    }
    const auto sol = lp::solve_lp(prog);
    REQUIRE(sol.status == lp::Status::kOptimal);
    CHECK(sol.objective == doctest::Approx(bv::testing::transport_by_enumeration(u, v)).epsilon(1e-9));
  }
}

TEST_CASE("transport with 0/1 costs between two-atom distributions") {
  const bv::BeliefDist u({{bv::SimplexPoint({1.0, 0.0}), 0.3}, {bv::SimplexPoint({0.5, 0.5}), 0.7}});
  const bv::BeliefDist v({{bv::SimplexPoint({1.0, 0.0}), 0.6}, {bv::SimplexPoint({0.0, 1.0}), 0.4}});
  // Cost 0 on the diagonal, 1 elsewhere.
  lp::LinearProgram prog(4);
  prog.objective = {0.0, 1.0, 1.0, 0.0};
  prog.add_row({{0, 1.0}, {1, 1.0}}, lp::RowSense::kEqual, 0.3);
  prog.add_row({{2, 1.0}, {3, 1.0}}, lp::RowSense::kEqual, 0.7);
  prog.add_row({{0, 1.0}, {2, 1.0}}, lp::RowSense::kEqual, 0.6);
  prog.add_row({{1, 1.0}, {3, 1.0}}, lp::RowSense::kEqual, 0.4);
  const auto sol = lp::solve_lp(prog);
  REQUIRE(sol.status == lp::Status::kOptimal);
  CHECK(sol.objective == doctest::Approx(0.3));
}

TEST_CASE("matrix game examples") {
  const lp::MatrixGame constant(bv::Matrix::from_rows({{0.4, 0.4}, {0.4, 0.4}}));
  CHECK(lp::matrix_game_value(constant).value == doctest::Approx(0.4));
  const lp::MatrixGame pennies(bv::Matrix::from_rows({{1, -1}, {-1, 1}}));
  CHECK(std::abs(lp::matrix_game_value(pennies).value) <= 1e-9);
  const auto corner = bv::Matrix::from_rows({{1, 0}, {0, 0}});
  const auto sol = lp::matrix_game_value(lp::MatrixGame(corner));
  CHECK(std::abs(sol.value) <= 1e-9);
  CHECK(std::abs(sol.value - grid_game_value(corner)) <= 1e-9);
  CHECK(sol.col_strategy[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp::MatrixGame(bv::Matrix::from_rows({{1.5}})), std::invalid_argument);
  CHECK_THROWS_AS(lp::MatrixGame(bv::Matrix()), std::invalid_argument);
}

TEST_CASE("matrix game value: oracles and invariants") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = size(rng), n = size(rng);
    const bv::Matrix g = random_matrix(m, n, rng);
    const auto sol = lp::matrix_game_value(lp::MatrixGame(g));
    CHECK(std::abs(sol.value - bv::testing::game_value_by_supports(g)) <= 1e-9);
    if (m == 2) CHECK(std::abs(sol.value - grid_game_value(g)) <= 3e-3);

    // Returned strategies guarantee the value.
    for (std::size_t j = 0; j < n; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < m; ++i) col += sol.row_strategy[i] * g(i, j);
      CHECK(col >= sol.value - 1e-8);
    }
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += g(i, j) * sol.col_strategy[j];
      CHECK(row <= sol.value + 1e-8);
    }

    const auto flipped = lp::matrix_game_value(lp::MatrixGame(-g.transposed()));
    CHECK(std::abs(sol.value + flipped.value) <= 1e-9);

    // Monotone and 1-Lipschitz in the sup norm.
    bv::Matrix up = g;
    bv::Matrix moved = g;
    std::uniform_real_distribution<double> bump(0.0, 0.5), noise(-0.3, 0.3);
    double dist = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        up(i, j) = std::min(1.0, up(i, j) + bump(rng));
        moved(i, j) = std::clamp(moved(i, j) + noise(rng), -1.0, 1.0);
        dist = std::max(dist, std::abs(moved(i, j) - g(i, j)));
      }
    CHECK(lp::matrix_game_value(lp::MatrixGame(up)).value >= sol.value - 1e-9);
    CHECK(std::abs(lp::matrix_game_value(lp::MatrixGame(moved)).value - sol.value) <= dist + 1e-9);
  }
}
