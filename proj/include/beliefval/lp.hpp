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

// Dense primal simplex for small linear programs, and the matrix-game value
// solver built on top of it.

#ifndef BELIEFVAL_LP_HPP_
#define BELIEFVAL_LP_HPP_

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "beliefval/matrix.hpp"

namespace beliefval::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string to_string(Status status);

// Raised when the pivoting safeguard is exhausted.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// minimize c.x  subject to  A x (<=|=|>=) b,  lower <= x <= upper.
struct LinearProgram {
  LinearProgram() = default;
  // All variables start with bounds [0, +inf) and zero cost.
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }

  // Adds a row given as (column, coefficient) terms; repeated columns add up.
  std::size_t add_row(const std::vector<std::pair<std::size_t, double>>& terms,
                      RowSense sense, double rhs_value);

  // Throws std::invalid_argument on inconsistent shapes, NaN or inverted bounds.
  void validate() const;

  std::vector<double> objective;
  Matrix constraints;
  std::vector<double> rhs;
  std::vector<RowSense> senses;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // One multiplier per constraint row: >= 0 on >= rows, <= 0 on <= rows.
  std::vector<double> duals;
  // Dual objective b.y plus the contribution of the active variable bounds.
  double dual_objective = 0.0;
};

// Solves with Dantzig pricing, switching to Bland's rule once the number of
// degenerate pivots exceeds 5 (m + n). Deterministic for identical input.
LpSolution solve_lp(const LinearProgram& lp);

// Payoff matrix for the row player (maximizer); entries in [-1, 1].
class MatrixGame {
 public:
  explicit MatrixGame(Matrix payoff);
  const Matrix& payoff() const { return payoff_; }
  std::size_t num_rows() const { return payoff_.rows(); }
  std::size_t num_cols() const { return payoff_.cols(); }

 private:
  Matrix payoff_;
};

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
};

// max_x min_y x'Gy, solved as: max v s.t. sum_i x_i G(i,j) >= v for all j,
// x in the simplex. The column strategy is read off the row duals.
MatrixGameSolution matrix_game_value(const MatrixGame& game);

// The value alone, for bare payoff matrices that need not lie in [-1, 1].
double matrix_value(const Matrix& payoff);

}  // namespace beliefval::lp

#endif  // BELIEFVAL_LP_HPP_
