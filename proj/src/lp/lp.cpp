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

#include "beliefval/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace beliefval::lp {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-10;
constexpr double kDegenerateStep = 1e-12;

// Maps an original variable onto nonnegative standard-form columns:
// x = offset + sign * col - neg_col.
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  std::size_t col = 0;
  std::optional<std::size_t> neg_col;
};

// min c.x + cost_offset  s.t.  A x = b,  x >= 0,  b >= 0.
struct StandardForm {
  std::vector<std::vector<double>> rows;
  std::vector<double> b;
  std::vector<double> c;
  double cost_offset = 0.0;
  std::vector<VarMap> vars;
  std::vector<double> row_sign;
  // Column holding +1 in this row and zero elsewhere, usable as a start basis.
  std::vector<std::optional<std::size_t>> unit_col;
  std::size_t num_cols = 0;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  StandardForm sf;
  const std::size_t n = lp.num_vars();
  sf.vars.resize(n);
  std::vector<std::pair<std::size_t, double>> bound_rows;  // (col, width)
  for (std::size_t j = 0; j < n; ++j) {
    VarMap& vm = sf.vars[j];
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    vm.col = sf.num_cols++;
    if (std::isfinite(lo)) {
      vm.offset = lo;
      if (std::isfinite(hi)) bound_rows.emplace_back(vm.col, hi - lo);
    } else if (std::isfinite(hi)) {
      vm.offset = hi;
      vm.sign = -1.0;
    } else {
      vm.neg_col = sf.num_cols++;
    }
  }

  struct RawRow {
    std::vector<std::pair<std::size_t, double>> terms;
    RowSense sense;
    double rhs;
  };
  std::vector<RawRow> raw;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    RawRow r{{}, lp.senses[i], lp.rhs[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lp.constraints(i, j);
      if (a == 0.0) continue;
      const VarMap& vm = sf.vars[j];
      r.terms.emplace_back(vm.col, a * vm.sign);
      if (vm.neg_col) r.terms.emplace_back(*vm.neg_col, -a);
      r.rhs -= a * vm.offset;
    }
    raw.push_back(std::move(r));
  }
  for (const auto& [col, width] : bound_rows) {
    raw.push_back({{{col, 1.0}}, RowSense::kLessEqual, width});
  }

  std::vector<std::optional<std::size_t>> slack(raw.size());
  std::vector<double> slack_coef(raw.size(), 0.0);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].sense == RowSense::kEqual) continue;
    slack[i] = sf.num_cols++;
    slack_coef[i] = raw[i].sense == RowSense::kLessEqual ? 1.0 : -1.0;
  }

  sf.rows.assign(raw.size(), std::vector<double>(sf.num_cols, 0.0));
  sf.b.resize(raw.size());
  sf.row_sign.resize(raw.size());
  sf.unit_col.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& row = sf.rows[i];
    for (const auto& [col, a] : raw[i].terms) row[col] += a;
    if (slack[i]) row[*slack[i]] = slack_coef[i];
    const double sign = raw[i].rhs < 0.0 ? -1.0 : 1.0;
    if (sign < 0.0)
      for (double& a : row) a = -a;
    sf.b[i] = sign * raw[i].rhs;
    sf.row_sign[i] = sign;
    if (slack[i] && sign * slack_coef[i] > 0.0) sf.unit_col[i] = slack[i];
  }

  sf.c.assign(sf.num_cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const VarMap& vm = sf.vars[j];
    sf.c[vm.col] += lp.objective[j] * vm.sign;
    if (vm.neg_col) sf.c[*vm.neg_col] -= lp.objective[j];
    sf.cost_offset += lp.objective[j] * vm.offset;
  }
  return sf;
}

// Solves M z = rhs by Gaussian elimination with partial pivoting.
std::optional<std::vector<double>> dense_solve(std::vector<std::vector<double>> m,
                                               std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-13) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> z(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= m[r][c] * z[c];
    z[r] = s / m[r][r];
  }
  return z;
}

// Full dense tableau. Row `m` holds reduced costs; the last column holds the
// basic values (and minus the objective in the cost row).
class Tableau {
 public:
  Tableau(const StandardForm& sf, std::size_t num_artificial)
      : m_(sf.b.size()),
        n_real_(sf.num_cols),
        width_(sf.num_cols + num_artificial + 1),
        data_((m_ + 1) * width_, 0.0),
        basis_(m_),
        row_origin_(m_) {
    std::size_t art = n_real_;
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(sf.rows[i].begin(), sf.rows[i].end(), data_.begin() + i * width_);
      at(i, width_ - 1) = sf.b[i];
      row_origin_[i] = i;
      if (sf.unit_col[i]) {
        basis_[i] = *sf.unit_col[i];
      } else {
        at(i, art) = 1.0;
        basis_[i] = art++;
      }
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t real_cols() const { return n_real_; }
  std::size_t total_cols() const { return width_ - 1; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<std::size_t>& row_origin() const { return row_origin_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * width_ + j]; }
  double rhs(std::size_t i) const { return at(i, width_ - 1); }
  double objective() const { return -at(m_, width_ - 1); }

  // Loads reduced costs for `costs` (indexed by column, missing entries 0).
  void price(const std::vector<double>& costs) {
    auto cost = [&](std::size_t j) { return j < costs.size() ? costs[j] : 0.0; };
    for (std::size_t j = 0; j < width_; ++j) {
      double d = j + 1 < width_ ? cost(j) : 0.0;
      for (std::size_t i = 0; i < m_; ++i) d -= cost(basis_[i]) * at(i, j);
      at(m_, j) = d;
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    const double p = at(r, e);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    at(r, e) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      double* dst = &data_[i * width_];
      const double* src = &data_[r * width_];
      for (std::size_t j = 0; j < width_; ++j) dst[j] -= f * src[j];
      dst[e] = 0.0;
    }
    basis_[r] = e;
  }

  // Iterates with columns < `limit` eligible to enter. Returns false when
  // the objective is unbounded below.
  bool optimize(std::size_t limit) {
    const std::size_t degenerate_cap = 5 * (m_ + limit);
    const std::size_t iteration_cap = 50 * (m_ + limit) + 1000;
    std::size_t degenerate = 0;
    bool bland = false;
    for (std::size_t iter = 0;; ++iter) {
      if (iter > iteration_cap) {
        throw SolverError("solve_lp: pivot limit reached without convergence");
      }
      std::optional<std::size_t> enter;
      double best = -kCostTol;
      for (std::size_t j = 0; j < limit; ++j) {
        const double d = at(m_, j);
        if (d >= -kCostTol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (d < best) {
          best = d;
          enter = j;
        }
      }
      if (!enter) return true;

      std::optional<std::size_t> leave;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, *enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (!leave || ratio < best_ratio - 1e-12) {
          leave = i;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-12) {
          const bool better = bland ? basis_[i] < basis_[*leave]
                                    : a > at(*leave, *enter);
          if (better) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (!leave) return false;
      if (best_ratio <= kDegenerateStep && ++degenerate > degenerate_cap) bland = true;
      pivot(*leave, *enter);
    }
  }

  // After phase one: pivots artificial variables out of the basis, deleting
  // rows that turn out to be linearly dependent.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < n_real_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      double best = 1e-9;
      for (std::size_t j = 0; j < n_real_; ++j) {
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          col = j;
        }
      }
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

 private:
  void remove_row(std::size_t r) {
    data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r * width_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    row_origin_.erase(row_origin_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  std::size_t m_;
  std::size_t n_real_;
  std::size_t width_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> row_origin_;
};

double residual_norm(const StandardForm& sf, const std::vector<std::size_t>& rows,
                     const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t r : rows) {
    double s = -sf.b[r];
    for (std::size_t j = 0; j < sf.num_cols; ++j) s += sf.rows[r][j] * x[j];
    worst = std::max(worst, std::abs(s));
  }
  for (double v : x) worst = std::max(worst, -v);
  return worst;
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_vars)
    : objective(num_vars, 0.0),
      constraints(0, num_vars),
      lower(num_vars, 0.0),
      upper(num_vars, kInfinity) {}

std::size_t LinearProgram::add_row(
    const std::vector<std::pair<std::size_t, double>>& terms, RowSense sense,
    double rhs_value) {
  std::vector<double> row(num_vars(), 0.0);
  for (const auto& [col, a] : terms) {
    if (col >= num_vars()) throw std::invalid_argument("add_row: column out of range");
    row[col] += a;
  }
  constraints.append_row(row);
  rhs.push_back(rhs_value);
  senses.push_back(sense);
  return rhs.size() - 1;
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  const std::size_t m = rhs.size();
  if (constraints.rows() != m || (m > 0 && constraints.cols() != n) ||
      senses.size() != m || lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("LinearProgram: inconsistent dimensions");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(objective.begin(), objective.end(), finite) ||
      !std::all_of(rhs.begin(), rhs.end(), finite) ||
      !std::all_of(constraints.data().begin(), constraints.data().end(), finite)) {
    throw std::invalid_argument("LinearProgram: non-finite coefficient");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j] ||
        lower[j] == kInfinity || upper[j] == -kInfinity) {
      throw std::invalid_argument("LinearProgram: invalid bounds on variable " +
                                  std::to_string(j));
    }
  }
}

LpSolution solve_lp(const LinearProgram& lp) {
  lp.validate();
  const StandardForm sf = to_standard_form(lp);
  std::size_t num_artificial = 0;
  for (const auto& u : sf.unit_col)
    if (!u) ++num_artificial;

  LpSolution sol;
  Tableau tab(sf, num_artificial);

  if (num_artificial > 0) {
    std::vector<double> phase_one(tab.total_cols(), 0.0);
    for (std::size_t j = tab.real_cols(); j < tab.total_cols(); ++j) phase_one[j] = 1.0;
    tab.price(phase_one);
    tab.optimize(tab.total_cols());
    double scale = 1.0;
    for (double v : sf.b) scale = std::max(scale, std::abs(v));
    if (tab.objective() > 1e-9 * scale) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    tab.expel_artificials();
  }

  tab.price(sf.c);
  if (!tab.optimize(tab.real_cols())) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  // Recover primal and dual values from the final basis using the original
  // data, which removes the drift accumulated in the tableau.
  const auto& basis = tab.basis();
  const auto& kept = tab.row_origin();
  const std::size_t mb = basis.size();
  std::vector<double> x_tab(sf.num_cols, 0.0);
  for (std::size_t i = 0; i < mb; ++i) x_tab[basis[i]] = std::max(tab.rhs(i), 0.0);

  std::vector<std::vector<double>> bmat(mb, std::vector<double>(mb));
  std::vector<std::vector<double>> bmat_t(mb, std::vector<double>(mb));
  std::vector<double> b_kept(mb), c_basis(mb);
  for (std::size_t i = 0; i < mb; ++i) {
    b_kept[i] = sf.b[kept[i]];
    c_basis[i] = sf.c[basis[i]];
    for (std::size_t k = 0; k < mb; ++k) {
      bmat[i][k] = sf.rows[kept[i]][basis[k]];
      bmat_t[k][i] = bmat[i][k];
    }
  }
  std::vector<double> x_std = x_tab;
  if (auto xb = dense_solve(bmat, b_kept)) {
    std::vector<double> x_lu(sf.num_cols, 0.0);
    for (std::size_t i = 0; i < mb; ++i) x_lu[basis[i]] = (*xb)[i];
    for (double& v : x_lu)
      if (v < 0.0 && v > -1e-9) v = 0.0;
    if (residual_norm(sf, kept, x_lu) <= residual_norm(sf, kept, x_tab)) x_std = x_lu;
  }

  // A numerically singular basis leaves the multipliers at zero.
  std::vector<double> y_std(mb, 0.0);
  if (auto y = dense_solve(bmat_t, c_basis)) y_std = *y;

  sol.status = Status::kOptimal;
  sol.x.resize(lp.num_vars());
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    const VarMap& vm = sf.vars[j];
    double v = vm.offset + vm.sign * x_std[vm.col];
    if (vm.neg_col) v -= x_std[*vm.neg_col];
    sol.x[j] = std::clamp(v, lp.lower[j], lp.upper[j]);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) sol.objective += lp.objective[j] * sol.x[j];

  sol.duals.assign(lp.num_rows(), 0.0);
  sol.dual_objective = sf.cost_offset;
  for (std::size_t i = 0; i < mb; ++i) {
    sol.dual_objective += sf.b[kept[i]] * y_std[i];
    if (kept[i] < lp.num_rows()) sol.duals[kept[i]] = sf.row_sign[kept[i]] * y_std[i];
  }
  return sol;
}

MatrixGame::MatrixGame(Matrix payoff) : payoff_(std::move(payoff)) {
  if (payoff_.empty()) throw std::invalid_argument("MatrixGame: empty payoff matrix");
  for (double v : payoff_.data()) {
    if (!(v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12)) {
      throw std::invalid_argument("MatrixGame: entry " + std::to_string(v) +
                                  " outside [-1, 1]");
    }
  }
}

namespace {

std::vector<double> to_distribution(std::vector<double> v) {
  for (double& x : v) x = std::max(x, 0.0);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (total <= 0.0) return v;
  for (double& x : v) x /= total;
  return v;
}

// Row player's optimal strategy, the value, and the row duals.
LpSolution solve_row_player(const Matrix& g) {
  const std::size_t rows = g.rows();
  const std::size_t cols = g.cols();
  LinearProgram lp(rows + 1);
  const std::size_t v = rows;
  lp.lower[v] = -kInfinity;
  lp.objective[v] = -1.0;
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < rows; ++i) terms.emplace_back(i, g(i, j));
    terms.emplace_back(v, -1.0);
    lp.add_row(terms, RowSense::kGreaterEqual, 0.0);
  }
  std::vector<std::pair<std::size_t, double>> simplex;
  for (std::size_t i = 0; i < rows; ++i) simplex.emplace_back(i, 1.0);
  lp.add_row(simplex, RowSense::kEqual, 1.0);
  LpSolution sol = solve_lp(lp);
  if (sol.status != Status::kOptimal) {
    throw SolverError("matrix_game_value: LP reported " + to_string(sol.status));
  }
  return sol;
}

}  // namespace

MatrixGameSolution matrix_game_value(const MatrixGame& game) {
  const Matrix& g = game.payoff();
  const LpSolution sol = solve_row_player(g);
  MatrixGameSolution out;
  out.value = sol.x[g.rows()];
  out.row_strategy =
      to_distribution(std::vector<double>(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(g.rows())));
  out.col_strategy = to_distribution(
      std::vector<double>(sol.duals.begin(), sol.duals.begin() + static_cast<std::ptrdiff_t>(g.cols())));
  const double dual_mass = std::accumulate(sol.duals.begin(),
                                           sol.duals.begin() + static_cast<std::ptrdiff_t>(g.cols()), 0.0);
  if (std::abs(dual_mass - 1.0) > 1e-6) {
    // Duals were lost to a degenerate basis; solve the column player's side.
    const LpSolution other = solve_row_player(-g.transposed());
    out.col_strategy = to_distribution(std::vector<double>(
        other.x.begin(), other.x.begin() + static_cast<std::ptrdiff_t>(g.cols())));
  }
  return out;
}

double matrix_value(const Matrix& payoff) {
  if (payoff.empty()) throw std::invalid_argument("matrix_value: empty payoff matrix");
  return solve_row_player(payoff).x[payoff.rows()];
}

}  // namespace beliefval::lp
