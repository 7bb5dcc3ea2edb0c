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

#include "beliefval/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace beliefval::metric {
namespace {

void require_same_dim(const BeliefDist& u, const BeliefDist& v, const char* where) {
  if (u.dim() != v.dim()) {
    throw std::invalid_argument(std::string(where) + ": distributions live on simplices of size " +
                                std::to_string(u.dim()) + " and " + std::to_string(v.dim()));
  }
}

// Adds the marginal rows sum_y z(x,y) = u(x) for the block of variables
// starting at `first` (row-major over U x V).
void add_row_marginals(lp::LinearProgram& lp, std::size_t first, const BeliefDist& u,
                       std::size_t nv) {
  for (std::size_t x = 0; x < u.size(); ++x) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t y = 0; y < nv; ++y) terms.emplace_back(first + x * nv + y, 1.0);
    lp.add_row(terms, lp::RowSense::kEqual, u.weight(x));
  }
}

void add_col_marginals(lp::LinearProgram& lp, std::size_t first, std::size_t nu,
                       const BeliefDist& v) {
  const std::size_t nv = v.size();
  for (std::size_t y = 0; y < nv; ++y) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t x = 0; x < nu; ++x) terms.emplace_back(first + x * nv + y, 1.0);
    lp.add_row(terms, lp::RowSense::kEqual, v.weight(y));
  }
}

lp::LpSolution solve_or_throw(const lp::LinearProgram& lp, const char* where) {
  lp::LpSolution sol = lp::solve_lp(lp);
  if (sol.status != lp::Status::kOptimal) {
    throw lp::SolverError(std::string(where) + ": LP reported " + lp::to_string(sol.status));
  }
  return sol;
}

}  // namespace

MatrixFamily::MatrixFamily(std::vector<lp::MatrixGame> games) : games_(std::move(games)) {
  if (games_.empty()) throw std::invalid_argument("MatrixFamily: no games");
  for (const auto& g : games_) {
    if (g.num_rows() != rows() || g.num_cols() != cols()) {
      throw std::invalid_argument("MatrixFamily: games have different shapes");
    }
  }
}

Matrix MatrixFamily::average(const SimplexPoint& p) const {
  if (p.dim() != dim()) {
    throw std::invalid_argument("MatrixFamily::average: belief has " + std::to_string(p.dim()) +
                                " states, family has " + std::to_string(dim()));
  }
  Matrix avg(rows(), cols());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (p[k] == 0.0) continue;
    const Matrix& g = games_[k].payoff();
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) avg(i, j) += p[k] * g(i, j);
  }
  return avg;
}

KrResult kr_distance(const BeliefDist& u, const BeliefDist& v) {
  require_same_dim(u, v, "kr_distance");
  const std::size_t nu = u.size();
  const std::size_t nv = v.size();
  lp::LinearProgram lp(nu * nv);
  for (std::size_t x = 0; x < nu; ++x)
    for (std::size_t y = 0; y < nv; ++y) lp.objective[x * nv + y] = l1_distance(u.point(x), v.point(y));
  add_row_marginals(lp, 0, u, nv);
  add_col_marginals(lp, 0, nu, v);
  const lp::LpSolution sol = solve_or_throw(lp, "kr_distance");

  KrResult out;
  out.plan.coupling = Matrix(nu, nv);
  for (std::size_t x = 0; x < nu; ++x)
    for (std::size_t y = 0; y < nv; ++y) {
      out.plan.coupling(x, y) = std::max(sol.x[x * nv + y], 0.0);
      out.distance += out.plan.coupling(x, y) * lp.objective[x * nv + y];
    }
  return out;
}

DstarResult dstar_distance(const BeliefDist& u, const BeliefDist& v) {
  require_same_dim(u, v, "dstar_distance");
  const std::size_t nu = u.size();
  const std::size_t nv = v.size();
  const std::size_t dim = u.dim();
  const std::size_t pairs = nu * nv;
  // Variables: alpha (pairs), beta (pairs), t (pairs * dim).
  const std::size_t alpha0 = 0;
  const std::size_t beta0 = pairs;
  const std::size_t t0 = 2 * pairs;
  lp::LinearProgram lp(2 * pairs + pairs * dim);
  for (std::size_t j = t0; j < lp.num_vars(); ++j) lp.objective[j] = 1.0;
  add_row_marginals(lp, alpha0, u, nv);
  add_col_marginals(lp, beta0, nu, v);
  for (std::size_t x = 0; x < nu; ++x) {
    for (std::size_t y = 0; y < nv; ++y) {
      const std::size_t pair = x * nv + y;
      for (std::size_t k = 0; k < dim; ++k) {
        const std::size_t t = t0 + pair * dim + k;
        const double xk = u.point(x)[k];
        const double yk = v.point(y)[k];
        // t >= x^k alpha - y^k beta  and  t >= y^k beta - x^k alpha.
        lp.add_row({{t, 1.0}, {alpha0 + pair, -xk}, {beta0 + pair, yk}},
                   lp::RowSense::kGreaterEqual, 0.0);
        lp.add_row({{t, 1.0}, {alpha0 + pair, xk}, {beta0 + pair, -yk}},
                   lp::RowSense::kGreaterEqual, 0.0);
      }
    }
  }
  const lp::LpSolution sol = solve_or_throw(lp, "dstar_distance");

  DstarResult out;
  out.witness.alpha = Matrix(nu, nv);
  out.witness.beta = Matrix(nu, nv);
  for (std::size_t x = 0; x < nu; ++x)
    for (std::size_t y = 0; y < nv; ++y) {
      out.witness.alpha(x, y) = std::max(sol.x[alpha0 + x * nv + y], 0.0);
      out.witness.beta(x, y) = std::max(sol.x[beta0 + x * nv + y], 0.0);
    }
  out.distance = witness_cost(u, v, out.witness);
  return out;
}

double witness_cost(const BeliefDist& u, const BeliefDist& v, const DualityWitness& w) {
  double total = 0.0;
  for (std::size_t x = 0; x < u.size(); ++x)
    for (std::size_t y = 0; y < v.size(); ++y)
      for (std::size_t k = 0; k < u.dim(); ++k)
        total += std::abs(u.point(x)[k] * w.alpha(x, y) - v.point(y)[k] * w.beta(x, y));
  return total;
}

void check_witness(const BeliefDist& u, const BeliefDist& v, const DualityWitness& w) {
  require_same_dim(u, v, "check_witness");
  const std::size_t nu = u.size();
  const std::size_t nv = v.size();
  if (w.alpha.rows() != nu || w.alpha.cols() != nv || w.beta.rows() != nu ||
      w.beta.cols() != nv) {
    throw std::invalid_argument("check_witness: witness shape does not match the supports");
  }
  for (double a : w.alpha.data())
    if (a < -kConstructionTol) throw std::invalid_argument("check_witness: negative alpha");
  for (double b : w.beta.data())
    if (b < -kConstructionTol) throw std::invalid_argument("check_witness: negative beta");
  for (std::size_t x = 0; x < nu; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < nv; ++y) s += w.alpha(x, y);
    if (std::abs(s - u.weight(x)) > kCompareTol) {
      throw std::invalid_argument("check_witness: alpha row " + std::to_string(x) +
                                  " does not sum to u(x)");
    }
  }
  for (std::size_t y = 0; y < nv; ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < nu; ++x) s += w.beta(x, y);
    if (std::abs(s - v.weight(y)) > kCompareTol) {
      throw std::invalid_argument("check_witness: beta column " + std::to_string(y) +
                                  " does not sum to v(y)");
    }
  }
}

double nonrevealing_value(const MatrixFamily& family, const SimplexPoint& p) {
  return lp::matrix_value(family.average(p));
}

double certificate_gap(const BeliefDist& u, const BeliefDist& v, const MatrixFamily& family) {
  require_same_dim(u, v, "certificate_gap");
  if (family.dim() != u.dim()) {
    throw std::invalid_argument("certificate_gap: family indexed by " +
                                std::to_string(family.dim()) + " states, beliefs by " +
                                std::to_string(u.dim()));
  }
  auto f = [&](const SimplexPoint& p) { return nonrevealing_value(family, p); };
  return u.expect(f) - v.expect(f);
}

double dstar_lower_bound(const BeliefDist& u, const BeliefDist& v,
                         std::span<const MatrixFamily> families) {
  double best = 0.0;
  for (const MatrixFamily& fam : families) best = std::max(best, std::abs(certificate_gap(u, v, fam)));
  return best;
}

MatrixFamily random_matrix_family(std::size_t dim, std::size_t rows, std::size_t cols,
                                  std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::vector<lp::MatrixGame> games;
  for (std::size_t k = 0; k < dim; ++k) {
    Matrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) g(i, j) = entry(rng);
    games.emplace_back(std::move(g));
  }
  return MatrixFamily(std::move(games));
}

MatrixFamily random_matrix_family(std::size_t dim, std::mt19937_64& rng, std::size_t max_rows,
                                  std::size_t max_cols) {
  std::uniform_int_distribution<std::size_t> r(1, max_rows);
  std::uniform_int_distribution<std::size_t> c(1, max_cols);
  const std::size_t rows = r(rng);
  const std::size_t cols = c(rng);
  return random_matrix_family(dim, rows, cols, rng);
}

BeliefDist posterior_map(const JointDist& pi) {
  std::vector<Atom> atoms;
  for (std::size_t s = 0; s < pi.num_signals(); ++s) {
    const double mass = pi.signal_mass(s);
    if (mass <= 0.0) continue;
    std::vector<double> post(pi.num_states());
    for (std::size_t k = 0; k < pi.num_states(); ++k) post[k] = pi(k, s) / mass;
    atoms.push_back({SimplexPoint(std::move(post)), mass});
  }
  return BeliefDist(std::move(atoms));
}

std::pair<JointDist, JointDist> disintegration_pair(const BeliefDist& u, const BeliefDist& v,
                                                    const DualityWitness& w) {
  check_witness(u, v, w);
  const std::size_t nu = u.size();
  const std::size_t nv = v.size();
  const std::size_t dim = u.dim();
  const std::size_t signals = nu * nv;
  std::vector<double> pi(dim * signals), pi_prime(dim * signals);
  for (std::size_t x = 0; x < nu; ++x)
    for (std::size_t y = 0; y < nv; ++y) {
      const std::size_t s = x * nv + y;
      for (std::size_t k = 0; k < dim; ++k) {
        pi[k * signals + s] = u.point(x)[k] * std::max(w.alpha(x, y), 0.0);
        pi_prime[k * signals + s] = v.point(y)[k] * std::max(w.beta(x, y), 0.0);
      }
    }
  return {JointDist(dim, signals, std::move(pi)), JointDist(dim, signals, std::move(pi_prime))};
}

}  // namespace beliefval::metric
