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

#include "beliefval/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "beliefval/lp.hpp"

namespace beliefval::dp {
namespace {

void check_payoff(double g, const char* where) {
  if (!(g >= 0.0 && g <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": payoff " + std::to_string(g) +
                                " outside [0, 1]");
  }
}

void require_size(std::span<const double> v, std::size_t n, const char* where) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(n) +
                                " entries, got " + std::to_string(v.size()));
  }
}

lp::LpSolution solve_or_throw(const lp::LinearProgram& lp, const char* where) {
  lp::LpSolution sol = lp::solve_lp(lp);
  if (sol.status != lp::Status::kOptimal) {
    throw lp::SolverError(std::string(where) + ": LP reported " + lp::to_string(sol.status));
  }
  return sol;
}

// Stationarity rows: sum_a pi(k,a) - sum_{k',a'} pi(k',a') q(k',a')(k) = 0.
void add_stationarity(lp::LinearProgram& lp, const FiniteMDP& mdp) {
  const std::size_t nk = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  for (std::size_t k = 0; k < nk; ++k) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t a = 0; a < na; ++a) terms.emplace_back(k * na + a, 1.0);
    for (std::size_t k2 = 0; k2 < nk; ++k2)
      for (std::size_t a = 0; a < na; ++a) {
        const double q = mdp.transition(k2, a)[k];
        if (q != 0.0) terms.emplace_back(k2 * na + a, -q);
      }
    lp.add_row(terms, lp::RowSense::kEqual, 0.0);
  }
}

}  // namespace

StateDist make_state_dist(StateDist entries, std::size_t num_states) {
  std::vector<double> dense(num_states, 0.0);
  for (const auto& [x, p] : entries) {
    if (x >= num_states) {
      throw std::invalid_argument("make_state_dist: target " + std::to_string(x) +
                                  " out of range");
    }
    dense[x] += p;
  }
  const SimplexPoint checked(std::move(dense));
  StateDist out;
  for (std::size_t x = 0; x < num_states; ++x)
    if (checked[x] > 0.0) out.emplace_back(x, checked[x]);
  return out;
}

GamblingHouse::GamblingHouse(std::vector<double> payoffs,
                             std::vector<std::vector<StateDist>> options)
    : payoffs_(std::move(payoffs)), options_(std::move(options)) {
  if (payoffs_.empty() || options_.size() != payoffs_.size()) {
    throw std::invalid_argument("GamblingHouse: need one option list per state");
  }
  for (double r : payoffs_) check_payoff(r, "GamblingHouse");
  for (auto& list : options_) {
    if (list.empty()) throw std::invalid_argument("GamblingHouse: empty option list");
    for (auto& u : list) u = make_state_dist(std::move(u), payoffs_.size());
  }
}

FiniteMDP::FiniteMDP(std::size_t num_states, std::size_t num_actions,
                     std::vector<std::vector<double>> transitions, std::vector<double> payoffs)
    : num_states_(num_states), num_actions_(num_actions), payoffs_(std::move(payoffs)) {
  if (num_states_ == 0 || num_actions_ == 0) {
    throw std::invalid_argument("FiniteMDP: empty state or action set");
  }
  if (transitions.size() != num_states_ * num_actions_ ||
      payoffs_.size() != num_states_ * num_actions_) {
    throw std::invalid_argument("FiniteMDP: expected K*A transitions and payoffs");
  }
  transitions_.reserve(transitions.size());
  for (auto& q : transitions) {
    if (q.size() != num_states_) {
      throw std::invalid_argument("FiniteMDP: transition has the wrong number of states");
    }
    const SimplexPoint checked(std::move(q));
    transitions_.emplace_back(checked.coords().begin(), checked.coords().end());
  }
  for (double g : payoffs_) check_payoff(g, "FiniteMDP");
}

FiniteMDP house_to_mdp(const GamblingHouse& house) {
  const std::size_t n = house.num_states();
  std::size_t na = 0;
  for (std::size_t x = 0; x < n; ++x) na = std::max(na, house.options(x).size());
  std::vector<std::vector<double>> q;
  std::vector<double> g;
  for (std::size_t x = 0; x < n; ++x) {
    const auto& opts = house.options(x);
    for (std::size_t a = 0; a < na; ++a) {
      const StateDist& u = opts[std::min(a, opts.size() - 1)];
      std::vector<double> dense(n, 0.0);
      double pay = 0.0;
      for (const auto& [y, p] : u) {
        dense[y] += p;
        pay += p * house.payoff(y);
      }
      q.push_back(std::move(dense));
      g.push_back(std::clamp(pay, 0.0, 1.0));
    }
  }
  return FiniteMDP(n, na, std::move(q), std::move(g));
}

std::vector<double> value_theta_house(const GamblingHouse& house, const Evaluation& theta) {
  const std::size_t n = house.num_states();
  std::vector<double> next(n, 0.0), cur(n);
  const auto w = theta.weights();
  for (std::size_t t = w.size(); t-- > 0;) {
    const double wt = w[t];
    for (std::size_t x = 0; x < n; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (const StateDist& u : house.options(x)) {
        double v = 0.0;
        for (const auto& [y, p] : u) v += p * (wt * house.payoff(y) + next[y]);
        best = std::max(best, v);
      }
      cur[x] = best;
    }
    std::swap(cur, next);
  }
  return next;
}

MdpThetaSolution solve_theta_mdp(const FiniteMDP& mdp, const Evaluation& theta) {
  const std::size_t nk = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  std::vector<double> next(nk, 0.0), cur(nk);
  std::vector<std::size_t> first(nk, 0);
  const auto w = theta.weights();
  for (std::size_t t = w.size(); t-- > 0;) {
    for (std::size_t k = 0; k < nk; ++k) {
      double best = -std::numeric_limits<double>::infinity();
      std::size_t arg = 0;
      for (std::size_t a = 0; a < na; ++a) {
        const auto q = mdp.transition(k, a);
        double v = w[t] * mdp.payoff(k, a);
        for (std::size_t k2 = 0; k2 < nk; ++k2) v += q[k2] * next[k2];
        if (v > best) {
          best = v;
          arg = a;
        }
      }
      cur[k] = best;
      if (t == 0) first[k] = arg;
    }
    std::swap(cur, next);
  }
  return {std::move(next), std::move(first)};
}

Evaluation window_transform(std::span<const double> theta, std::size_t n) {
  if (n == 0) throw std::invalid_argument("window_transform: n must be >= 1");
  const SimplexPoint checked(std::vector<double>(theta.begin(), theta.end()));
  const std::size_t horizon = checked.dim() - 1;  // theta lives on {0..T}
  std::vector<double> prefix(checked.dim() + 1, 0.0);
  for (std::size_t t = 0; t < checked.dim(); ++t) prefix[t + 1] = prefix[t] + checked[t];
  std::vector<double> beta(horizon + n);
  for (std::size_t l = 1; l <= horizon + n; ++l) {
    const std::size_t lo = l > n ? l - n : 0;
    const std::size_t hi = std::min(horizon, l - 1);
    beta[l - 1] = lo <= hi ? (prefix[hi + 1] - prefix[lo]) / static_cast<double>(n) : 0.0;
  }
  return Evaluation(std::move(beta));
}

std::optional<InvariantCouple> check_invariant_couple(const FiniteMDP& mdp,
                                                      std::span<const double> p, double y) {
  const std::size_t nk = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  require_size(p, nk, "check_invariant_couple");
  lp::LinearProgram lp(nk * na);
  for (std::size_t k = 0; k < nk; ++k) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t a = 0; a < na; ++a) terms.emplace_back(k * na + a, 1.0);
    lp.add_row(terms, lp::RowSense::kEqual, p[k]);
  }
  add_stationarity(lp, mdp);
  std::vector<std::pair<std::size_t, double>> pay;
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t a = 0; a < na; ++a) pay.emplace_back(k * na + a, mdp.payoff(k, a));
  lp.add_row(pay, lp::RowSense::kEqual, y);

  const lp::LpSolution sol = lp::solve_lp(lp);
  if (sol.status != lp::Status::kOptimal) return std::nullopt;

  InvariantCouple couple;
  couple.p.assign(p.begin(), p.end());
  couple.payoff = y;
  couple.occupation = Matrix(nk, na);
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t a = 0; a < na; ++a) couple.occupation(k, a) = std::max(sol.x[k * na + a], 0.0);

  // Audit every defining identity before handing the witness out.
  double worst = 0.0;
  double mass = 0.0, payoff = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    double marginal = 0.0, inflow = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      marginal += couple.occupation(k, a);
      payoff += couple.occupation(k, a) * mdp.payoff(k, a);
    }
    for (std::size_t k2 = 0; k2 < nk; ++k2)
      for (std::size_t a = 0; a < na; ++a)
        inflow += couple.occupation(k2, a) * mdp.transition(k2, a)[k];
    mass += marginal;
    worst = std::max({worst, std::abs(marginal - p[k]), std::abs(marginal - inflow)});
  }
  worst = std::max({worst, std::abs(payoff - y), std::abs(mass - 1.0)});
  if (worst > kCompareTol) return std::nullopt;
  return couple;
}

double max_invariant_payoff(const FiniteMDP& mdp, std::span<const double> w) {
  const std::size_t nk = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  require_size(w, nk, "max_invariant_payoff");
  lp::LinearProgram lp(nk * na);
  std::vector<std::pair<std::size_t, double>> mass;
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t a = 0; a < na; ++a) {
      lp.objective[k * na + a] = -(mdp.payoff(k, a) - w[k]);
      mass.emplace_back(k * na + a, 1.0);
    }
  lp.add_row(mass, lp::RowSense::kEqual, 1.0);
  add_stationarity(lp, mdp);
  return -solve_or_throw(lp, "max_invariant_payoff").objective;
}

LimitValueResult limit_value_lp(const FiniteMDP& mdp, std::size_t start) {
  const std::size_t nk = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  if (start >= nk) throw std::invalid_argument("limit_value_lp: start state out of range");
  // Variables: w(0..K-1) in [0,1], then h(0..K-1) free.
  lp::LinearProgram lp(2 * nk);
  for (std::size_t k = 0; k < nk; ++k) {
    lp.upper[k] = 1.0;
    lp.lower[nk + k] = -lp::kInfinity;
  }
  lp.objective[start] = 1.0;
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t a = 0; a < na; ++a) {
      const auto q = mdp.transition(k, a);
      std::vector<std::pair<std::size_t, double>> excess{{k, 1.0}};
      std::vector<std::pair<std::size_t, double>> harmonic{{k, 1.0}, {nk + k, 1.0}};
      for (std::size_t k2 = 0; k2 < nk; ++k2) {
        if (q[k2] == 0.0) continue;
        excess.emplace_back(k2, -q[k2]);
        harmonic.emplace_back(nk + k2, -q[k2]);
      }
      lp.add_row(excess, lp::RowSense::kGreaterEqual, 0.0);
      lp.add_row(harmonic, lp::RowSense::kGreaterEqual, mdp.payoff(k, a));
    }
  }
  const lp::LpSolution sol = solve_or_throw(lp, "limit_value_lp");
  LimitValueResult out;
  out.certificate.w.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(nk));
  out.certificate.h.assign(sol.x.begin() + static_cast<std::ptrdiff_t>(nk), sol.x.end());
  out.value = out.certificate.w[start];
  return out;
}

bool excessive_check(const FiniteMDP& mdp, std::span<const double> w) {
  require_size(w, mdp.num_states(), "excessive_check");
  for (std::size_t k = 0; k < mdp.num_states(); ++k)
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      const auto q = mdp.transition(k, a);
      double next = 0.0;
      for (std::size_t k2 = 0; k2 < mdp.num_states(); ++k2) next += q[k2] * w[k2];
      if (w[k] < next - kCompareTol) return false;
    }
  return true;
}

std::optional<std::vector<double>> find_superharmonic_bias(const FiniteMDP& mdp,
                                                           std::span<const double> w) {
  const std::size_t nk = mdp.num_states();
  require_size(w, nk, "find_superharmonic_bias");
  lp::LinearProgram lp(nk);
  for (std::size_t k = 0; k < nk; ++k) lp.lower[k] = -lp::kInfinity;
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
      const auto q = mdp.transition(k, a);
      std::vector<std::pair<std::size_t, double>> terms{{k, 1.0}};
      for (std::size_t k2 = 0; k2 < nk; ++k2)
        if (q[k2] != 0.0) terms.emplace_back(k2, -q[k2]);
      lp.add_row(terms, lp::RowSense::kGreaterEqual, mdp.payoff(k, a) - w[k]);
    }
  const lp::LpSolution sol = lp::solve_lp(lp);
  if (sol.status != lp::Status::kOptimal) return std::nullopt;
  return sol.x;
}

double block_strategy_payoff_bound(const FiniteMDP& mdp, std::size_t n0,
                                   const Evaluation& theta, std::span<const double> values) {
  require_size(values, mdp.num_states(), "block_strategy_payoff_bound");
  if (n0 == 0) throw std::invalid_argument("block_strategy_payoff_bound: n0 must be >= 1");
  return static_cast<double>(n0) * impatience(theta);
}

}  // namespace beliefval::dp
