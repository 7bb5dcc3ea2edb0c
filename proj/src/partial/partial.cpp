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

#include "beliefval/partial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "beliefval/lp.hpp"

namespace beliefval::partial {
namespace {

void check_payoffs(std::span<const double> g, const char* where) {
  for (double x : g) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument(std::string(where) + ": payoff " + std::to_string(x) +
                                  " outside [0, 1]");
    }
  }
}

void require_dim(const SimplexPoint& p, std::size_t dim, const char* where) {
  if (p.dim() != dim) {
    throw std::invalid_argument(std::string(where) + ": belief has dimension " +
                                std::to_string(p.dim()) + ", expected " + std::to_string(dim));
  }
}

// Calls visit(counts) for every composition of `total` into `parts` parts,
// in lexicographic order of counts.
template <typename F>
void for_each_composition(std::size_t parts, std::size_t total, F&& visit) {
  std::vector<std::size_t> counts(parts, 0);
  auto rec = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (k + 1 == parts) {
      counts[k] = left;
      visit(counts);
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[k] = c;
      self(self, k + 1, left - c);
    }
  };
  rec(rec, 0, total);
}

}  // namespace

PomdpModel::PomdpModel(std::size_t num_actions, std::vector<JointDist> transitions,
                       std::vector<double> payoffs, SimplexPoint initial)
    : num_actions_(num_actions),
      transitions_(std::move(transitions)),
      payoffs_(std::move(payoffs)),
      initial_(std::move(initial)) {
  const std::size_t nk = initial_.dim();
  if (num_actions_ == 0) throw std::invalid_argument("PomdpModel: no actions");
  if (transitions_.size() != nk * num_actions_ || payoffs_.size() != nk * num_actions_) {
    throw std::invalid_argument("PomdpModel: expected K*A transitions and payoffs");
  }
  for (const JointDist& q : transitions_) {
    if (q.num_states() != nk || q.num_signals() != transitions_.front().num_signals()) {
      throw std::invalid_argument("PomdpModel: transition tables must all be K x S");
    }
  }
  check_payoffs(payoffs_, "PomdpModel");
}

PomdpModel fully_observed(const dp::FiniteMDP& mdp, SimplexPoint initial) {
  const std::size_t nk = mdp.num_states();
  const std::size_t na = mdp.num_actions();
  require_dim(initial, nk, "fully_observed");
  std::vector<JointDist> q;
  std::vector<double> g;
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t a = 0; a < na; ++a) {
      std::vector<double> table(nk * nk, 0.0);
      const auto row = mdp.transition(k, a);
      for (std::size_t k2 = 0; k2 < nk; ++k2) table[k2 * nk + k2] = row[k2];
      q.emplace_back(nk, nk, std::move(table));
      g.push_back(mdp.payoff(k, a));
    }
  return PomdpModel(na, std::move(q), std::move(g), std::move(initial));
}

BeliefUpdate belief_update(const PomdpModel& pomdp, const SimplexPoint& p, std::size_t a,
                           std::size_t s) {
  const std::size_t nk = pomdp.num_states();
  require_dim(p, nk, "belief_update");
  if (a >= pomdp.num_actions() || s >= pomdp.num_signals()) {
    throw std::invalid_argument("belief_update: action or signal out of range");
  }
  std::vector<double> next(nk, 0.0);
  double prob = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    if (p[k] == 0.0) continue;
    const JointDist& q = pomdp.transition(k, a);
    for (std::size_t k2 = 0; k2 < nk; ++k2) {
      const double m = p[k] * q(k2, s);
      next[k2] += m;
      prob += m;
    }
  }
  if (prob <= 0.0) return {0.0, SimplexPoint::uniform(nk)};
  for (double& x : next) x /= prob;
  return {prob, SimplexPoint(std::move(next))};
}

BeliefMdp pomdp_to_belief_mdp(const PomdpModel& pomdp) {
  BeliefMdp out;
  out.dim = pomdp.num_states();
  out.num_actions = pomdp.num_actions();
  out.payoff = [pomdp](const SimplexPoint& p, std::size_t a) {
    double r = 0.0;
    for (std::size_t k = 0; k < pomdp.num_states(); ++k) r += p[k] * pomdp.payoff(k, a);
    return std::clamp(r, 0.0, 1.0);
  };
  out.kernel = [pomdp](const SimplexPoint& p, std::size_t a) {
    const std::size_t nk = pomdp.num_states();
    const std::size_t ns = pomdp.num_signals();
    std::vector<double> joint(nk * ns, 0.0);
    for (std::size_t k = 0; k < nk; ++k) {
      if (p[k] == 0.0) continue;
      const auto table = pomdp.transition(k, a).table();
      for (std::size_t j = 0; j < table.size(); ++j) joint[j] += p[k] * table[j];
    }
    return metric::posterior_map(JointDist(nk, ns, std::move(joint)));
  };
  return out;
}

BeliefGrid BeliefGrid::uniform(std::size_t dim, std::size_t resolution) {
  if (dim < 2) throw std::invalid_argument("BeliefGrid: dim must be >= 2");
  if (resolution < 1) throw std::invalid_argument("BeliefGrid: resolution must be >= 1");
  BeliefGrid grid;
  grid.dim_ = dim;
  grid.resolution_ = resolution;
  const double m = static_cast<double>(resolution);
  if (dim == 2) {
    for (std::size_t i = 0; i <= resolution; ++i) {
      const double x = static_cast<double>(i) / m;
      grid.points_.emplace_back(std::vector<double>{x, 1.0 - x});
    }
    grid.mesh_ = 1.0 / m;
    return grid;
  }
  grid.binom_.assign(resolution + dim, std::vector<std::size_t>(dim, 0));
  for (std::size_t n = 0; n < grid.binom_.size(); ++n) {
    grid.binom_[n][0] = 1;
    for (std::size_t k = 1; k < dim && k <= n; ++k)
      grid.binom_[n][k] = grid.binom_[n - 1][k - 1] + (k < n ? grid.binom_[n - 1][k] : 0);
  }
  for_each_composition(dim, resolution, [&](const std::vector<std::size_t>& c) {
    std::vector<double> x(dim);
    for (std::size_t k = 0; k < dim; ++k) x[k] = static_cast<double>(c[k]) / m;
    grid.points_.emplace_back(std::move(x));
  });
  // Largest-remainder rounding moves each coordinate by less than 1/m; the
  // worst case has r coordinates rounded up from just above 1 - r/K.
  double worst = 0.0;
  const double kd = static_cast<double>(dim);
  for (std::size_t r = 0; r <= dim; ++r) {
    const double rd = static_cast<double>(r);
    worst = std::max(worst, 2.0 * rd * (1.0 - rd / kd));
  }
  grid.mesh_ = worst / m;
  return grid;
}

std::size_t BeliefGrid::index_of_lattice(std::span<const std::size_t> counts) const {
  // Number of compositions of n into `parts` parts is C(n + parts - 1, parts - 1).
  std::size_t rank = 0;
  std::size_t left = resolution_;
  for (std::size_t k = 0; k + 1 < dim_; ++k) {
    const std::size_t parts = dim_ - k - 1;
    for (std::size_t c = 0; c < counts[k]; ++c) rank += binom_[left - c + parts - 1][parts - 1];
    left -= counts[k];
  }
  return rank;
}

std::vector<std::pair<std::size_t, double>> BeliefGrid::interpolate(const SimplexPoint& p) const {
  require_dim(p, dim_, "BeliefGrid::interpolate");
  const double m = static_cast<double>(resolution_);
  if (dim_ == 2) {
    const double x = std::clamp(p[0] * m, 0.0, m);
    std::size_t i = static_cast<std::size_t>(std::floor(x));
    if (i >= resolution_) return {{resolution_, 1.0}};
    const double frac = x - static_cast<double>(i);
    if (frac <= 0.0) return {{i, 1.0}};
    return {{i, 1.0 - frac}, {i + 1, frac}};
  }
  std::vector<std::size_t> counts(dim_);
  std::vector<std::pair<double, std::size_t>> remainders(dim_);
  std::size_t used = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double x = std::max(p[k] * m, 0.0);
    counts[k] = static_cast<std::size_t>(std::floor(x));
    used += counts[k];
    remainders[k] = {x - static_cast<double>(counts[k]), k};
  }
  // Rounding can overshoot when floors already exceed m by float error.
  while (used > resolution_) {
    auto it = std::max_element(counts.begin(), counts.end());
    --*it;
    --used;
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; used < resolution_; ++r, ++used) ++counts[remainders[r % dim_].second];
  return {{index_of_lattice(counts), 1.0}};
}

double grid_lookup(const BeliefGrid& grid, std::span<const double> values, const SimplexPoint& p) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("grid_lookup: value vector does not match the grid");
  }
  double v = 0.0;
  for (const auto& [i, w] : grid.interpolate(p)) v += w * values[i];
  return v;
}

GridValue grid_value_theta(const BeliefMdp& bmdp, const BeliefGrid& grid,
                           const Evaluation& theta) {
  if (grid.size() == 0) throw std::invalid_argument("grid_value_theta: empty grid");
  if (grid.dim() != bmdp.dim) {
    throw std::invalid_argument("grid_value_theta: grid and model dimensions differ");
  }
  if (bmdp.num_actions == 0) throw std::invalid_argument("grid_value_theta: no actions");
  const std::size_t n = grid.size();
  const std::size_t na = bmdp.num_actions;

  // Per (point, action): payoff and the grid weights of the next belief,
  // in CSR layout indexed by point * na + action.
  std::vector<double> payoff(n * na);
  std::vector<std::size_t> start(n * na + 1, 0);
  std::vector<std::size_t> target;
  std::vector<double> weight;
  std::vector<std::pair<std::size_t, double>> merged;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < na; ++a) {
      const std::size_t row = x * na + a;
      payoff[row] = bmdp.payoff(grid.point(x), a);
      merged.clear();
      const BeliefDist next = bmdp.kernel(grid.point(x), a);
      for (const Atom& atom : next.atoms())
        for (const auto& [i, w] : grid.interpolate(atom.point)) merged.emplace_back(i, atom.weight * w);
      std::sort(merged.begin(), merged.end());
      for (std::size_t j = 0; j < merged.size(); ++j) {
        if (!target.empty() && start[row] < target.size() && target.back() == merged[j].first) {
          weight.back() += merged[j].second;
        } else {
          target.push_back(merged[j].first);
          weight.push_back(merged[j].second);
        }
      }
      start[row + 1] = target.size();
    }
  }

  std::vector<double> next(n, 0.0), cur(n);
  const auto w = theta.weights();
  for (std::size_t t = w.size(); t-- > 0;) {
    const double wt = w[t];
    for (std::size_t x = 0; x < n; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t row = x * na; row < (x + 1) * na; ++row) {
        double v = wt * payoff[row];
        for (std::size_t j = start[row]; j < start[row + 1]; ++j) v += weight[j] * next[target[j]];
        best = std::max(best, v);
      }
      cur[x] = best;
    }
    std::swap(cur, next);
  }
  return {std::move(next), 2.0 * grid.mesh()};
}

InformedGame::InformedGame(std::size_t num_rows, std::size_t num_cols,
                           std::vector<JointDist> transitions, std::vector<double> payoffs,
                           JointDist initial)
    : num_rows_(num_rows),
      num_cols_(num_cols),
      transitions_(std::move(transitions)),
      payoffs_(std::move(payoffs)),
      initial_(std::move(initial)) {
  const std::size_t nk = initial_.num_states();
  if (num_rows_ == 0 || num_cols_ == 0) throw std::invalid_argument("InformedGame: empty action set");
  if (transitions_.size() != nk * num_rows_) {
    throw std::invalid_argument("InformedGame: expected K*I transitions");
  }
  if (payoffs_.size() != nk * num_rows_ * num_cols_) {
    throw std::invalid_argument("InformedGame: expected K*I*J payoffs");
  }
  for (const JointDist& q : transitions_) {
    if (q.num_states() != nk || q.num_signals() != initial_.num_signals()) {
      throw std::invalid_argument("InformedGame: transition tables must all be K x D");
    }
  }
  check_payoffs(payoffs_, "InformedGame");
}

SimplexPoint InformedGame::initial_belief() const {
  std::vector<double> p(num_states(), 0.0);
  for (std::size_t k = 0; k < num_states(); ++k)
    for (std::size_t d = 0; d < num_signals(); ++d) p[k] += initial_(k, d);
  return SimplexPoint(std::move(p));
}

std::vector<std::vector<double>> action_grid(std::size_t num_states, std::size_t num_rows,
                                             std::size_t resolution) {
  if (resolution == 0) throw std::invalid_argument("action_grid: resolution must be >= 1");
  std::vector<std::vector<double>> mixed;
  for_each_composition(num_rows, resolution, [&](const std::vector<std::size_t>& c) {
    std::vector<double> a(num_rows);
    for (std::size_t i = 0; i < num_rows; ++i)
      a[i] = static_cast<double>(c[i]) / static_cast<double>(resolution);
    mixed.push_back(std::move(a));
  });
  std::vector<std::vector<double>> out{{}};
  for (std::size_t k = 0; k < num_states; ++k) {
    std::vector<std::vector<double>> grown;
    grown.reserve(out.size() * mixed.size());
    for (const auto& prefix : out)
      for (const auto& a : mixed) {
        std::vector<double> v = prefix;
        v.insert(v.end(), a.begin(), a.end());
        grown.push_back(std::move(v));
      }
    out = std::move(grown);
  }
  return out;
}

BeliefMdp informed_to_belief_mdp(const InformedGame& game, std::size_t action_grid_res) {
  if (action_grid_res < 2) {
    throw std::invalid_argument("informed_to_belief_mdp: action grid resolution must be >= 2");
  }
  auto actions = std::make_shared<const std::vector<std::vector<double>>>(
      action_grid(game.num_states(), game.num_rows(), action_grid_res));
  BeliefMdp out;
  out.dim = game.num_states();
  out.num_actions = actions->size();
  out.payoff = [game, actions](const SimplexPoint& p, std::size_t a) {
    const auto& act = (*actions)[a];
    const std::size_t ni = game.num_rows();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < game.num_cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < game.num_states(); ++k)
        for (std::size_t i = 0; i < ni; ++i) s += p[k] * act[k * ni + i] * game.payoff(k, i, j);
      worst = std::min(worst, s);
    }
    return std::clamp(worst, 0.0, 1.0);
  };
  out.kernel = [game, actions](const SimplexPoint& p, std::size_t a) {
    const auto& act = (*actions)[a];
    const std::size_t nk = game.num_states();
    const std::size_t ni = game.num_rows();
    const std::size_t nd = game.num_signals();
    std::vector<double> joint(nk * nd, 0.0);
    for (std::size_t k = 0; k < nk; ++k)
      for (std::size_t i = 0; i < ni; ++i) {
        const double m = p[k] * act[k * ni + i];
        if (m == 0.0) continue;
        const auto table = game.transition(k, i).table();
        for (std::size_t j = 0; j < table.size(); ++j) joint[j] += m * table[j];
      }
    return metric::posterior_map(JointDist(nk, nd, std::move(joint)));
  };
  return out;
}

CavResult cav_u(const metric::MatrixFamily& fam, const BeliefGrid& grid) {
  if (fam.dim() != grid.dim()) {
    throw std::invalid_argument("cav_u: family has " + std::to_string(fam.dim()) +
                                " states but the grid has dimension " +
                                std::to_string(grid.dim()));
  }
  if (grid.size() < grid.dim()) throw std::invalid_argument("cav_u: degenerate grid");
  const std::size_t n = grid.size();
  CavResult out;
  out.nonrevealing.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.nonrevealing[i] = metric::nonrevealing_value(fam, grid.point(i));

  if (grid.dim() == 2) {
    // Upper hull of (p0_i, f_i); points are sorted by p0.
    std::vector<std::size_t> hull;
    auto x = [&](std::size_t i) { return grid.point(i)[0]; };
    const auto& f = out.nonrevealing;
    for (std::size_t i = 0; i < n; ++i) {
      while (hull.size() >= 2) {
        const std::size_t a = hull[hull.size() - 2];
        const std::size_t b = hull.back();
        const double cross = (x(b) - x(a)) * (f[i] - f[a]) - (f[b] - f[a]) * (x(i) - x(a));
        if (cross < 0.0) break;
        hull.pop_back();
      }
      hull.push_back(i);
    }
    out.concavified.resize(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (seg + 1 < hull.size() && hull[seg + 1] < i) ++seg;
      const std::size_t a = hull[seg];
      const std::size_t b = seg + 1 < hull.size() ? hull[seg + 1] : a;
      if (a == b || i == a) {
        out.concavified[i] = f[a];
      } else {
        const double t = (x(i) - x(a)) / (x(b) - x(a));
        out.concavified[i] = std::max(f[i], (1.0 - t) * f[a] + t * f[b]);
      }
    }
    return out;
  }

  // max sum_j l_j f_j over l >= 0 with sum_j l_j x_j = p.
  out.concavified.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    lp::LinearProgram prog(n);
    for (std::size_t j = 0; j < n; ++j) prog.objective[j] = -out.nonrevealing[j];
    for (std::size_t k = 0; k < grid.dim(); ++k) {
      std::vector<std::pair<std::size_t, double>> terms;
      for (std::size_t j = 0; j < n; ++j)
        if (grid.point(j)[k] != 0.0) terms.emplace_back(j, grid.point(j)[k]);
      prog.add_row(terms, lp::RowSense::kEqual, grid.point(i)[k]);
    }
    const lp::LpSolution sol = lp::solve_lp(prog);
    if (sol.status != lp::Status::kOptimal) {
      throw lp::SolverError("cav_u: envelope LP reported " + lp::to_string(sol.status));
    }
    out.concavified[i] = std::max(out.nonrevealing[i], -sol.objective);
  }
  return out;
}

LipschitzAudit audit_lipschitz(const BeliefMdp& bmdp, std::size_t trials,
                               std::size_t families_per_trial, std::mt19937_64& rng) {
  LipschitzAudit audit{-std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
  std::uniform_int_distribution<std::size_t> pick(0, bmdp.num_actions - 1);
  for (std::size_t t = 0; t < trials; ++t) {
    const SimplexPoint p = random_simplex_point(bmdp.dim, rng);
    const SimplexPoint q = random_simplex_point(bmdp.dim, rng);
    const std::size_t a = pick(rng);
    const double dist = l1_distance(p, q);
    audit.payoff_excess =
        std::max(audit.payoff_excess, std::abs(bmdp.payoff(p, a) - bmdp.payoff(q, a)) - dist);
    const BeliefDist kp = bmdp.kernel(p, a);
    const BeliefDist kq = bmdp.kernel(q, a);
    for (std::size_t f = 0; f < families_per_trial; ++f) {
      const metric::MatrixFamily fam = metric::random_matrix_family(bmdp.dim, rng);
      auto val = [&](const SimplexPoint& x) { return metric::nonrevealing_value(fam, x); };
      audit.kernel_excess =
          std::max(audit.kernel_excess, std::abs(kp.expect(val) - kq.expect(val)) - dist);
    }
  }
  return audit;
}

}  // namespace beliefval::partial
