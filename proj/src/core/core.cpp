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

#include "beliefval/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace beliefval {
namespace {

// Clamps tiny negatives, checks the total mass and rescales to 1.
void normalize_mass(std::vector<double>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  for (double& x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
    if (x < 0.0) {
      if (x < -kConstructionTol) {
        throw std::invalid_argument(std::string(what) + ": negative entry " +
                                    std::to_string(x));
      }
      x = 0.0;
    }
  }
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(total - 1.0) > kInputMassTol) {
    throw std::invalid_argument(std::string(what) + ": total mass " +
                                std::to_string(total) + " is not 1");
  }
  // Within summation round-off of 1 the vector is left alone, so that
  // constructing from an already normalized vector is the identity.
  const double roundoff = 2.0 * static_cast<double>(v.size()) * std::numeric_limits<double>::epsilon();
  if (std::abs(total - 1.0) > roundoff)
    for (double& x : v) x /= total;
}

}  // namespace

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  normalize_mass(coords_, "SimplexPoint");
}

SimplexPoint SimplexPoint::vertex(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::invalid_argument("SimplexPoint::vertex: index out of range");
  std::vector<double> c(dim, 0.0);
  c[k] = 1.0;
  return SimplexPoint(std::move(c));
}

SimplexPoint SimplexPoint::uniform(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("SimplexPoint::uniform: empty index set");
  return SimplexPoint(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

double l1_distance(const SimplexPoint& p, const SimplexPoint& q) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("l1_distance: index sets differ (" +
                                std::to_string(p.dim()) + " vs " +
                                std::to_string(q.dim()) + ")");
  }
  double d = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) d += std::abs(p[k] - q[k]);
  return d;
}

SimplexPoint random_simplex_point(std::size_t dim, std::mt19937_64& rng) {
  if (dim == 0) throw std::invalid_argument("random_simplex_point: dim must be >= 1");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(dim);
  double total = 0.0;
  for (double& x : v) total += (x = expo(rng));
  for (double& x : v) x /= total;
  return SimplexPoint(std::move(v));
}

BeliefDist::BeliefDist(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("BeliefDist: no atoms");
  const std::size_t dim = atoms.front().point.dim();
  std::vector<double> weights;
  for (Atom& a : atoms) {
    if (a.point.dim() != dim) {
      throw std::invalid_argument("BeliefDist: atoms live in different simplices");
    }
    auto same = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& b) {
      return l1_distance(a.point, b.point) <= kConstructionTol;
    });
    if (same != atoms_.end()) {
      weights[static_cast<std::size_t>(same - atoms_.begin())] += a.weight;
    } else {
      weights.push_back(a.weight);
      atoms_.push_back(std::move(a));
    }
  }
  normalize_mass(weights, "BeliefDist");
  std::size_t out = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    atoms_[i].weight = weights[i];
    if (out != i) atoms_[out] = std::move(atoms_[i]);
    ++out;
  }
  atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(out), atoms_.end());
}

BeliefDist BeliefDist::dirac(SimplexPoint p) {
  std::vector<Atom> atoms;
  atoms.push_back({std::move(p), 1.0});
  return BeliefDist(std::move(atoms));
}

SimplexPoint BeliefDist::mean() const {
  std::vector<double> m(dim(), 0.0);
  for (const Atom& a : atoms_)
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += a.weight * a.point[k];
  return SimplexPoint(std::move(m));
}

bool approx_equal(const BeliefDist& u, const BeliefDist& v, double tol) {
  if (u.size() != v.size() || u.dim() != v.dim()) return false;
  std::vector<bool> used(v.size(), false);
  for (const Atom& a : u.atoms()) {
    bool found = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (used[j]) continue;
      if (l1_distance(a.point, v.point(j)) <= tol &&
          std::abs(a.weight - v.weight(j)) <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

Evaluation::Evaluation(std::vector<double> weights) : weights_(std::move(weights)) {
  normalize_mass(weights_, "Evaluation");
}

Evaluation Evaluation::shifted() const {
  const double rest = 1.0 - weights_.front();
  if (rest <= kConstructionTol) {
    throw std::logic_error("Evaluation::shifted: first stage carries all the weight");
  }
  std::vector<double> w(weights_.begin() + 1, weights_.end());
  for (double& x : w) x /= rest;
  return Evaluation(std::move(w));
}

Evaluation make_evaluation_cesaro(std::size_t n) {
  if (n == 0) throw std::invalid_argument("make_evaluation_cesaro: n must be >= 1");
  return Evaluation(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Evaluation make_evaluation_discounted(double lambda, double tail_tol) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("make_evaluation_discounted: lambda must be in (0, 1]");
  }
  if (!(tail_tol > 0.0 && tail_tol <= 1e-6)) {
    throw std::invalid_argument("make_evaluation_discounted: tail_tol must be in (0, 1e-6]");
  }
  std::size_t horizon = 1;
  if (lambda < 1.0) {
    const double log_keep = std::log1p(-lambda);
    const double guess = std::ceil(std::log(tail_tol) / log_keep);
    horizon = static_cast<std::size_t>(std::max(1.0, guess));
    // Settle rounding at the boundary so that T is the smallest valid horizon.
    while (horizon * log_keep >= std::log(tail_tol)) ++horizon;
    while (horizon > 1 && (horizon - 1) * log_keep < std::log(tail_tol)) --horizon;
  }
  std::vector<double> w(horizon);
  double mass = lambda;
  double total = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    w[t] = mass;
    total += mass;
    mass *= 1.0 - lambda;
  }
  for (double& x : w) x /= total;
  return Evaluation(std::move(w));
}

double impatience(const Evaluation& theta) {
  const auto w = theta.weights();
  double total = 0.0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    const double next = t + 1 < w.size() ? w[t + 1] : 0.0;
    total += std::abs(next - w[t]);
  }
  return total;
}

JointDist::JointDist(std::size_t num_states, std::size_t num_signals,
                     std::vector<double> table)
    : num_states_(num_states), num_signals_(num_signals), table_(std::move(table)) {
  if (num_states_ == 0 || num_signals_ == 0 ||
      table_.size() != num_states_ * num_signals_) {
    throw std::invalid_argument("JointDist: table shape does not match K x S");
  }
  normalize_mass(table_, "JointDist");
}

double JointDist::signal_mass(std::size_t s) const {
  double m = 0.0;
  for (std::size_t k = 0; k < num_states_; ++k) m += (*this)(k, s);
  return m;
}

double l1_distance(const JointDist& a, const JointDist& b) {
  if (a.num_states() != b.num_states() || a.num_signals() != b.num_signals()) {
    throw std::invalid_argument("l1_distance: joint laws have different shapes");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.table().size(); ++i) d += std::abs(a.table()[i] - b.table()[i]);
  return d;
}

}  // namespace beliefval
