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

// Value types shared by every module: points of the simplex, finitely
// supported distributions over such points, stage evaluations and joint laws
// on a product of a state set and a signal set.

#ifndef BELIEFVAL_CORE_HPP_
#define BELIEFVAL_CORE_HPP_

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace beliefval {

// Coordinates within this bound of a constraint are repaired at construction.
inline constexpr double kConstructionTol = 1e-12;
// Tolerance for numeric comparisons of computed quantities.
inline constexpr double kCompareTol = 1e-9;
// Inputs whose total mass is off by more than this are rejected.
inline constexpr double kInputMassTol = 1e-9;

// A probability vector over a finite index set K.
class SimplexPoint {
 public:
  // Coordinates in [-1e-12, 0) are clamped to zero; the vector is then
  // renormalized. Throws std::invalid_argument on empty input, on a more
  // negative coordinate, on non-finite values, or when the mass is not 1.
  explicit SimplexPoint(std::vector<double> coords);

  static SimplexPoint vertex(std::size_t dim, std::size_t k);
  static SimplexPoint uniform(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::span<const double> coords() const { return coords_; }

  bool operator==(const SimplexPoint&) const = default;

 private:
  std::vector<double> coords_;
};

// Sum of absolute coordinate differences. Throws on dimension mismatch.
double l1_distance(const SimplexPoint& p, const SimplexPoint& q);

// Uniform draw from Delta(K) (normalized exponentials).
SimplexPoint random_simplex_point(std::size_t dim, std::mt19937_64& rng);

struct Atom {
  SimplexPoint point;
  double weight;
};

// A finitely supported probability over SimplexPoints.
//
// Atoms whose points lie within 1e-12 in L1 of an earlier atom are merged
// into it (the earlier point is kept), zero-weight atoms are dropped and the
// weights are renormalized. Atom order is the order of first appearance.
class BeliefDist {
 public:
  explicit BeliefDist(std::vector<Atom> atoms);

  static BeliefDist dirac(SimplexPoint p);

  std::size_t dim() const { return atoms_.front().point.dim(); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const SimplexPoint& point(std::size_t i) const { return atoms_[i].point; }
  double weight(std::size_t i) const { return atoms_[i].weight; }

  // Barycenter in the simplex.
  SimplexPoint mean() const;

  template <typename F>
  double expect(F&& f) const {
    double total = 0.0;
    for (const Atom& a : atoms_) total += a.weight * f(a.point);
    return total;
  }

 private:
  std::vector<Atom> atoms_;
};

// Same atoms (in any order) with weights and points within `tol`.
bool approx_equal(const BeliefDist& u, const BeliefDist& v, double tol);

// A probability over stages 1..T; weights()[0] is the weight of stage 1.
class Evaluation {
 public:
  // Same repair and rejection rules as SimplexPoint.
  explicit Evaluation(std::vector<double> weights);

  std::size_t horizon() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  // Weight of stage t, 1-based; zero past the horizon.
  double at(std::size_t t) const {
    return t >= 1 && t <= weights_.size() ? weights_[t - 1] : 0.0;
  }

  // (theta_{t+1} / (1 - theta_1))_t. Throws std::logic_error if theta_1 is 1.
  Evaluation shifted() const;

 private:
  std::vector<double> weights_;
};

// Uniform weight 1/n on stages 1..n. Throws std::invalid_argument for n == 0.
Evaluation make_evaluation_cesaro(std::size_t n);

// Geometric weights lambda (1 - lambda)^(t-1), truncated at the first T with
// (1 - lambda)^T < tail_tol and renormalized.
Evaluation make_evaluation_discounted(double lambda, double tail_tol = 1e-10);

// Sum over t >= 1 of |theta_{t+1} - theta_t|, with theta_{T+1} = 0.
double impatience(const Evaluation& theta);

// A probability table pi(k, s) on K x S.
class JointDist {
 public:
  // `table` is row-major over (k, s). Same repair rules as SimplexPoint.
  JointDist(std::size_t num_states, std::size_t num_signals,
            std::vector<double> table);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_signals() const { return num_signals_; }
  double operator()(std::size_t k, std::size_t s) const {
    return table_[k * num_signals_ + s];
  }
  double signal_mass(std::size_t s) const;
  std::span<const double> table() const { return table_; }

 private:
  std::size_t num_states_;
  std::size_t num_signals_;
  std::vector<double> table_;
};

double l1_distance(const JointDist& a, const JointDist& b);

}  // namespace beliefval

#endif  // BELIEFVAL_CORE_HPP_
