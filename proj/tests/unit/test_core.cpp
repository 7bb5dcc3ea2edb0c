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

#include <cmath>
#include <random>
#include <stdexcept>

#include "beliefval/core.hpp"
#include "doctest.h"

namespace bv = beliefval;

TEST_CASE("simplex point repair and rejection") {
  const bv::SimplexPoint p({-1e-13, 1.0});
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 1.0);
  CHECK_THROWS_AS(bv::SimplexPoint({-1e-6, 1.0 + 1e-6}), std::invalid_argument);
  CHECK_THROWS_AS(bv::SimplexPoint({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(bv::SimplexPoint(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(bv::SimplexPoint({NAN, 1.0}), std::invalid_argument);
}

TEST_CASE("l1 distance") {
  const bv::SimplexPoint a({1.0, 0.0}), b({0.0, 1.0}), c({0.5, 0.5});
  CHECK(bv::l1_distance(a, a) == 0.0);
  CHECK(bv::l1_distance(a, b) == doctest::Approx(2.0));
  CHECK(bv::l1_distance(c, a) == doctest::Approx(1.0));
  CHECK_THROWS_AS(bv::l1_distance(a, bv::SimplexPoint::uniform(3)), std::invalid_argument);
}

TEST_CASE("constructors are idempotent") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const bv::SimplexPoint p = bv::random_simplex_point(4, rng);
    const bv::SimplexPoint again(std::vector<double>(p.coords().begin(), p.coords().end()));
    CHECK(again == p);
    const bv::BeliefDist u({{p, 0.3}, {bv::random_simplex_point(4, rng), 0.7}});
    const bv::BeliefDist u2(u.atoms());
    REQUIRE(u2.size() == u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      CHECK(u2.point(j) == u.point(j));
      CHECK(u2.weight(j) == u.weight(j));
    }
  }
  const bv::Evaluation th = bv::make_evaluation_discounted(0.3);
  const bv::Evaluation th2(std::vector<double>(th.weights().begin(), th.weights().end()));
  CHECK(std::equal(th.weights().begin(), th.weights().end(), th2.weights().begin()));
}

TEST_CASE("belief dist merges duplicates and drops zero weights") {
  const bv::SimplexPoint p({0.25, 0.75});
  const bv::SimplexPoint p_close({0.25 + 4e-13, 0.75 - 4e-13});
  const bv::SimplexPoint q({1.0, 0.0});
  const bv::BeliefDist split({{p, 0.2}, {q, 0.5}, {p_close, 0.3}, {q, 0.0}});
  const bv::BeliefDist summed({{p, 0.5}, {q, 0.5}});
  CHECK(split.size() == 2);
  CHECK(bv::approx_equal(split, summed, 1e-15));
  CHECK(split.point(0) == p);

  const bv::BeliefDist noisy({{q, 0.0}, {p, 1.0}});
  CHECK(noisy.size() == 1);
  CHECK(noisy.mean() == p);
  CHECK_THROWS_AS(bv::BeliefDist({{p, -0.5}, {q, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(bv::BeliefDist({{p, 0.5}, {bv::SimplexPoint::uniform(3), 0.5}}),
                  std::invalid_argument);
}

TEST_CASE("cesaro evaluation") {
  CHECK_THROWS_AS(bv::make_evaluation_cesaro(0), std::invalid_argument);
  const bv::Evaluation one = bv::make_evaluation_cesaro(1);
  CHECK(one.horizon() == 1);
  CHECK(bv::impatience(one) == doctest::Approx(1.0));
  const bv::Evaluation four = bv::make_evaluation_cesaro(4);
  for (std::size_t t = 1; t <= 4; ++t) CHECK(four.at(t) == doctest::Approx(0.25));
  CHECK(four.at(5) == 0.0);
  CHECK(bv::impatience(four) == doctest::Approx(0.25));
  CHECK(bv::impatience(bv::make_evaluation_cesaro(10)) == doctest::Approx(0.1));
  const bv::Evaluation shifted = bv::make_evaluation_cesaro(2).shifted();
  CHECK(shifted.horizon() == 1);
  CHECK(shifted.at(1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(one.shifted(), std::logic_error);
}

TEST_CASE("discounted evaluation") {
  const bv::Evaluation one = bv::make_evaluation_discounted(1.0);
  CHECK(one.horizon() == 1);
  const bv::Evaluation half = bv::make_evaluation_discounted(0.5, 1e-10);
  CHECK(half.at(1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(half.at(2) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(bv::impatience(half) - 0.5) <= 1e-9);
  // Smallest T with 0.9^T < 1e-10, by direct logarithms.
  const auto expected = static_cast<std::size_t>(std::ceil(std::log(1e-10) / std::log(0.9)));
  CHECK(expected == 219);
  CHECK(bv::make_evaluation_discounted(0.1, 1e-10).horizon() == expected);
  CHECK_THROWS_AS(bv::make_evaluation_discounted(0.0), std::invalid_argument);
  CHECK_THROWS_AS(bv::make_evaluation_discounted(1.5), std::invalid_argument);
  CHECK_THROWS_AS(bv::make_evaluation_discounted(0.5, 1e-3), std::invalid_argument);
}

TEST_CASE("impatience of a delayed window counts entry and exit") {
  // Weight 1/n on stages m..m+n-1, m >= 2: one step up and one step down.
  for (std::size_t m : {2u, 5u}) {
    for (std::size_t n : {1u, 3u, 10u}) {
      std::vector<double> w(m + n - 1, 0.0);
      for (std::size_t t = m; t < m + n; ++t) w[t - 1] = 1.0 / static_cast<double>(n);
      double direct = 0.0;
      for (std::size_t t = 0; t < w.size(); ++t)
        direct += std::abs((t + 1 < w.size() ? w[t + 1] : 0.0) - w[t]);
      const double got = bv::impatience(bv::Evaluation(w));
      CHECK(got == doctest::Approx(direct));
      CHECK(got == doctest::Approx(2.0 / static_cast<double>(n)));
    }
  }
}

TEST_CASE("impatience properties on random evaluations") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(2, 30);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> w(len(rng));
    for (double& x : w) x = unit(rng);
    const bv::Evaluation th(
        [&] {
          double s = 0;
          for (double x : w) s += x;
          for (double& x : w) x /= s;
          return w;
        }());
    const double imp = bv::impatience(th);
    CHECK(imp > 0.0);
    CHECK(imp <= 2.0 + 1e-12);
    if (th.at(1) < 1.0) {
      CHECK(bv::impatience(th.shifted()) <= imp / (1.0 - th.at(1)) + 1e-12);
    }
    // Sorted non-increasing weights have impatience theta_1.
    std::vector<double> sorted(th.weights().begin(), th.weights().end());
    std::sort(sorted.rbegin(), sorted.rend());
    const bv::Evaluation mono(sorted);
    CHECK(bv::impatience(mono) == doctest::Approx(mono.at(1)).epsilon(1e-12));
  }
}

TEST_CASE("joint distribution") {
  const bv::JointDist pi(2, 2, {0.1, 0.2, 0.3, 0.4});
  CHECK(pi(1, 0) == doctest::Approx(0.3));
  CHECK(pi.signal_mass(1) == doctest::Approx(0.6));
  const bv::JointDist other(2, 2, {0.4, 0.3, 0.2, 0.1});
  CHECK(bv::l1_distance(pi, other) == doctest::Approx(0.8));
  CHECK_THROWS_AS(bv::JointDist(2, 2, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(bv::l1_distance(pi, bv::JointDist(1, 4, {0.25, 0.25, 0.25, 0.25})),
                  std::invalid_argument);
}
