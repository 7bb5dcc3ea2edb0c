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
#include <numbers>
#include <ostream>

#include "beliefval/cli.hpp"
#include "beliefval/models.hpp"

namespace beliefval::cli {
namespace {

class Checks {
 public:
  explicit Checks(std::ostream& log) : log_(log) {}

  void expect(bool ok, const std::string& what) {
    log_ << (ok ? "PASS " : "FAIL ") << what << '\n';
    all_ = all_ && ok;
  }
  int exit_code() const { return all_ ? kExitOk : kExitToleranceFailed; }

 private:
  std::ostream& log_;
  bool all_ = true;
};

std::size_t grid_resolution(std::optional<std::size_t> points, std::size_t fallback) {
  const std::size_t n = points.value_or(fallback);
  if (n < 2) throw std::invalid_argument("--grid needs at least 2 points");
  return n - 1;
}

std::size_t action_resolution(std::optional<std::size_t> points) {
  const std::size_t n = points.value_or(41);
  if (n < 3) throw std::invalid_argument("--actiongrid needs at least 3 points");
  return n - 1;
}

int alternating(const ExampleOptions& opt, std::ostream& out, std::ostream& log) {
  const auto house = models::alternating_house();
  const std::size_t top = opt.n.value_or(1000);
  if (top == 0) throw std::invalid_argument("--n must be >= 1");
  std::vector<std::size_t> ns;
  for (std::size_t n = 10; n < top; n *= 10) ns.push_back(n);
  ns.push_back(top);

  Checks checks(log);
  CsvWriter csv(out, {"n", "v_n_0", "v_n_1", "reference"});
  for (std::size_t n : ns) {
    const auto v = dp::value_theta_house(house, make_evaluation_cesaro(n));
    csv.cell(n).cell(v[0]).cell(v[1]).cell(0.5).end_row();
    const double tol = 1.0 / (2.0 * static_cast<double>(n)) + 1e-12;
    checks.expect(std::abs(v[0] - 0.5) <= tol && std::abs(v[1] - 0.5) <= tol,
                  "v_" + std::to_string(n) + " within 1/(2n) of 1/2");
  }
  const auto mdp = dp::house_to_mdp(house);
  for (std::size_t x = 0; x < 2; ++x) {
    const double vs = dp::limit_value_lp(mdp, x).value;
    checks.expect(std::abs(vs - 0.5) <= 1e-9,
                  "limit value from state " + std::to_string(x) + " = " + format_number(vs));
  }
  // Weight 1/n on each even stage 2, 4, ..., 2n.
  std::vector<double> even(2 * top, 0.0);
  for (std::size_t t = 1; t < even.size(); t += 2) even[t] = 1.0 / static_cast<double>(top);
  const auto ve = dp::value_theta_house(house, Evaluation(std::move(even)));
  checks.expect(std::abs(ve[0]) <= 1e-9 && std::abs(ve[1] - 1.0) <= 1e-9,
                "even-stage evaluation returns the start state");
  return checks.exit_code();
}

int circle(const ExampleOptions& opt, std::ostream& out, std::ostream& log) {
  const std::size_t n = opt.n.value_or(10000);
  if (n == 0) throw std::invalid_argument("--n must be >= 1");
  // Riemann mean of (1 + cos a) / 2 over [0, 2 pi).
  constexpr std::size_t kCells = 100000;
  double reference = 0.0;
  for (std::size_t i = 0; i < kCells; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / kCells;
    reference += (1.0 + std::cos(a)) / 2.0;
  }
  reference /= kCells;

  Checks checks(log);
  CsvWriter csv(out, {"start", "n", "value", "reference", "abs_err"});
  for (double start : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double v = dp::value_theta_house(models::circle_house(start, n),
                                           make_evaluation_cesaro(n))[0];
    const double err = std::abs(v - reference);
    csv.cell(start).cell(n).cell(v).cell(reference).cell(err).end_row();
    checks.expect(err <= 1e-2, "start " + format_number(start) + ": |v_n - 1/2| = " +
                                   format_number(err));
  }
  return checks.exit_code();
}

double fitted_exponent(const dp::GamblingHouse& house) {
  // Least squares slope of log(1 - v) against log(lambda) on [1e-4, 1e-2].
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  constexpr int kPoints = 9;
  for (int i = 0; i < kPoints; ++i) {
    const double lambda = std::pow(10.0, -4.0 + 2.0 * i / (kPoints - 1));
    const double v = dp::value_theta_house(house, make_evaluation_discounted(lambda))[0];
    const double x = std::log(lambda);
    const double y = std::log(1.0 - v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
}

int speed(const ExampleOptions& opt, std::ostream& out, std::ostream& log) {
  const double l = opt.l.value_or(2.0);
  const auto house = models::speed_house(l);
  std::vector<double> lambdas{0.1, 0.05, 0.01};
  if (opt.lambda) lambdas = {*opt.lambda};

  Checks checks(log);
  CsvWriter csv(out, {"lambda", "value", "closed_form", "abs_err"});
  for (double lambda : lambdas) {
    const double v = dp::value_theta_house(house, make_evaluation_discounted(lambda))[0];
    const double cf = models::speed_house_closed_form(lambda, l);
    const double err = std::abs(v - cf);
    csv.cell(lambda).cell(v).cell(cf).cell(err).end_row();
    checks.expect(err <= 2e-3, "lambda " + format_number(lambda) + ": |v - x_lambda| = " +
                                   format_number(err));
  }
  if (!opt.lambda) {
    const double slope = fitted_exponent(house);
    checks.expect(std::abs(slope - (l - 1.0) / l) <= 0.05,
                  "fitted exponent " + format_number(slope) + " vs " +
                      format_number((l - 1.0) / l));
  }
  return checks.exit_code();
}

int dark(const ExampleOptions& opt, std::ostream& out, std::ostream& log) {
  const auto bmdp = partial::pomdp_to_belief_mdp(models::dark_pomdp());
  const auto grid = partial::BeliefGrid::uniform(2, grid_resolution(opt.grid, 2001));
  std::vector<double> lambdas{1e-2, 1e-3, 1e-4};
  if (opt.lambda) lambdas = {*opt.lambda};

  Checks checks(log);
  CsvWriter csv(out, {"lambda", "value", "oracle", "ratio"});
  for (double lambda : lambdas) {
    const auto gv = partial::grid_value_theta(bmdp, grid, make_evaluation_discounted(lambda));
    const double v = partial::grid_lookup(grid, gv.values, models::dark_pomdp().initial());
    const double oracle = models::dark_strategy_oracle(lambda);
    const double ratio = (1.0 - v) / (lambda * std::log2(1.0 / lambda));
    csv.cell(lambda).cell(v).cell(oracle).cell(ratio).end_row();
    checks.expect(v >= oracle - 1e-3, "lambda " + format_number(lambda) +
                                          ": grid value above strategy oracle - 1e-3");
    if (lambda <= 1e-4) {
      checks.expect(ratio >= 0.85 && ratio <= 1.15,
                    "lambda " + format_number(lambda) + ": ratio " + format_number(ratio));
    }
  }
  return checks.exit_code();
}

int fixed_state(const ExampleOptions& opt, std::ostream& out, std::ostream& log) {
  const std::size_t n = opt.n.value_or(2000);
  const auto grid = partial::BeliefGrid::uniform(2, grid_resolution(opt.grid, 201));
  const auto bmdp =
      partial::informed_to_belief_mdp(models::fixed_state_game(), action_resolution(opt.action_grid));
  const auto gv = partial::grid_value_theta(bmdp, grid, make_evaluation_cesaro(n));
  const auto cav = partial::cav_u(models::diagonal_family(), grid);

  Checks checks(log);
  CsvWriter csv(out, {"p", "value", "cav", "abs_err"});
  double worst = 0.0, cav_err = 0.0, bend = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid.point(i)[0];
    const double err = std::abs(gv.values[i] - cav.concavified[i]);
    csv.cell(p).cell(gv.values[i]).cell(cav.concavified[i]).cell(err).end_row();
    worst = std::max(worst, err);
    cav_err = std::max(cav_err, std::abs(cav.concavified[i] - p * (1.0 - p)));
    if (i > 0 && i + 1 < grid.size()) {
      bend = std::max(bend, cav.concavified[i - 1] - 2.0 * cav.concavified[i] +
                                cav.concavified[i + 1]);
    }
  }
  checks.expect(cav_err <= 1e-9, "cav f* = p(1-p) on the grid");
  checks.expect(bend <= 1e-12, "cav f* concave along the grid");
  const double tol = std::max(5e-2, 3.0 * grid.mesh());
  checks.expect(worst <= tol, "max |v_n - cav f*| = " + format_number(worst));
  return checks.exit_code();
}

int switching_state(const ExampleOptions& opt, std::ostream& out, std::ostream& log) {
  const double persistence = opt.p.value_or(0.6);
  const std::size_t n = opt.n.value_or(2000);
  const auto grid = partial::BeliefGrid::uniform(2, grid_resolution(opt.grid, 201));
  const auto bmdp = partial::informed_to_belief_mdp(models::switching_state_game(persistence),
                                                    action_resolution(opt.action_grid));
  const auto gv = partial::grid_value_theta(bmdp, grid, make_evaluation_cesaro(n));
  // Known for p in [1/2, 2/3), and by symmetry for 1 - p.
  std::optional<double> reference;
  const double folded = std::max(persistence, 1.0 - persistence);
  if (folded < 2.0 / 3.0) reference = models::switching_state_value(folded);

  Checks checks(log);
  CsvWriter csv(out, {"belief", "value", "reference", "abs_err"});
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv.cell(grid.point(i)[0]).cell(gv.values[i]);
    if (reference) {
      const double err = std::abs(gv.values[i] - *reference);
      worst = std::max(worst, err);
      csv.cell(*reference).cell(err);
    } else {
      csv.empty().empty();
    }
    csv.end_row();
  }
  if (reference) checks.expect(worst <= 0.02, "max |v_n - p/(4p-1)| = " + format_number(worst));
  return checks.exit_code();
}

}  // namespace

int run_example(const std::string& name, const ExampleOptions& options, std::ostream& out,
                std::ostream& log) {
  if (name == "ex39") return alternating(options, out, log);
  if (name == "circle") return circle(options, out, log);
  if (name == "infini") return speed(options, out, log);
  if (name == "dark") return dark(options, out, log);
  if (name == "am") return fixed_state(options, out, log);
  if (name == "horner") return switching_state(options, out, log);
  throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace beliefval::cli
