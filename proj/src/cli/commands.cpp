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

#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "beliefval/cli.hpp"

namespace beliefval::cli {
namespace {

std::size_t find_state(const ModelFile& file, const std::string& name) {
  for (std::size_t k = 0; k < file.states.size(); ++k)
    if (file.states[k] == name) return k;
  // Also accept a plain index.
  if (!name.empty() && name.find_first_not_of("0123456789") == std::string::npos) {
    const std::size_t k = std::stoull(name);
    if (k < file.states.size()) return k;
  }
  throw std::invalid_argument("unknown start state '" + name + "'");
}

struct DstarArgs {
  std::string file;
  std::size_t certificates = 100;
  std::uint64_t seed = 0;
  std::string family;
  std::string witness;
};

int cmd_dstar(const DstarArgs& args, std::ostream& out, std::ostream& err) {
  const ModelFile file = load_model_file(args.file);
  const auto* pair = std::get_if<BeliefDistPair>(&file.model);
  if (pair == nullptr) {
    throw std::invalid_argument("dstar expects a belief_dist_pair file, got " + file.kind);
  }
  const std::size_t dim = file.states.size();
  std::vector<metric::MatrixFamily> families;
  if (!args.family.empty()) {
    const ModelFile fam = load_model_file(args.family);
    const auto* f = std::get_if<metric::MatrixFamily>(&fam.model);
    if (f == nullptr || f->dim() != dim) {
      throw std::invalid_argument("--family must be a matrix_family over the same states");
    }
    families.push_back(*f);
  }
  std::mt19937_64 rng(args.seed);
  for (std::size_t i = 0; i < args.certificates; ++i)
    families.push_back(metric::random_matrix_family(dim, rng));

  const auto ds = metric::dstar_distance(pair->u, pair->v);
  const auto kr = metric::kr_distance(pair->u, pair->v);
  const double cert = metric::dstar_lower_bound(pair->u, pair->v, families);
  const auto [pi, pi_prime] = metric::disintegration_pair(pair->u, pair->v, ds.witness);
  const double pair_l1 = l1_distance(pi, pi_prime);

  CsvWriter csv(out, {"quantity", "value"});
  csv.cell(std::string("d_star")).cell(ds.distance).end_row();
  csv.cell(std::string("d_kr")).cell(kr.distance).end_row();
  csv.cell(std::string("best_certificate")).cell(cert).end_row();
  csv.cell(std::string("pair_l1")).cell(pair_l1).end_row();

  if (!args.witness.empty()) {
    std::ofstream w(args.witness);
    if (!w) throw std::invalid_argument("cannot write witness file '" + args.witness + "'");
    CsvWriter wcsv(w, {"u_atom", "v_atom", "alpha", "beta"});
    for (std::size_t x = 0; x < pair->u.size(); ++x)
      for (std::size_t y = 0; y < pair->v.size(); ++y)
        wcsv.cell(x).cell(y).cell(ds.witness.alpha(x, y)).cell(ds.witness.beta(x, y)).end_row();
  }

  constexpr double kTol = 1e-8;
  if (cert > ds.distance + kTol || ds.distance > kr.distance + kTol ||
      std::abs(pair_l1 - ds.distance) > kTol) {
    err << "error: computed quantities violate certificate <= d* <= d_KR = pair distance\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}

struct ValueArgs {
  std::string file;
  std::string theta;
  std::string start;
  std::size_t grid = 201;
  std::size_t action_grid = 41;
};

int cmd_value(const ValueArgs& args, std::ostream& out) {
  const ModelFile file = load_model_file(args.file);
  const Evaluation theta = parse_theta(args.theta);
  std::optional<std::size_t> start;
  if (!args.start.empty()) start = find_state(file, args.start);

  auto per_state = [&](const std::vector<double>& values) {
    CsvWriter csv(out, {"state", "value"});
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (start && *start != k) continue;
      csv.cell(file.states[k]).cell(values[k]).end_row();
    }
    return kExitOk;
  };
  auto on_beliefs = [&](const partial::BeliefMdp& bmdp, const SimplexPoint& initial) {
    if (args.grid < 2) throw std::invalid_argument("--grid needs at least 2 points");
    const auto grid = partial::BeliefGrid::uniform(bmdp.dim, args.grid - 1);
    const auto gv = partial::grid_value_theta(bmdp, grid, theta);
    const SimplexPoint p = start ? SimplexPoint::vertex(bmdp.dim, *start) : initial;
    CsvWriter csv(out, {"start", "value", "error_bound"});
    csv.cell(start ? file.states[*start] : std::string("initial"))
        .cell(partial::grid_lookup(grid, gv.values, p))
        .cell(gv.error_bound)
        .end_row();
    return kExitOk;
  };

  if (const auto* h = std::get_if<dp::GamblingHouse>(&file.model))
    return per_state(dp::value_theta_house(*h, theta));
  if (const auto* m = std::get_if<dp::FiniteMDP>(&file.model))
    return per_state(dp::value_theta_mdp(*m, theta));
  if (const auto* p = std::get_if<partial::PomdpModel>(&file.model))
    return on_beliefs(partial::pomdp_to_belief_mdp(*p), p->initial());
  if (const auto* g = std::get_if<partial::InformedGame>(&file.model)) {
    if (args.action_grid < 3) throw std::invalid_argument("--actiongrid needs at least 3 points");
    return on_beliefs(partial::informed_to_belief_mdp(*g, args.action_grid - 1),
                      g->initial_belief());
  }
  throw std::invalid_argument("value does not apply to " + file.kind + " files");
}

struct LimitArgs {
  std::string file;
  std::string start = "0";
  bool audit = false;
};

int cmd_limit_value(const LimitArgs& args, std::ostream& out, std::ostream& err) {
  const ModelFile file = load_model_file(args.file);
  std::optional<dp::FiniteMDP> mdp;
  if (const auto* m = std::get_if<dp::FiniteMDP>(&file.model)) mdp = *m;
  if (const auto* h = std::get_if<dp::GamblingHouse>(&file.model)) mdp = dp::house_to_mdp(*h);
  if (!mdp) throw std::invalid_argument("limit-value expects a finite_mdp file, got " + file.kind);
  const std::size_t start = find_state(file, args.start);

  const auto result = dp::limit_value_lp(*mdp, start);
  CsvWriter csv(out, {"quantity", "state", "value"});
  csv.cell(std::string("v_star")).cell(file.states[start]).cell(result.value).end_row();
  for (std::size_t k = 0; k < file.states.size(); ++k)
    csv.cell(std::string("w")).cell(file.states[k]).cell(result.certificate.w[k]).end_row();
  for (std::size_t k = 0; k < file.states.size(); ++k)
    csv.cell(std::string("h")).cell(file.states[k]).cell(result.certificate.h[k]).end_row();
  if (!args.audit) return kExitOk;

  // A positive separation value would exhibit an invariant couple above w.
  const double separation = dp::max_invariant_payoff(*mdp, result.certificate.w);
  const double residual = std::max(separation, 0.0);
  const bool bias = dp::find_superharmonic_bias(*mdp, result.certificate.w).has_value();
  const bool excessive = dp::excessive_check(*mdp, result.certificate.w);
  csv.cell(std::string("audit_residual")).empty().cell(residual).end_row();
  csv.cell(std::string("audit_bias_found")).empty().cell(std::size_t{bias}).end_row();
  csv.cell(std::string("audit_excessive")).empty().cell(std::size_t{excessive}).end_row();
  if (residual > 1e-8 || !bias || !excessive) {
    err << "error: limit value certificate failed the audit\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Belief-space distances and long-run values of dynamic programs"};
  app.require_subcommand(1);

  DstarArgs dstar;
  auto* dstar_cmd = app.add_subcommand("dstar", "d* and related distances of a belief_dist_pair");
  dstar_cmd->add_option("file", dstar.file, "Model file")->required();
  dstar_cmd->add_option("--certificates", dstar.certificates, "Random non-revealing certificates to try");
  dstar_cmd->add_option("--seed", dstar.seed, "Seed for the random certificates");
  dstar_cmd->add_option("--family", dstar.family, "Extra matrix_family certificate file");
  dstar_cmd->add_option("--witness", dstar.witness, "Write the optimal (alpha, beta) as CSV");

  ValueArgs value;
  auto* value_cmd = app.add_subcommand("value", "theta-value of a model");
  value_cmd->add_option("file", value.file, "Model file")->required();
  value_cmd->add_option("--theta", value.theta, "cesaro:n | discounted:lambda | custom:path")
      ->required();
  value_cmd->add_option("--start", value.start, "Start state (name or index)");
  value_cmd->add_option("--grid", value.grid, "Belief grid points per simplex edge");
  value_cmd->add_option("--actiongrid", value.action_grid,
                        "Grid points per coordinate of player 1's mixed actions");

  LimitArgs limit;
  auto* limit_cmd = app.add_subcommand("limit-value", "Limit value of a finite MDP by LP");
  limit_cmd->add_option("file", limit.file, "Model file")->required();
  limit_cmd->add_option("--start", limit.start, "Start state (name or index)");
  limit_cmd->add_flag("--audit", limit.audit, "Cross-check the certificate");

  std::string example;
  ExampleOptions ex;
  std::string ex_out;
  auto* ex_cmd = app.add_subcommand("examples", "Reproduce a built-in example as CSV");
  ex_cmd->add_option("name", example, "ex39 | circle | infini | dark | am | horner")->required();
  ex_cmd->add_option("--lambda", ex.lambda, "Discount rate");
  ex_cmd->add_option("--n", ex.n, "Horizon");
  ex_cmd->add_option("--grid", ex.grid, "Belief grid points");
  ex_cmd->add_option("--actiongrid", ex.action_grid, "Action grid points per coordinate");
  ex_cmd->add_option("--p", ex.p, "Persistence of the state (horner)");
  ex_cmd->add_option("--l", ex.l, "Exponent l (infini)");
  ex_cmd->add_option("--out", ex_out, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*dstar_cmd) return cmd_dstar(dstar, out, err);
    if (*value_cmd) return cmd_value(value, out);
    if (*limit_cmd) return cmd_limit_value(limit, out, err);
    if (ex_out.empty()) return run_example(example, ex, out, err);
    std::ofstream file(ex_out);
    if (!file) throw std::invalid_argument("cannot write '" + ex_out + "'");
    return run_example(example, ex, file, err);
  } catch (const lp::SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace beliefval::cli
