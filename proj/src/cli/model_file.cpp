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
#include <set>
#include <sstream>

#include "beliefval/cli.hpp"
#include "json.hpp"

namespace beliefval::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::string field(const std::string& path, const std::string& name) {
  return path.empty() ? name : path + "." + name;
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail(field(path, key), "unknown field");
  }
  for (const std::string& key : allowed) {
    if (!obj.contains(key)) fail(field(path, key), "missing field");
  }
}

const json& array_of(const json& v, const std::string& path, std::optional<std::size_t> size) {
  if (!v.is_array()) fail(path, "expected an array");
  if (size && v.size() != *size) {
    fail(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& path,
                            std::optional<std::size_t> size) {
  array_of(v, path, size);
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], at(path, i)));
  return out;
}

std::vector<std::string> names(const json& v, const std::string& path) {
  array_of(v, path, std::nullopt);
  if (v.empty()) fail(path, "expected at least one entry");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) fail(at(path, i), "expected a string");
    out.push_back(v[i].get<std::string>());
    if (!seen.insert(out.back()).second) fail(at(path, i), "duplicate name '" + out.back() + "'");
  }
  return out;
}

// A reference to a named element, given as an index or as its name.
std::size_t resolve(const json& v, const std::vector<std::string>& list,
                    const std::string& path) {
  if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
    const auto i = v.get<std::size_t>();
    if (i >= list.size()) fail(path, "index " + std::to_string(i) + " out of range");
    return i;
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i] == s) return i;
    fail(path, "unknown name '" + s + "'");
  }
  fail(path, "expected an index or a name");
}

template <typename F>
auto wrap(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

// [[target, probability], ...] as a sparse distribution.
dp::StateDist state_dist(const json& v, const std::vector<std::string>& states,
                         const std::string& path) {
  array_of(v, path, std::nullopt);
  dp::StateDist entries;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = at(path, i);
    array_of(v[i], p, 2);
    entries.emplace_back(resolve(v[i][0], states, at(p, 0)), number(v[i][1], at(p, 1)));
  }
  return wrap(path, [&] { return dp::make_state_dist(std::move(entries), states.size()); });
}

// [[state, signal, probability], ...] as a table over K x S.
JointDist joint_dist(const json& v, const std::vector<std::string>& states,
                     const std::vector<std::string>& signals, const std::string& path) {
  array_of(v, path, std::nullopt);
  std::vector<double> table(states.size() * signals.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = at(path, i);
    array_of(v[i], p, 3);
    const std::size_t k = resolve(v[i][0], states, at(p, 0));
    const std::size_t s = resolve(v[i][1], signals, at(p, 1));
    table[k * signals.size() + s] += number(v[i][2], at(p, 2));
  }
  return wrap(path, [&] { return JointDist(states.size(), signals.size(), std::move(table)); });
}

BeliefDist belief_dist(const json& v, std::size_t dim, const std::string& path) {
  array_of(v, path, std::nullopt);
  if (v.empty()) fail(path, "expected at least one atom");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = at(path, i);
    check_keys(v[i], p, {"point", "weight"});
    const auto coords = numbers(v[i]["point"], field(p, "point"), dim);
    SimplexPoint point = wrap(field(p, "point"), [&] { return SimplexPoint(coords); });
    atoms.push_back({std::move(point), number(v[i]["weight"], field(p, "weight"))});
  }
  return wrap(path, [&] { return BeliefDist(std::move(atoms)); });
}

ModelFile parse_belief_dist_pair(const json& doc) {
  check_keys(doc, "", {"version", "kind", "states", "u", "v"});
  auto states = names(doc["states"], "states");
  const std::size_t dim = states.size();
  BeliefDistPair pair{belief_dist(doc["u"], dim, "u"), belief_dist(doc["v"], dim, "v")};
  return {"belief_dist_pair", std::move(states), std::move(pair)};
}

ModelFile parse_gambling_house(const json& doc) {
  check_keys(doc, "", {"version", "kind", "states", "payoffs", "options"});
  auto states = names(doc["states"], "states");
  const std::size_t n = states.size();
  auto payoffs = numbers(doc["payoffs"], "payoffs", n);
  array_of(doc["options"], "options", n);
  std::vector<std::vector<dp::StateDist>> options(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::string p = at("options", x);
    array_of(doc["options"][x], p, std::nullopt);
    for (std::size_t o = 0; o < doc["options"][x].size(); ++o)
      options[x].push_back(state_dist(doc["options"][x][o], states, at(p, o)));
  }
  auto house = wrap("options", [&] { return dp::GamblingHouse(payoffs, options); });
  return {"gambling_house", std::move(states), std::move(house)};
}

ModelFile parse_finite_mdp(const json& doc) {
  check_keys(doc, "", {"version", "kind", "states", "actions", "payoffs", "transitions"});
  auto states = names(doc["states"], "states");
  const auto actions = names(doc["actions"], "actions");
  const std::size_t nk = states.size();
  const std::size_t na = actions.size();
  array_of(doc["payoffs"], "payoffs", nk);
  array_of(doc["transitions"], "transitions", nk);
  std::vector<std::vector<double>> q;
  std::vector<double> g;
  for (std::size_t k = 0; k < nk; ++k) {
    const auto row = numbers(doc["payoffs"][k], at("payoffs", k), na);
    g.insert(g.end(), row.begin(), row.end());
    const std::string p = at("transitions", k);
    array_of(doc["transitions"][k], p, na);
    for (std::size_t a = 0; a < na; ++a) {
      std::vector<double> dense(nk, 0.0);
      for (const auto& [y, w] : state_dist(doc["transitions"][k][a], states, at(p, a)))
        dense[y] += w;
      q.push_back(std::move(dense));
    }
  }
  auto mdp = wrap("payoffs", [&] { return dp::FiniteMDP(nk, na, q, g); });
  return {"finite_mdp", std::move(states), std::move(mdp)};
}

ModelFile parse_pomdp(const json& doc) {
  check_keys(doc, "",
             {"version", "kind", "states", "actions", "signals", "payoffs", "transitions",
              "initial"});
  auto states = names(doc["states"], "states");
  const auto actions = names(doc["actions"], "actions");
  const auto signals = names(doc["signals"], "signals");
  const std::size_t nk = states.size();
  const std::size_t na = actions.size();
  array_of(doc["payoffs"], "payoffs", nk);
  array_of(doc["transitions"], "transitions", nk);
  std::vector<JointDist> q;
  std::vector<double> g;
  for (std::size_t k = 0; k < nk; ++k) {
    const auto row = numbers(doc["payoffs"][k], at("payoffs", k), na);
    g.insert(g.end(), row.begin(), row.end());
    const std::string p = at("transitions", k);
    array_of(doc["transitions"][k], p, na);
    for (std::size_t a = 0; a < na; ++a)
      q.push_back(joint_dist(doc["transitions"][k][a], states, signals, at(p, a)));
  }
  const auto init = numbers(doc["initial"], "initial", nk);
  SimplexPoint initial = wrap("initial", [&] { return SimplexPoint(init); });
  auto model = wrap("payoffs", [&] { return partial::PomdpModel(na, q, g, initial); });
  return {"pomdp", std::move(states), std::move(model)};
}

ModelFile parse_informed_game(const json& doc) {
  check_keys(doc, "",
             {"version", "kind", "states", "rows", "cols", "signals", "payoffs", "transitions",
              "initial"});
  auto states = names(doc["states"], "states");
  const auto rows = names(doc["rows"], "rows");
  const auto cols = names(doc["cols"], "cols");
  const auto signals = names(doc["signals"], "signals");
  const std::size_t nk = states.size();
  const std::size_t ni = rows.size();
  array_of(doc["payoffs"], "payoffs", nk);
  array_of(doc["transitions"], "transitions", nk);
  std::vector<JointDist> q;
  std::vector<double> g;
  for (std::size_t k = 0; k < nk; ++k) {
    const std::string pp = at("payoffs", k);
    array_of(doc["payoffs"][k], pp, ni);
    for (std::size_t i = 0; i < ni; ++i) {
      const auto row = numbers(doc["payoffs"][k][i], at(pp, i), cols.size());
      g.insert(g.end(), row.begin(), row.end());
    }
    const std::string pt = at("transitions", k);
    array_of(doc["transitions"][k], pt, ni);
    for (std::size_t i = 0; i < ni; ++i)
      q.push_back(joint_dist(doc["transitions"][k][i], states, signals, at(pt, i)));
  }
  JointDist initial = joint_dist(doc["initial"], states, signals, "initial");
  auto game = wrap("payoffs", [&] {
    return partial::InformedGame(ni, cols.size(), q, g, initial);
  });
  return {"informed_game", std::move(states), std::move(game)};
}

ModelFile parse_matrix_family(const json& doc) {
  check_keys(doc, "", {"version", "kind", "states", "games"});
  auto states = names(doc["states"], "states");
  array_of(doc["games"], "games", states.size());
  std::vector<lp::MatrixGame> games;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::string p = at("games", k);
    array_of(doc["games"][k], p, std::nullopt);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < doc["games"][k].size(); ++i)
      rows.push_back(numbers(doc["games"][k][i], at(p, i), std::nullopt));
    games.push_back(wrap(p, [&] { return lp::MatrixGame(Matrix::from_rows(rows)); }));
  }
  auto family = wrap("games", [&] { return metric::MatrixFamily(std::move(games)); });
  return {"matrix_family", std::move(states), std::move(family)};
}

}  // namespace

ModelFile parse_model_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("<document>: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("<root>", "expected an object");
  if (!doc.contains("version")) fail("version", "missing field");
  if (doc["version"] != "v1") fail("version", "expected \"v1\"");
  if (!doc.contains("kind") || !doc["kind"].is_string()) fail("kind", "missing or not a string");
  const auto kind = doc["kind"].get<std::string>();
  if (kind == "belief_dist_pair") return parse_belief_dist_pair(doc);
  if (kind == "gambling_house") return parse_gambling_house(doc);
  if (kind == "finite_mdp") return parse_finite_mdp(doc);
  if (kind == "pomdp") return parse_pomdp(doc);
  if (kind == "informed_game") return parse_informed_game(doc);
  if (kind == "matrix_family") return parse_matrix_family(doc);
  fail("kind", "unknown kind '" + kind + "'");
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model_text(text.str());
}

}  // namespace beliefval::cli
