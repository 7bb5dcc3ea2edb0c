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

// Command-line front end: model files, evaluation specs, CSV output and the
// subcommand dispatcher used by tools/beliefval.

#ifndef BELIEFVAL_CLI_HPP_
#define BELIEFVAL_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "beliefval/core.hpp"
#include "beliefval/dp.hpp"
#include "beliefval/metric.hpp"
#include "beliefval/partial.hpp"

namespace beliefval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitSolverFailure = 3;

// A model file that parses as JSON but violates the schema. The message
// names the offending field as a path such as "transitions[1][0]".
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BeliefDistPair {
  BeliefDist u;
  BeliefDist v;
};

using Model = std::variant<BeliefDistPair, dp::GamblingHouse, dp::FiniteMDP, partial::PomdpModel,
                           partial::InformedGame, metric::MatrixFamily>;

struct ModelFile {
  std::string kind;
  std::vector<std::string> states;
  Model model;
};

// Throws SchemaError (including for malformed JSON).
ModelFile parse_model_text(std::string_view text);
// Throws SchemaError, or std::invalid_argument when the file cannot be read.
ModelFile load_model_file(const std::string& path);

// "cesaro:n", "discounted:lambda" or "custom:path" (a file of stage weights
// separated by whitespace or commas). Throws std::invalid_argument.
Evaluation parse_theta(const std::string& spec);

// 12 significant digits.
std::string format_number(double x);

// RFC 4180 rows with LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double x);
  CsvWriter& cell(std::size_t x);
  CsvWriter& empty();
  void end_row();

 private:
  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

struct ExampleOptions {
  std::optional<double> lambda;
  std::optional<std::size_t> n;
  std::optional<std::size_t> grid;         // number of belief grid points
  std::optional<std::size_t> action_grid;  // points per coordinate of Delta(I)
  std::optional<double> p;
  std::optional<double> l;
};

// Writes the curve of a built-in example as CSV and returns kExitOk when all
// of its tolerances hold, kExitToleranceFailed otherwise. Check summaries go
// to `log`. Throws std::invalid_argument for an unknown name.
int run_example(const std::string& name, const ExampleOptions& options, std::ostream& out,
                std::ostream& log);

// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace beliefval::cli

#endif  // BELIEFVAL_CLI_HPP_
