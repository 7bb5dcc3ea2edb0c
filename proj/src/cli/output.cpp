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
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "beliefval/cli.hpp"

namespace beliefval::cli {
namespace {

template <typename T>
T parse_full(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (!in || !(in >> std::ws).eof()) {
    throw std::invalid_argument("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::string escape(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Evaluation parse_theta(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("theta '" + spec + "' must look like kind:argument");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "cesaro") {
    if (arg.empty() || arg.front() == '-') throw std::invalid_argument("cesaro needs n >= 1");
    return make_evaluation_cesaro(parse_full<std::size_t>(arg, "cesaro horizon"));
  }
  if (kind == "discounted") {
    return make_evaluation_discounted(parse_full<double>(arg, "discount rate"));
  }
  if (kind == "custom") {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open evaluation file '" + arg + "'");
    std::vector<double> weights;
    std::string token;
    while (in >> token) {
      std::stringstream parts(token);
      std::string piece;
      while (std::getline(parts, piece, ','))
        if (!piece.empty()) weights.push_back(parse_full<double>(piece, "stage weight"));
    }
    if (weights.empty()) throw std::invalid_argument("evaluation file '" + arg + "' is empty");
    return Evaluation(std::move(weights));
  }
  throw std::invalid_argument("unknown theta kind '" + kind + "'");
}

std::string format_number(double x) {
  std::ostringstream out;
  // Print negative zero as "0".
  out << std::setprecision(12) << (x == 0.0 ? 0.0 : x);
  return out.str();
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (const std::string& h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  if (filled_++ > 0) out_ << ',';
  out_ << escape(text);
  return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_number(x)); }

CsvWriter& CsvWriter::cell(std::size_t x) { return cell(std::to_string(x)); }

CsvWriter& CsvWriter::empty() { return cell(std::string()); }

void CsvWriter::end_row() {
  if (filled_ != columns_) {
    throw std::logic_error("CsvWriter: row has " + std::to_string(filled_) + " cells, expected " +
                           std::to_string(columns_));
  }
  out_ << '\n';
  filled_ = 0;
}

}  // namespace beliefval::cli
