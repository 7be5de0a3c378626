// Copyright 2026 The Vibronic Authors
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

#include "vibronic/param_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "vibronic/errors.h"

namespace vibronic {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(std::size_t line, const std::string& field,
                         const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (line) msg << ':' << line;
    msg << ": ";
    if (!field.empty()) msg << "field '" << field << "': ";
    msg << what;
    throw ParseError(msg.str(), line, field);
  }

  std::vector<double> numbers(std::size_t line, const std::string& field,
                              std::string_view text) const {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                   text[pos] == ',')) {
        ++pos;
      }
      if (pos >= text.size()) break;
      std::size_t end = pos;
      while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
             text[end] != ',') {
        ++end;
      }
      const std::string_view token = text.substr(pos, end - pos);
      double value = 0.0;
      // from_chars rejects a leading '+'.
      std::string_view digits = token;
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc() || ptr != digits.data() + digits.size() ||
          !std::isfinite(value)) {
        fail(line, field, "'" + std::string(token) + "' is not a number");
      }
      out.push_back(value);
      pos = end;
    }
    if (out.empty()) fail(line, field, "expected at least one number");
    return out;
  }

  double scalar(std::size_t line, const std::string& field,
                std::string_view text) const {
    const std::vector<double> values = numbers(line, field, text);
    if (values.size() != 1) fail(line, field, "expected a single number");
    return values.front();
  }

  Eigen::MatrixXd matrix(std::size_t line, const std::string& field,
                         std::string_view text) const {
    std::vector<std::vector<double>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t semi = text.find(';', start);
      const std::string_view row = trim(text.substr(
          start, semi == std::string_view::npos ? std::string_view::npos
                                                : semi - start));
      if (!row.empty()) rows.push_back(numbers(line, field, row));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (rows.empty()) fail(line, field, "empty matrix");
    if (rows.size() == 1) {
      // Flat row-major list of n*n entries.
      const std::size_t count = rows.front().size();
      const auto n = static_cast<std::size_t>(std::llround(std::sqrt(count)));
      if (n * n != count) {
        fail(line, field, "a flat matrix needs a square number of entries, got " +
                              std::to_string(count));
      }
      Eigen::MatrixXd m(n, n);
      for (std::size_t i = 0; i < count; ++i) m(i / n, i % n) = rows[0][i];
      return m;
    }
    const std::size_t cols = rows.front().size();
    Eigen::MatrixXd m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) {
        fail(line, field, "row " + std::to_string(r + 1) + " has " +
                              std::to_string(rows[r].size()) +
                              " entries, expected " + std::to_string(cols));
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

 private:
  std::string source_;
};

}  // namespace

ParamFile parse_param_file(std::istream& in, const std::string& source) {
  Parser parser(source);
  ParamFile file;
  MolecularParams& p = file.params;
  std::map<std::string, std::size_t> seen;
  std::optional<std::string> unit_system;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      parser.fail(line_no, "", "expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) parser.fail(line_no, "", "missing key before '='");
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted) {
      parser.fail(line_no, key,
                  "duplicate (first set on line " + std::to_string(it->second) + ")");
    }

    if (key == "name") {
      p.name = std::string(value);
    } else if (key == "omega_initial") {
      p.omega_initial = parser.numbers(line_no, key, value);
    } else if (key == "omega_final") {
      p.omega_final = parser.numbers(line_no, key, value);
    } else if (key == "duschinsky") {
      p.duschinsky = parser.matrix(line_no, key, value);
    } else if (key == "delta") {
      p.delta = parser.numbers(line_no, key, value);
    } else if (key == "d") {
      p.d = parser.numbers(line_no, key, value);
    } else if (key == "unit_system") {
      unit_system = std::string(value);
    } else if (key == "omega_00") {
      p.omega_00 = parser.scalar(line_no, key, value);
    } else if (key == "scale") {
      file.scale = parser.scalar(line_no, key, value);
      if (!(*file.scale > 0.0)) parser.fail(line_no, key, "must be positive");
    } else {
      parser.fail(line_no, key, "unknown field");
    }
  }

  for (const char* required : {"omega_initial", "omega_final", "duschinsky"}) {
    if (!seen.contains(required)) {
      parser.fail(0, required, "missing required field");
    }
  }
  if (!p.delta && !p.d) parser.fail(0, "delta", "one of 'delta' or 'd' is required");
  if (p.delta && p.d) {
    parser.fail(seen["d"], "d", "give either 'delta' or 'd', not both");
  }
  const std::size_t n = p.omega_initial.size();
  auto check_len = [&](const char* field, std::size_t len) {
    if (len != n) {
      parser.fail(seen[field], field,
                  "has " + std::to_string(len) + " entries but omega_initial has " +
                      std::to_string(n));
    }
  };
  check_len("omega_final", p.omega_final.size());
  check_len("duschinsky", static_cast<std::size_t>(p.duschinsky.rows()));
  check_len("duschinsky", static_cast<std::size_t>(p.duschinsky.cols()));
  if (p.delta) check_len("delta", p.delta->size());
  if (p.d) check_len("d", p.d->size());
  if (unit_system) {
    try {
      p.unit_system = parse_unit_system(*unit_system);
    } catch (const ConfigurationError& e) {
      parser.fail(seen["unit_system"], "unit_system", e.what());
    }
  }
  return file;
}

ParamFile load_param_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open parameter file " + path.string(), 0, "");
  }
  return parse_param_file(in, path.string());
}

}  // namespace vibronic
