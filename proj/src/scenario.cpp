// Copyright 2026 The mpzeno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpzeno/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "mpzeno/errors.hpp"

namespace mpzeno {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ValidationError("parse", "key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

long parse_long(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    long out = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ValidationError("parse", "key '" + key + "': cannot parse '" + value + "' as an integer");
  }
}

std::vector<long> parse_long_list(const std::string& value, const std::string& key) {
  std::string cleaned = value;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<long> out;
  std::string token;
  while (in >> token) out.push_back(parse_long(token, key));
  if (out.empty()) throw ValidationError("parse", "key '" + key + "': empty list");
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ValidationError("parse", "key '" + key + "': cannot parse '" + value + "' as a boolean");
}

void validate(const Scenario& sc) {
  if (sc.system != "qubit_projective" && sc.system != "cat_code" && sc.system != "decoupling" &&
      sc.system != "custom")
    throw ValidationError("parse", "unknown system '" + sc.system + "'");
  if (sc.n_grid.size() < 4)
    throw ValidationError("parse", "n_grid must contain at least 4 values");
  for (std::size_t i = 0; i + 1 < sc.n_grid.size(); ++i)
    if (sc.n_grid[i] >= sc.n_grid[i + 1])
      throw ValidationError("parse", "n_grid must be strictly increasing");
  if (sc.n_grid.front() < 1) throw ValidationError("parse", "n_grid entries must be positive");
  for (int k : sc.k_orders)
    if (k < 0 || k > 8) throw ValidationError("parse", "k_orders must lie within [0, 8]");
  if (!(sc.gap_tol > 0.0) || sc.gap_tol >= 0.5)
    throw ValidationError("parse", "gap_tol must lie in (0, 0.5)");
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& base_dir) {
  Scenario sc;
  sc.base_dir = base_dir;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']')
        throw ValidationError("parse",
                              "line " + std::to_string(line_number) + ": unterminated section header");
      continue;  // headers are grouping only; keys stay flat
    }
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ValidationError("parse", "line " + std::to_string(line_number) +
                                         ": expected 'key = value', got '" + stripped + "'");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError("parse",
                            "line " + std::to_string(line_number) + ": empty key or value");

    if (key == "name") {
      sc.name = value;
    } else if (key == "system") {
      sc.system = value;
    } else if (key == "t") {
      sc.time = parse_double(value, key);
    } else if (key == "n_grid") {
      sc.n_grid = parse_long_list(value, key);
    } else if (key == "k_orders") {
      sc.k_orders.clear();
      for (long k : parse_long_list(value, key)) sc.k_orders.push_back(static_cast<int>(k));
    } else if (key == "norm") {
      if (value == "spectral")
        sc.norm_kind = NormKind::spectral;
      else if (value == "one11")
        sc.norm_kind = NormKind::one_to_one_lower;
      else
        throw ValidationError("parse", "norm must be 'spectral' or 'one11'");
    } else if (key == "out") {
      sc.output_path = value;
    } else if (key == "gap_tol") {
      sc.gap_tol = parse_double(value, key);
    } else if (key == "q_max") {
      sc.q_max = parse_long(value, key);
    } else if (key == "phase_tol") {
      sc.phase_tol = parse_double(value, key);
    } else if (key == "power_n_max") {
      sc.power_n_max = parse_long(value, key);
    } else if (key == "contour_nodes") {
      sc.contour_nodes = static_cast<int>(parse_long(value, key));
    } else if (key == "seed") {
      sc.seed = static_cast<unsigned>(parse_long(value, key));
    } else if (key == "lemmas") {
      sc.lemmas = parse_bool(value, key);
    } else {
      sc.params[key] = value;  // system parameter; validated by the builder
    }
  }
  if (sc.system.empty()) throw ValidationError("parse", "missing required key 'system'");
  if (sc.output_path.empty()) sc.output_path = sc.name + ".csv";
  validate(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("parse", "cannot open scenario file '" + path + "'");
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return parse_scenario(in, dir);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("parse", "cannot open matrix file '" + path + "'");
  Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw ValidationError("parse", "matrix file '" + path + "': bad 'rows cols' header");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      if (!(in >> re >> im))
        throw ValidationError("parse", "matrix file '" + path + "': truncated entries");
      m(i, j) = Complex(re, im);
    }
  return m;
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ValidationError("parse", "cannot write matrix file '" + path + "'");
  out << m.rows() << " " << m.cols() << "\n";
  out.precision(17);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      out << m(i, j).real() << " " << m(i, j).imag();
      out << (j + 1 == m.cols() ? "\n" : " ");
    }
  }
}

}  // namespace mpzeno
