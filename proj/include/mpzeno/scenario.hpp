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

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpzeno/zeno.hpp"

namespace mpzeno {

// Scenario files are flat `key = value` text; `[section]` headers are allowed
// as grouping and `#` starts a comment. Unknown keys land in `params` and are
// validated by the system builder.
struct Scenario {
  std::string name = "scenario";
  std::string system;  // qubit_projective | cat_code | decoupling | custom
  std::map<std::string, std::string> params;

  std::optional<double> time;  // defaulted per system when absent
  std::vector<long> n_grid = {8, 16, 32, 64, 128, 256};
  std::vector<int> k_orders = {0, 1};
  NormKind norm_kind = NormKind::spectral;
  std::string output_path;  // defaults to "<name>.csv"

  double gap_tol = 0.2;
  long q_max = 64;
  double phase_tol = 1e-9;
  long power_n_max = 30;
  int contour_nodes = 64;
  unsigned seed = 0;
  bool lemmas = false;

  std::string base_dir;  // directory of the scenario file, for sidecar paths
};

Scenario parse_scenario(std::istream& in, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

// Sidecar format: first line "rows cols", then rows x cols entries as
// whitespace-separated "re im" pairs in row-major order.
Matrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const Matrix& m);

}  // namespace mpzeno
