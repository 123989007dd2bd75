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

#include <stdexcept>
#include <string>
#include <utility>

namespace mpzeno {

// Process exit codes used by the CLI. Every thrown error maps onto one of
// these so that failure paths keep a stable, scriptable contract.
enum class ExitCode : int {
  ok = 0,
  validation = 2,  // parse / precondition / invariant violations
  spectral = 3,    // gap violations, defective periphery, irrational phases
  numerical = 4,   // instability, degenerate fits
  acceptance = 5,  // a requested convergence order was not reached
};

class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what, ExitCode code)
      : std::runtime_error(what), name_(std::move(name)), code_(code) {}

  // Short machine-readable identifier ("gap_violation", "parse", ...).
  const std::string& name() const { return name_; }
  ExitCode exit_code() const { return code_; }

 private:
  std::string name_;
  ExitCode code_;
};

struct ValidationError : Error {
  ValidationError(std::string name, const std::string& what)
      : Error(std::move(name), what, ExitCode::validation) {}
};

struct SpectralError : Error {
  SpectralError(std::string name, const std::string& what)
      : Error(std::move(name), what, ExitCode::spectral) {}
};

struct NumericalError : Error {
  NumericalError(std::string name, const std::string& what)
      : Error(std::move(name), what, ExitCode::numerical) {}
};

}  // namespace mpzeno
