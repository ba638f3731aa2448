// Copyright 2026 The dforge Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dforge/errors.hpp"
#include "dforge/gadgets.hpp"

namespace dforge::cli {

inline constexpr int kSchemaVersion = 1;

// Config or CLI usage error; reported with exit code 2 like other domain errors.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

const std::vector<std::string>& commands();
bool is_sampling_command(const std::string& command);

struct CapOverrides {
  std::optional<std::size_t> max_moment_dim;
  std::optional<int> max_enumerated_bits;
  std::optional<std::size_t> max_concat_entries;
  bool operator==(const CapOverrides&) const = default;
};

struct RunConfig {
  std::string command;
  // Exactly one source: gadget, ensemble file / inline ensemble, or Haar.
  std::optional<gadgets::GadgetConfig> gadget;
  std::optional<std::string> ensemble_path;
  std::optional<std::string> ensemble_inline;  // compact JSON text
  std::optional<int> haar_qubits;

  int power = 1;  // concatenation power applied to the source
  int t = 2;
  double alpha = 0.5;
  double eps_d = 0.1132;
  std::int64_t shots = 100000;
  std::optional<std::uint64_t> seed;
  double tol = 1e-8;
  int k_max = 6;

  // Bounds and factorization inputs.
  std::string bound = "theorem1";
  int n = 2;
  double c = 0.9;
  double a = 0.5;
  double eps_prime = 0.01;
  double eps = 0.01;
  std::optional<double> eta;
  std::optional<double> lambda;
  double mu = 1.0 / 22.0;
  double delta = 0.1132;
  std::string log_mode = "natural";

  CapOverrides caps;
  std::optional<std::string> csv;  // side file for bulk arrays

  bool operator==(const RunConfig&) const = default;
};

// Parses a JSON config. Unknown keys and out-of-range values raise
// ConfigError naming the key path. `command` fills or must match the
// config's own "command" key.
RunConfig parse_config(const std::string& text, const std::string& command = {},
                       const std::string& base_dir = {});

// Resolved config as JSON text (defaults filled); parse_config inverts it.
std::string serialize(const RunConfig& cfg);

struct RunOutcome {
  std::string report;  // JSON text
  int exit_code = 0;
};

// Executes the command; every error is captured into the report.
RunOutcome run_report(const RunConfig& cfg, const Caps& base_caps, int threads);

// Report with the volatile timestamp field removed, for comparisons.
std::string strip_timestamp(const std::string& report);

}  // namespace dforge::cli
