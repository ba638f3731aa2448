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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dforge {

// Input outside an operation's mathematical domain (exit code 2 in the CLI).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size cap would be exceeded (exit code 3 in the CLI).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An iterative or dense numerical routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size limits shared by all modules. Defaults match the documented caps;
// DFORGE_MAX_DIM overrides max_kron_dim and max_moment_dim.
struct Caps {
  std::size_t max_kron_dim = std::size_t{1} << 20;
  std::size_t max_moment_dim = 4096;
  std::size_t dense_eig_dim = 4096;
  std::size_t dense_subdominant_dim = 256;
  int max_enumerated_bits = 24;
  std::size_t max_concat_entries = 1000000;
  int max_exact_bits = 24;
  int max_sample_rows = 20;

  static Caps from_env();
};

}  // namespace dforge
