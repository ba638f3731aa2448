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

#include <string>
#include <vector>

#include "dforge/linalg.hpp"

namespace dforge {

struct EnsembleEntry {
  double probability = 0.0;
  ComplexMatrix unitary;
};

// Finite list of (p_i, U_i). Probabilities sum to one within 1e-12 and all
// unitaries share `dim`.
struct UnitaryEnsemble {
  int dim = 0;
  std::vector<EnsembleEntry> entries;
  std::string label;

  std::size_t size() const { return entries.size(); }
  // Throws DomainError describing the first violated invariant.
  void validate(double prob_tol = 1e-12, double unitary_tol = linalg::kUnitaryTol) const;

  static UnitaryEnsemble uniform(std::vector<ComplexMatrix> unitaries,
                                 std::string label = {});
};

}  // namespace dforge
