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

#include "dforge/gadgets.hpp"

namespace dforge::testing {

struct OracleResult {
  ComplexVector output;    // unnormalized output register, row 1 most significant
  double branch_norm2 = 0;  // probability of the outcome branch
};

// Full graph-state simulation: prepare psi on column 1 and |+> elsewhere,
// apply every CZ of the cluster, then project each measured qubit on the
// XY-plane state (|0> + (-1)^b e^{i theta}|1>)/sqrt(2). Independent of the
// column-by-column circuit used by the library.
OracleResult mbqc_project(const gadgets::GadgetConfig& cfg, const gadgets::OutcomeString& m,
                          const ComplexVector& psi);

}  // namespace dforge::testing
