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

#include "dforge/ensemble.hpp"
#include "dforge/gadgets.hpp"
#include "dforge/rng.hpp"

namespace dforge::ensembles {

inline constexpr double kPhaseTol = 1e-8;

enum class InvertibilityClass { invertible, partially_invertible, non_invertible };

std::string to_string(InvertibilityClass c);

struct InvertibilityReport {
  InvertibilityClass cls = InvertibilityClass::non_invertible;
  std::vector<std::size_t> invertible_subset_indices;  // into the deduplicated set
  double ratio_a = 0.0;
  std::size_t distinct = 0;
  double tol = kPhaseTol;
};

UnitaryEnsemble concat_power(const UnitaryEnsemble& e, int k,
                             std::size_t max_entries = 1000000);

// Layers (I x U_{2,3} x ... x I)(U_{1,2} x U_{3,4} x ...) on n wires.
// Unpaired wires carry `idle` (identity when absent).
UnitaryEnsemble block_compose(const UnitaryEnsemble& e, int n,
                              std::size_t max_entries = 1000000,
                              const std::optional<UnitaryEnsemble>& idle = std::nullopt);

InvertibilityReport classify_invertibility(const UnitaryEnsemble& e, double tol = kPhaseTol);

UnitaryEnsemble dedup_up_to_phase(const UnitaryEnsemble& e, double tol = kPhaseTol);

bool equal_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kPhaseTol);

// Multiset equality of (probability, phase class) after merging duplicates.
bool same_up_to_phase(const UnitaryEnsemble& a, const UnitaryEnsemble& b,
                      double tol = kPhaseTol);

UnitaryEnsemble with_adjoints(const UnitaryEnsemble& e);

struct Draw {
  std::size_t index = 0;       // entry index, or outcome index for gadgets
  gadgets::OutcomeString bits;  // gadgets only
  ComplexMatrix unitary;
};

Draw sample(const UnitaryEnsemble& e, rng::CounterRng& r);
// Lazy gadget access: uniform outcome string, unitary evaluated on demand.
Draw sample(const gadgets::GraphGadget& g, rng::CounterRng& r);

std::string to_json(const UnitaryEnsemble& e);
UnitaryEnsemble from_json(const std::string& text);

}  // namespace dforge::ensembles
