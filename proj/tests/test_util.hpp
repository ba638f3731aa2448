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

#include <random>

#include "dforge/ensemble.hpp"
#include "dforge/linalg.hpp"

namespace dforge::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& gen, int n) {
  std::normal_distribution<double> nd;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(nd(gen), nd(gen));
  return a;
}

inline ComplexMatrix random_unitary(std::mt19937_64& gen, int n) {
  return linalg::haar_from_ginibre(random_matrix(gen, n));
}

inline UnitaryEnsemble random_ensemble(std::mt19937_64& gen, int d, int size) {
  std::vector<ComplexMatrix> us;
  for (int i = 0; i < size; ++i) us.push_back(random_unitary(gen, d));
  return UnitaryEnsemble::uniform(us);
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace dforge::testing
