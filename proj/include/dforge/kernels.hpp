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
#include <vector>

#include "dforge/linalg.hpp"

// Data-parallel kernels. Each parallel kernel has a `_serial` reference with
// the same contract; parallel results do not depend on the thread count.
namespace dforge::kernels {

// One ensemble term p * V (x) conj(V) with V = U^{(x)t}.
struct Term {
  double weight = 0.0;
  ComplexMatrix v;
};

// Sum_i w_i V_i (x) conj(V_i), entry ((a,b),(c,d)) = Sum w V[a,c] conj(V[b,d]).
ComplexMatrix moment_matrix(const std::vector<Term>& terms);
ComplexMatrix moment_matrix_serial(const std::vector<Term>& terms);

// y = Sum_i w_i V_i X V_i^H with x the row-major vectorization of X.
// `adjoint` applies Sum_i w_i V_i^H X V_i instead.
void moment_apply(const std::vector<Term>& terms, const ComplexVector& x, ComplexVector& y,
                  bool adjoint = false);
void moment_apply_serial(const std::vector<Term>& terms, const ComplexVector& x,
                         ComplexVector& y, bool adjoint = false);

// Sum_{i,j} p_i p_j |Tr(U_i^H U_j)|^{2t}
double frame_potential(const std::vector<double>& p, const std::vector<ComplexMatrix>& u, int t);
double frame_potential_serial(const std::vector<double>& p, const std::vector<ComplexMatrix>& u,
                              int t);

// Mean of U^{(x)t} (x) conj(U)^{(x)t} over `samples` Haar unitaries; sample
// i is drawn from the counter stream (seed, i).
ComplexMatrix haar_montecarlo(int d, int t, std::int64_t samples, std::uint64_t seed);
ComplexMatrix haar_montecarlo_serial(int d, int t, std::int64_t samples, std::uint64_t seed);

ComplexMatrix haar_sample(int d, std::uint64_t seed, std::uint64_t index);

int max_threads();
void set_threads(int n);

}  // namespace dforge::kernels
