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

#include <optional>
#include <string>
#include <vector>

#include "dforge/ensemble.hpp"
#include "dforge/linalg.hpp"

namespace dforge::universality {

struct LieClosureResult {
  int closure_dim = 0;
  int ambient_dim = 0;    // d^2
  int traceless_dim = 0;  // dimension of the traceless projection
  bool universal = false;  // traceless_dim == d^2 - 1
  int iterations = 0;      // commutators evaluated
  bool branch_cut_warning = false;
};

// Real Lie algebra generated by the Hermitian logs of `generators` inside
// the d^2-dimensional space of Hermitian matrices.
LieClosureResult lie_closure_dim(const std::vector<ComplexMatrix>& generators,
                                 double rank_tol = 1e-8);

struct RationalityVerdict {
  double angle_over_pi = 0.0;
  bool rational = false;  // otherwise irrational-likely
  long long p = 0;
  long long q = 1;
  long long q_max = 10000;
  double tol = 1e-12;

  std::string label() const;
};

RationalityVerdict rationality_class(double theta, long long q_max = 10000, double tol = 1e-12);

// HZ(a)HZ(a) = e^{ia} exp(i delta (aX + bY + cZ)) with Z(a) = diag(1, e^{ia}).
struct Lemma5Params {
  double delta = 0.0;  // cos(delta) = cos^2(alpha/2)
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual = 0.0;
  bool degenerate = false;  // alpha = 0 mod 2pi, rotation axis undefined
  // Literal printed values kept for comparison: delta = cos^2(alpha/2), b < 0.
  double printed_delta = 0.0;
  double printed_b = 0.0;
};

Lemma5Params lemma5_params(double alpha);

struct UniversalityReport {
  LieClosureResult closure;
  std::size_t distinct = 0;
  bool spectral_irrational = false;  // some eigenvalue-argument difference
  bool det_irrational = false;
  std::vector<RationalityVerdict> det_classes;
  // Spectral radius of M_2 - M_H. A unit value means an invariant of the
  // generated group beyond the permutations, so the group is not dense.
  std::optional<double> t2_radius;
  bool t2_invariants = false;
  std::string verdict;  // universal | not-universal | inconclusive
  std::vector<std::string> warnings;
};

// Verdict is universal only when the traceless closure is su(d), some
// eigenvalue-argument difference is irrational, and (when d^4 fits the caps)
// the second moment has no unit-modulus eigenvalue outside the Haar space.
UniversalityReport check_universal(const UnitaryEnsemble& e, double phase_tol = 1e-8,
                                   const Caps& caps = {});

}  // namespace dforge::universality
