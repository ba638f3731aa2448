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

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dforge/errors.hpp"

namespace dforge {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace linalg {

inline constexpr double kUnitaryTol = 1e-10;

struct Spectrum {
  // Sorted by modulus descending, ties by argument ascending.
  std::vector<cplx> eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;  // columns follow eigenvalues
};

struct LogResult {
  ComplexMatrix h;  // Hermitian, U = exp(iH)
  bool branch_cut = false;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim = std::size_t{1} << 20);

// U^{⊗t}
ComplexMatrix tensor_power(const ComplexMatrix& u, int t,
                           std::size_t max_dim = std::size_t{1} << 20);

double spectral_norm(const ComplexMatrix& a);

// Frobenius norm divided by sqrt(dim), so the identity has norm 1.
double nfrob_norm(const ComplexMatrix& a);

Spectrum eig_spectrum(const ComplexMatrix& a, bool with_vectors = false,
                      std::size_t max_dim = 4096);

LogResult principal_log(const ComplexMatrix& u);

// exp(iH) for Hermitian H.
ComplexMatrix expm_i_hermitian(const ComplexMatrix& h);

ComplexMatrix phase_normalize(const ComplexMatrix& u);

bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);
bool all_finite(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);

void sort_spectrum(std::vector<cplx>& values, std::vector<int>* order = nullptr);

// Standard gates.
ComplexMatrix hadamard();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix cz();

// Haar-random unitary from a Ginibre matrix already filled by the caller.
ComplexMatrix haar_from_ginibre(const ComplexMatrix& g);

// Matrix-free operator on C^dim.
struct LinearOperator {
  Eigen::Index dim = 0;
  std::function<void(const ComplexVector&, ComplexVector&)> apply;
};

struct KrylovOptions {
  int nev = 4;           // wanted eigenvalues of largest modulus
  int ncv = 0;           // basis size; 0 picks max(2*nev+1, 24)
  double tol = 1e-12;    // relative residual
  int max_restarts = 2000;
  std::uint64_t seed = 0x5eedULL;
};

struct KrylovResult {
  std::vector<cplx> values;     // sorted like Spectrum
  std::vector<double> residuals;
  int restarts = 0;
  int matvecs = 0;
  bool converged = false;
};

// Krylov-Schur iteration for the eigenvalues of largest modulus.
KrylovResult leading_eigenvalues(const LinearOperator& op,
                                 const KrylovOptions& opts = {});

// Largest singular value of a matrix-free operator given its adjoint.
double operator_norm(const LinearOperator& op, const LinearOperator& adjoint,
                     const KrylovOptions& opts = {});

// Reorders a complex Schur form T (upper triangular) so that T(i,i) are
// sorted by descending modulus; Q accumulates the rotations.
void reorder_schur(ComplexMatrix& t, ComplexMatrix& q);

}  // namespace linalg
}  // namespace dforge
