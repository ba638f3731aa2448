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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dforge/gadgets.hpp"
#include "dforge/linalg.hpp"
#include "test_util.hpp"

namespace dforge {
namespace {

using linalg::kron;
using testing::max_diff;

const double kPi = std::numbers::pi;

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
            ComplexMatrix::Identity(4, 4));
}

TEST(Kron, XTensorIdentitySwapsBlocks) {
  const ComplexMatrix k = kron(linalg::pauli_x(), ComplexMatrix::Identity(2, 2));
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 2) = expect(2, 0) = expect(1, 3) = expect(3, 1) = 1.0;
  EXPECT_EQ(k, expect);
}

TEST(Kron, MatchesQuadrupleLoop) {
  const ComplexMatrix a = gadgets::hz(0.3);
  const ComplexMatrix b = gadgets::hz(0.7);
  const ComplexMatrix k = kron(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) EXPECT_EQ(k(i * 2 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Kron, CapacityError) {
  const ComplexMatrix a = ComplexMatrix::Identity(64, 64);
  EXPECT_THROW(kron(a, a, 1000), CapacityError);
}

TEST(SpectralNorm, Basics) {
  EXPECT_NEAR(linalg::spectral_norm(ComplexMatrix::Identity(4, 4)), 1.0, 1e-14);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = cplx(0, -2);
  EXPECT_NEAR(linalg::spectral_norm(d), 3.0, 1e-14);
}

TEST(SpectralNorm, AgreesWithGramEigenvalue) {
  std::mt19937_64 gen(11);
  const ComplexMatrix a = testing::random_matrix(gen, 8);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a);
  const double ref = std::sqrt(es.eigenvalues().maxCoeff());
  EXPECT_NEAR(linalg::spectral_norm(a), ref, 1e-10 * ref);
}

TEST(NfrobNorm, Normalization) {
  std::mt19937_64 gen(3);
  for (int n : {1, 2, 5, 16}) EXPECT_NEAR(linalg::nfrob_norm(ComplexMatrix::Identity(n, n)), 1.0, 1e-14);
  EXPECT_NEAR(linalg::nfrob_norm(testing::random_unitary(gen, 8)), 1.0, 1e-12);
  EXPECT_NEAR(linalg::nfrob_norm(ComplexMatrix::Ones(2, 2)), std::sqrt(2.0), 1e-14);
}

TEST(NormFacts, SandwichAndMultiplicativity) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 << (1 + trial % 3);
    const ComplexMatrix a = testing::random_matrix(gen, n);
    const ComplexMatrix b = testing::random_matrix(gen, 2);
    const double s = linalg::spectral_norm(a);
    const double f = linalg::nfrob_norm(a);
    const double rt = std::sqrt(static_cast<double>(n));
    EXPECT_LE(s / rt, f * (1 + 1e-10));
    EXPECT_LE(f, rt * s * (1 + 1e-10));
    const ComplexMatrix k = kron(a, b);
    EXPECT_NEAR(linalg::nfrob_norm(k), f * linalg::nfrob_norm(b), 1e-10 * f * linalg::nfrob_norm(b));
    EXPECT_NEAR(linalg::spectral_norm(k), s * linalg::spectral_norm(b), 1e-10 * s * linalg::spectral_norm(b));
  }
}

TEST(EigSpectrum, DiagonalSorted) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 0.5;
  d(2, 2) = 1.0;
  const auto s = linalg::eig_spectrum(d);
  ASSERT_EQ(s.eigenvalues.size(), 3U);
  EXPECT_NEAR(std::abs(s.eigenvalues[0] - 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvalues[1] - 0.5), 0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvalues[2]), 0, 1e-14);
}

TEST(EigSpectrum, PauliXTiesByArgument) {
  const auto s = linalg::eig_spectrum(linalg::pauli_x());
  // Equal moduli: argument ascending puts +1 (arg 0) before -1 (arg pi).
  EXPECT_NEAR(std::abs(s.eigenvalues[0] - 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvalues[1] + 1.0), 0, 1e-14);
}

TEST(EigSpectrum, TwoElementMoment) {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix x = linalg::pauli_x();
  const ComplexMatrix m = 0.5 * (kron(i2, i2) + kron(x, x));
  const auto s = linalg::eig_spectrum(m, true);
  const std::vector<double> expect{1, 1, 0, 0};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(s.eigenvalues[k] - expect[k]), 0, 1e-12);
  ASSERT_TRUE(s.eigenvectors.has_value());
  for (int k = 0; k < 4; ++k) {
    const ComplexVector v = s.eigenvectors->col(k);
    EXPECT_LE((m * v - s.eigenvalues[static_cast<std::size_t>(k)] * v).norm(), 1e-8);
  }
}

TEST(EigSpectrum, CapEnforced) {
  EXPECT_THROW(linalg::eig_spectrum(ComplexMatrix::Identity(8, 8), false, 4), CapacityError);
}

TEST(PrincipalLog, IdentityAndZ) {
  EXPECT_LE(linalg::principal_log(ComplexMatrix::Identity(3, 3)).h.cwiseAbs().maxCoeff(), 1e-14);
  const auto lz = linalg::principal_log(linalg::pauli_z());
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(1, 1) = kPi;
  EXPECT_LE(max_diff(lz.h, expect), 1e-12);
  EXPECT_TRUE(lz.branch_cut);
}

TEST(PrincipalLog, RoundTripRandomUnitaries) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const ComplexMatrix u = testing::random_unitary(gen, n);
    const auto lg = linalg::principal_log(u);
    EXPECT_LE(max_diff(lg.h, lg.h.adjoint()), 1e-10);
    EXPECT_LE(max_diff(linalg::expm_i_hermitian(lg.h), u), 1e-8);
  }
}

TEST(PhaseNormalize, RemovesGlobalPhase) {
  const ComplexMatrix u = std::polar(1.0, kPi / 3) * ComplexMatrix::Identity(2, 2);
  EXPECT_LE(max_diff(linalg::phase_normalize(u), ComplexMatrix::Identity(2, 2)), 1e-14);
}

TEST(PhaseNormalize, InvariantAndIdempotent) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ud(0, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix u = testing::random_unitary(gen, 4);
    const ComplexMatrix a = linalg::phase_normalize(u);
    EXPECT_LE(max_diff(a, linalg::phase_normalize(std::polar(1.0, ud(gen)) * u)), 1e-12);
    EXPECT_LE(max_diff(a, linalg::phase_normalize(a)), 1e-15);
  }
}

TEST(PhaseNormalize, MinusZUsesFirstPivot) {
  const ComplexMatrix a = linalg::phase_normalize(-linalg::pauli_z());
  EXPECT_LE(max_diff(a, linalg::pauli_z()), 1e-15);
}

TEST(Predicates, UnitarityAndFiniteness) {
  EXPECT_TRUE(linalg::is_unitary(linalg::hadamard()));
  EXPECT_FALSE(linalg::is_unitary(ComplexMatrix::Ones(2, 2)));
  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(linalg::all_finite(bad));
  EXPECT_TRUE(linalg::all_finite(linalg::cz()));
}

TEST(HaarFromGinibre, IsUnitary) {
  std::mt19937_64 gen(9);
  for (int n : {1, 2, 4, 16}) EXPECT_TRUE(linalg::is_unitary(testing::random_unitary(gen, n)));
}

}  // namespace
}  // namespace dforge
