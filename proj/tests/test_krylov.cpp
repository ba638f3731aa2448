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

#include <algorithm>

#include "dforge/linalg.hpp"
#include "test_util.hpp"

namespace dforge {
namespace {

linalg::LinearOperator wrap(const ComplexMatrix& a) {
  return {a.rows(), [a](const ComplexVector& x, ComplexVector& y) { y = a * x; }};
}

TEST(ReorderSchur, SortsDiagonalAndPreservesSimilarity) {
  std::mt19937_64 gen(1);
  const ComplexMatrix a = testing::random_matrix(gen, 12);
  Eigen::ComplexSchur<ComplexMatrix> cs(a);
  ComplexMatrix t = cs.matrixT();
  ComplexMatrix q = cs.matrixU();
  linalg::reorder_schur(t, q);
  for (int i = 0; i + 1 < 12; ++i) EXPECT_GE(std::abs(t(i, i)), std::abs(t(i + 1, i + 1)) - 1e-12);
  EXPECT_LE((q * t * q.adjoint() - a).norm(), 1e-10 * a.norm());
  EXPECT_LE(t.triangularView<Eigen::StrictlyLower>().toDenseMatrix().norm(), 1e-12 * a.norm());
}

TEST(KrylovSchur, MatchesDenseOnNonHermitian) {
  std::mt19937_64 gen(2);
  const int n = 300;
  ComplexMatrix a = testing::random_matrix(gen, n) / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < 5; ++i) a(i, i) += cplx(1.5 + 0.2 * i, 0.1 * i);
  auto dense = linalg::eig_spectrum(a).eigenvalues;
  linalg::KrylovOptions o;
  o.nev = 5;
  const auto kr = linalg::leading_eigenvalues(wrap(a), o);
  ASSERT_TRUE(kr.converged);
  ASSERT_EQ(kr.values.size(), 5U);
  for (int i = 0; i < 5; ++i) EXPECT_LE(std::abs(kr.values[static_cast<std::size_t>(i)] - dense[static_cast<std::size_t>(i)]), 1e-8);
}

TEST(KrylovSchur, SmallOperatorFallsBackToDense) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  linalg::KrylovOptions o;
  o.nev = 2;
  const auto kr = linalg::leading_eigenvalues(wrap(d), o);
  EXPECT_NEAR(std::abs(kr.values[0] - 2.0), 0, 1e-12);
  EXPECT_NEAR(std::abs(kr.values[1] + 1.0), 0, 1e-12);
}

TEST(OperatorNorm, MatchesSpectralNorm) {
  std::mt19937_64 gen(3);
  const ComplexMatrix a = testing::random_matrix(gen, 200);
  const ComplexMatrix ah = a.adjoint();
  const double ref = linalg::spectral_norm(a);
  EXPECT_NEAR(linalg::operator_norm(wrap(a), wrap(ah)), ref, 1e-8 * ref);
}

TEST(KrylovSchur, DeterministicForFixedSeed) {
  std::mt19937_64 gen(4);
  const ComplexMatrix a = testing::random_matrix(gen, 150);
  const auto r1 = linalg::leading_eigenvalues(wrap(a));
  const auto r2 = linalg::leading_eigenvalues(wrap(a));
  ASSERT_EQ(r1.values.size(), r2.values.size());
  for (std::size_t i = 0; i < r1.values.size(); ++i) EXPECT_EQ(r1.values[i], r2.values[i]);
}

}  // namespace
}  // namespace dforge
