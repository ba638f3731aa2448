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

#include "dforge/kernels.hpp"
#include "dforge/rng.hpp"
#include "test_util.hpp"

namespace dforge {
namespace {

std::vector<kernels::Term> random_terms(std::uint64_t seed, int d, int t, int count) {
  std::mt19937_64 gen(seed);
  std::vector<kernels::Term> terms;
  for (int i = 0; i < count; ++i) {
    terms.push_back({1.0 / count, linalg::tensor_power(testing::random_unitary(gen, d), t)});
  }
  return terms;
}

// Runs `f` with `threads` OpenMP threads and restores the previous setting.
template <class F>
auto with_threads(int threads, F f) {
  const int before = kernels::max_threads();
  kernels::set_threads(threads);
  auto r = f();
  kernels::set_threads(before);
  return r;
}

TEST(MomentMatrix, ParallelEqualsSerialBitwise) {
  const auto terms = random_terms(1, 2, 2, 37);
  const ComplexMatrix ref = kernels::moment_matrix_serial(terms);
  for (int th : {1, 2, 3}) {
    const ComplexMatrix m = with_threads(th, [&] { return kernels::moment_matrix(terms); });
    EXPECT_EQ(m, ref) << "threads=" << th;
  }
}

TEST(MomentMatrix, MatchesKronDefinition) {
  const auto terms = random_terms(2, 2, 1, 5);
  ComplexMatrix ref = ComplexMatrix::Zero(4, 4);
  for (const auto& tm : terms) ref += tm.weight * linalg::kron(tm.v, tm.v.conjugate());
  EXPECT_LE(testing::max_diff(kernels::moment_matrix(terms), ref), 1e-14);
}

TEST(MomentApply, MatchesDenseAndIsThreadIndependent) {
  const auto terms = random_terms(3, 4, 1, 40);
  const ComplexMatrix m = kernels::moment_matrix_serial(terms);
  std::mt19937_64 gen(4);
  const ComplexVector x = testing::random_matrix(gen, 16).col(0);
  ComplexVector y_ser;
  kernels::moment_apply_serial(terms, x, y_ser);
  EXPECT_LE((y_ser - m * x).cwiseAbs().maxCoeff(), 1e-13);
  auto run = [&](int th) {
    return with_threads(th, [&] {
      ComplexVector out;
      kernels::moment_apply(terms, x, out);
      return out;
    });
  };
  const ComplexVector y1 = run(1);
  EXPECT_EQ(run(3), y1);
  EXPECT_LE((y1 - y_ser).cwiseAbs().maxCoeff(), 1e-13);
  ComplexVector ya;
  kernels::moment_apply(terms, x, ya, true);
  EXPECT_LE((ya - m.adjoint() * x).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(FramePotential, ThreadIndependentAndMatchesSerial) {
  std::mt19937_64 gen(5);
  std::vector<double> p;
  std::vector<ComplexMatrix> u;
  for (int i = 0; i < 30; ++i) {
    p.push_back(1.0 / 30);
    u.push_back(testing::random_unitary(gen, 4));
  }
  const double ref = kernels::frame_potential_serial(p, u, 2);
  const double one = with_threads(1, [&] { return kernels::frame_potential(p, u, 2); });
  EXPECT_EQ(with_threads(3, [&] { return kernels::frame_potential(p, u, 2); }), one);
  EXPECT_NEAR(one, ref, 1e-12 * ref);
}

TEST(FramePotential, SingletonIsDimensionPower) {
  EXPECT_NEAR(kernels::frame_potential({1.0}, {ComplexMatrix::Identity(4, 4)}, 2), 256.0, 1e-10);
}

TEST(HaarMonteCarlo, ThreadIndependentAndMatchesSerial) {
  const ComplexMatrix ref = kernels::haar_montecarlo_serial(2, 1, 1500, 17);
  const ComplexMatrix one = with_threads(1, [&] { return kernels::haar_montecarlo(2, 1, 1500, 17); });
  EXPECT_EQ(with_threads(2, [&] { return kernels::haar_montecarlo(2, 1, 1500, 17); }), one);
  EXPECT_LE(testing::max_diff(one, ref), 1e-13);
  EXPECT_NE(kernels::haar_montecarlo(2, 1, 1500, 18), ref);
}

TEST(HaarSample, UnitaryAndKeyed) {
  const ComplexMatrix a = kernels::haar_sample(4, 9, 0);
  EXPECT_TRUE(linalg::is_unitary(a));
  EXPECT_EQ(a, kernels::haar_sample(4, 9, 0));
  EXPECT_NE(a, kernels::haar_sample(4, 9, 1));
}

TEST(CounterRng, StreamsArePureFunctionsOfKey) {
  rng::CounterRng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 10; ++i) {
    const auto va = a.next();
    EXPECT_EQ(va, b.next());
    EXPECT_NE(va, c.next());
  }
  rng::CounterRng u(1, 1);
  double mean = 0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    mean += x;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 0.005);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(u.below(3), 3U);
}

}  // namespace
}  // namespace dforge
