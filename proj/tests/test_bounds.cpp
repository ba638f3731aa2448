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

#include "dforge/bounds.hpp"
#include "dforge/errors.hpp"

namespace dforge {
namespace {

using namespace bounds;

TEST(POfT, RangeAndMonotone) {
  // 1 - P(t) drops below double resolution of 1 quickly, so the open
  // interval is checked on the complement.
  for (int t = 1; t <= 100; ++t) {
    EXPECT_GT(p_of_t(t), 0.0);
    EXPECT_GT(one_minus_p_of_t(t), 0.0);
    EXPECT_LT(one_minus_p_of_t(t), 1.0);
  }
  for (int t = 2; t < 64; ++t) EXPECT_LT(one_minus_p_of_t(t + 1), one_minus_p_of_t(t)) << t;
}

TEST(POfT, FrozenRegressionValues) {
  // High-precision evaluations of the closed form.
  EXPECT_NEAR(one_minus_p_of_t(2), 6.1341499001615887e-8, 1e-20);
  EXPECT_NEAR(one_minus_p_of_t(2, LogMode::base2), 1.5880866952433399e-7, 1e-19);
  const double r = one_minus_p_of_t(2);
  EXPECT_GT(r, 1e-8);
  EXPECT_LT(r, 1e-6);
}

TEST(MixingRounds, FrozenK) {
  EXPECT_EQ(theorem1_k(8, 2, 0.9, 0.5, 0.01), 1982);
}

TEST(MixingRounds, DomainErrors) {
  EXPECT_THROW(theorem1_k(8, 2, 1.0, 0.5, 0.01), DomainError);
  EXPECT_THROW(theorem1_k(8, 2, 0.9, 0.0, 0.01), DomainError);
  EXPECT_THROW(theorem1_L(8, 2, one_minus_p_of_t(2), 0.1), DomainError);
  EXPECT_THROW(theorem1_L(8, 2, 1e-9, 1.0), DomainError);
}

TEST(MixingRounds, CeilingIsTight) {
  for (int n : {2, 5, 8}) {
    for (double eps : {0.3, 0.01, 1e-5}) {
      const long long k = theorem1_k(n, 2, 0.9, 0.5, eps);
      const double poly = 20.0 + n * n * 2.0 - n * 2.0 + n + std::log2(1.0 / eps);
      const double rate = std::log2(1.0 / 0.95);
      EXPECT_GE(static_cast<double>(k) * rate, poly * (1 - 1e-12));
      EXPECT_LT(static_cast<double>(k - 1) * rate, poly);
    }
  }
}

TEST(MixingRounds, DoublingInverseEpsilonAddsAtMostOneRateStep) {
  const long long step = static_cast<long long>(std::ceil(1.0 / std::log2(1.0 / 0.95)));
  for (double eps : {0.1, 0.01, 0.001}) {
    const long long a = theorem1_k(8, 2, 0.9, 0.5, eps);
    const long long b = theorem1_k(8, 2, 0.9, 0.5, eps / 2);
    EXPECT_GE(b, a);
    EXPECT_LE(b - a, step);
  }
}

TEST(MixingRounds, FrozenL) {
  EXPECT_EQ(theorem1_L(8, 2, 0.5 * one_minus_p_of_t(2), 0.1), 1521449743LL);
}

TEST(MixingRounds, LLinearInN) {
  const double eps_prime = 0.5 * one_minus_p_of_t(2);
  const double l8 = static_cast<double>(theorem1_L(8, 2, eps_prime, 0.1));
  const double l16 = static_cast<double>(theorem1_L(16, 2, eps_prime, 0.1));
  const double l32 = static_cast<double>(theorem1_L(32, 2, eps_prime, 0.1));
  EXPECT_NEAR((l32 - l16) / (l16 - l8), 2.0, 1e-6);
}

TEST(Depth, ConsistencyAndScaling) {
  const double eps_prime = 1e-8;
  for (int n : {8, 16, 32}) {
    const auto d = depth(n, 2, 0.9, 0.5, eps_prime, 0.1);
    EXPECT_EQ(d.depth, 2 * theorem1_k(n, 2, 0.9, 0.5, eps_prime) * theorem1_L(n, 2, eps_prime, 0.1));
    EXPECT_NEAR(d.witness, static_cast<double>(d.depth) / (std::pow(n, 3) * std::pow(2, 12)), 1e-9 * d.witness);
  }
  double prev = static_cast<double>(depth(8, 2, 0.9, 0.5, eps_prime, 0.1).depth);
  for (int n : {16, 32, 64}) {
    const double cur = static_cast<double>(depth(n, 2, 0.9, 0.5, eps_prime, 0.1).depth);
    EXPECT_LE(cur / prev, 8.0 * 1.05) << n;
    prev = cur;
  }
}

TEST(Depth, MinimumQubitGuard) {
  EXPECT_EQ(min_qubits(2), 7);
  EXPECT_THROW(depth(6, 2, 0.9, 0.5, 1e-8, 0.1), DomainError);
  EXPECT_NO_THROW(depth(7, 2, 0.9, 0.5, 1e-8, 0.1));
}

TEST(CompactRounds, FrozenAndSamePolynomialShape) {
  EXPECT_EQ(corollary2_k(8, 2, 0.9, 0.5, 0.01), 1982);
  EXPECT_THROW(corollary2_k(8, 2, 1.0, 0.5, 0.01), DomainError);
  for (int n : {3, 8}) {
    const long long d1 = corollary2_k(n, 3, 0.9, 0.5, 0.1) - theorem1_k(n, 3, 0.9, 0.5, 0.1);
    const long long d2 = corollary2_k(n, 3, 0.9, 0.5, 1e-6) - theorem1_k(n, 3, 0.9, 0.5, 1e-6);
    EXPECT_EQ(d1, d2);
  }
}

TEST(EtaRounds, ArithmeticAndDomain) {
  EXPECT_EQ(prop1_k(0.5, 2, 2, 0.01), 23);
  EXPECT_THROW(prop1_k(1.0, 2, 2, 0.01), DomainError);
  EXPECT_THROW(prop1_k(0.0, 2, 2, 0.01), DomainError);
  EXPECT_GT(prop1_k(1 - 1e-9, 2, 2, 0.01), 1000000000LL);
}

TEST(LambdaRounds, MatchesEtaRounds) {
  EXPECT_EQ(conjectureA_k(0.5, 2, 2, 0.01), prop1_k(0.5, 2, 2, 0.01));
  EXPECT_THROW(conjectureA_k(1.0, 2, 2, 0.01), DomainError);
}

TEST(Speedup, StatedConstants) {
  const auto s = speedup_params(1.0 / 22, 0.1132, 0.1132, 0.1132);
  EXPECT_NEAR(s.fraction, 0.27777908591213511, 1e-12);
  EXPECT_NEAR(s.relative_error, 3.9999888527670653, 1e-10);
  EXPECT_TRUE(s.relative_error_above_quarter);
  EXPECT_LT(speedup_params(1.0 / 22, 1 - 1e-9, 0.1132, 0.1132).fraction, 1e-8);
}

TEST(Monotonicity, GridChecks) {
  for (int n = 2; n <= 12; n += 2) {
    for (int t = 1; t <= 4; ++t) {
      EXPECT_LE(theorem1_k(n, t, 0.9, 0.5, 0.01), theorem1_k(n + 1, t, 0.9, 0.5, 0.01));
      EXPECT_LE(theorem1_k(n, t, 0.9, 0.5, 0.01), theorem1_k(n, t + 1, 0.9, 0.5, 0.01));
      EXPECT_GE(theorem1_k(n, t, 0.9, 0.5, 0.01), theorem1_k(n, t, 0.9, 0.5, 0.02));
      EXPECT_LE(prop1_k(0.7, n, t, 0.01), prop1_k(0.7, n + 1, t + 1, 0.01));
      EXPECT_GE(prop1_k(0.7, n, t, 0.01), prop1_k(0.7, n, t, 0.05));
      EXPECT_LE(corollary2_k(n, t, 0.9, 0.5, 0.01), corollary2_k(n + 1, t, 0.9, 0.5, 0.01));
      const double ep = 0.5 * one_minus_p_of_t(t);
      EXPECT_LE(theorem1_L(n, t, ep, 0.1), theorem1_L(n + 1, t, ep, 0.1));
      EXPECT_GE(theorem1_L(n, t, ep, 0.1), theorem1_L(n, t, ep, 0.2));
    }
  }
}

TEST(LogMode, Parse) {
  EXPECT_EQ(parse_log_mode("natural"), LogMode::natural);
  EXPECT_EQ(parse_log_mode("base2"), LogMode::base2);
  EXPECT_THROW(parse_log_mode("ln"), DomainError);
}

}  // namespace
}  // namespace dforge
