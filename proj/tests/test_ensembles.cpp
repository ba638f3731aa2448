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

#include <numbers>

#include "dforge/ensembles.hpp"
#include "dforge/gadgets.hpp"
#include "dforge/moments.hpp"
#include "dforge/rng.hpp"
#include "test_util.hpp"

namespace dforge {
namespace {

using ensembles::classify_invertibility;
using ensembles::InvertibilityClass;
using linalg::kron;
using testing::max_diff;

const double kPi = std::numbers::pi;
const ComplexMatrix kI2 = ComplexMatrix::Identity(2, 2);

UnitaryEnsemble ix() { return UnitaryEnsemble::uniform({kI2, linalg::pauli_x()}); }

ComplexMatrix s_gate() {
  ComplexMatrix s = kI2;
  s(1, 1) = cplx(0, 1);
  return s;
}

TEST(Validate, RejectsBadEnsembles) {
  UnitaryEnsemble e = ix();
  EXPECT_NO_THROW(e.validate());
  e.entries[0].probability = 0.6;
  EXPECT_THROW(e.validate(), DomainError);
  UnitaryEnsemble nonu = UnitaryEnsemble::uniform({ComplexMatrix::Ones(2, 2)});
  EXPECT_THROW(nonu.validate(), DomainError);
}

TEST(ConcatPower, IdentityPower) {
  const auto e = ix();
  EXPECT_TRUE(ensembles::same_up_to_phase(ensembles::concat_power(e, 1), e));
}

TEST(ConcatPower, SquareOfPauliGroupMerges) {
  const auto sq = ensembles::concat_power(ix(), 2);
  EXPECT_EQ(sq.size(), 4U);
  double total = 0;
  for (const auto& en : sq.entries) total += en.probability;
  EXPECT_NEAR(total, 1.0, 1e-15);
  const auto merged = ensembles::dedup_up_to_phase(sq);
  ASSERT_EQ(merged.size(), 2U);
  EXPECT_TRUE(ensembles::same_up_to_phase(sq, ix()));
}

TEST(ConcatPower, MomentIsMatrixPower) {
  std::mt19937_64 gen(31);
  for (int t : {1, 2}) {
    for (int k : {2, 3}) {
      const auto e = testing::random_ensemble(gen, 2, 3);
      const ComplexMatrix m = moments::moment_op(e, t).matrix;
      ComplexMatrix mk = m;
      for (int j = 1; j < k; ++j) mk = mk * m;
      const ComplexMatrix direct = moments::moment_op(ensembles::concat_power(e, k), t).matrix;
      EXPECT_LE(max_diff(direct, mk), 1e-10) << "t=" << t << " k=" << k;
    }
  }
}

TEST(ConcatPower, CapEnforced) {
  std::mt19937_64 gen(1);
  EXPECT_THROW(ensembles::concat_power(testing::random_ensemble(gen, 2, 4), 10, 1000), CapacityError);
}

TEST(BlockCompose, TwoWiresIsIdentityMap) {
  std::mt19937_64 gen(2);
  const auto e = testing::random_ensemble(gen, 4, 3);
  EXPECT_TRUE(ensembles::same_up_to_phase(ensembles::block_compose(e, 2), e));
}

TEST(BlockCompose, DeterministicCzLayout) {
  const auto e = UnitaryEnsemble::uniform({linalg::cz()});
  const auto b = ensembles::block_compose(e, 4);
  ASSERT_EQ(b.size(), 1U);
  const ComplexMatrix odd = kron(linalg::cz(), linalg::cz());
  const ComplexMatrix even = kron(kron(kI2, linalg::cz()), kI2);
  EXPECT_LE(max_diff(b.entries[0].unitary, even * odd), 1e-15);
}

TEST(BlockCompose, SizeAndUnitarity) {
  std::mt19937_64 gen(3);
  const auto b = ensembles::block_compose(testing::random_ensemble(gen, 4, 4), 4);
  EXPECT_EQ(b.size(), 64U);
  EXPECT_NO_THROW(b.validate());
  const auto odd = ensembles::block_compose(testing::random_ensemble(gen, 4, 2), 3);
  EXPECT_EQ(odd.dim, 8);
  EXPECT_EQ(odd.size(), 4U);
  EXPECT_NO_THROW(odd.validate());
}

TEST(Classify, SelfInverseSetIsInvertible) {
  const auto r = classify_invertibility(UnitaryEnsemble::uniform({kI2, linalg::pauli_x(), linalg::hadamard()}));
  EXPECT_EQ(r.cls, InvertibilityClass::invertible);
  EXPECT_DOUBLE_EQ(r.ratio_a, 1.0);
}

TEST(Classify, PhaseGateIsNotInvertible) {
  const auto r = classify_invertibility(UnitaryEnsemble::uniform({s_gate()}));
  EXPECT_EQ(r.cls, InvertibilityClass::non_invertible);
  EXPECT_DOUBLE_EQ(r.ratio_a, 0.0);
}

TEST(Classify, TwoRowGadgetIsPartiallyInvertible) {
  const auto e = gadgets::enumerate_ensemble(gadgets::build_gadget(gadgets::preset("fig3", {})));
  const auto r = classify_invertibility(e);
  EXPECT_EQ(r.cls, InvertibilityClass::partially_invertible);
  EXPECT_GT(r.ratio_a, 0.0);
  EXPECT_LT(r.ratio_a, 1.0);
  EXPECT_EQ(ensembles::to_string(r.cls), "partially-invertible");
}

TEST(Classify, AdjointClosureAndPhaseInvariance) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> ud(0, 2 * kPi);
  for (int trial = 0; trial < 10; ++trial) {
    auto e = testing::random_ensemble(gen, 2 + 2 * (trial % 2), 3);
    EXPECT_EQ(classify_invertibility(ensembles::with_adjoints(e)).cls, InvertibilityClass::invertible);
    e.entries.push_back({0, e.entries[0].unitary.adjoint()});
    for (auto& en : e.entries) en.probability = 1.0 / static_cast<double>(e.size());
    const auto base = classify_invertibility(e);
    auto rotated = e;
    for (auto& en : rotated.entries) en.unitary *= std::polar(1.0, ud(gen));
    const auto r = classify_invertibility(rotated);
    EXPECT_EQ(r.cls, base.cls);
    EXPECT_DOUBLE_EQ(r.ratio_a, base.ratio_a);
    EXPECT_EQ(base.cls, InvertibilityClass::partially_invertible);
  }
}

TEST(Dedup, MergesPhaseMultiples) {
  std::mt19937_64 gen(5);
  const ComplexMatrix u = testing::random_unitary(gen, 2);
  const auto d = ensembles::dedup_up_to_phase(UnitaryEnsemble::uniform({u, std::polar(1.0, 0.7) * u}));
  ASSERT_EQ(d.size(), 1U);
  EXPECT_DOUBLE_EQ(d.entries[0].probability, 1.0);
  const auto distinct = testing::random_ensemble(gen, 2, 3);
  EXPECT_EQ(ensembles::dedup_up_to_phase(distinct).size(), 3U);
}

TEST(Sample, DeterministicEnsemble) {
  std::mt19937_64 gen(6);
  const ComplexMatrix u = testing::random_unitary(gen, 2);
  const auto e = UnitaryEnsemble::uniform({u});
  rng::CounterRng r(1, 0);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(ensembles::sample(e, r).unitary, u);
}

TEST(Sample, ChiSquareUniformity) {
  std::mt19937_64 gen(7);
  const auto e = testing::random_ensemble(gen, 2, 4);
  rng::CounterRng r(2024, 0);
  std::array<int, 4> counts{};
  const int shots = 100000;
  for (int i = 0; i < shots; ++i) ++counts[ensembles::sample(e, r).index];
  double chi2 = 0;
  for (int c : counts) chi2 += (c - shots / 4.0) * (c - shots / 4.0) / (shots / 4.0);
  EXPECT_LT(chi2, 16.27);  // 3 degrees of freedom, p = 0.001
}

TEST(Sample, LazyGadgetMatchesOutcomeUnitary) {
  const auto g = gadgets::build_gadget(gadgets::preset("fig3", {}));
  rng::CounterRng r(99, 3);
  for (int i = 0; i < 20; ++i) {
    const auto d = ensembles::sample(g, r);
    EXPECT_EQ(d.bits, gadgets::outcome_from_index(d.index, g.measured()));
    EXPECT_LE(max_diff(d.unitary, gadgets::outcome_unitary(g, d.bits)), 1e-15);
  }
}

TEST(Json, RoundTripAndStrictKeys) {
  std::mt19937_64 gen(8);
  const auto e = testing::random_ensemble(gen, 4, 3);
  const auto back = ensembles::from_json(ensembles::to_json(e));
  ASSERT_EQ(back.size(), e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_EQ(back.entries[i].probability, e.entries[i].probability);
    EXPECT_EQ(back.entries[i].unitary, e.entries[i].unitary);
  }
  EXPECT_THROW(ensembles::from_json(R"({"dim":1,"entries":[],"extra":0})"), DomainError);
  EXPECT_THROW(ensembles::from_json(R"({"dim":1,"entries":[{"probability":1,"unitary":[2,0]}]})"), DomainError);
}

}  // namespace
}  // namespace dforge
