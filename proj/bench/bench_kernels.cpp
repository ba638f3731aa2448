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

// Parallel kernels against their serial references on 2x2-cluster moments.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dforge/gadgets.hpp"
#include "dforge/kernels.hpp"
#include "dforge/linalg.hpp"

namespace {

using namespace dforge;

std::vector<kernels::Term> cluster_terms(int t, int power) {
  const auto seed = gadgets::preset("fig1", {1.0, std::sqrt(2.0)});
  const auto e = gadgets::enumerate_ensemble(gadgets::build_gadget(gadgets::tile_horizontal(seed, power)));
  std::vector<kernels::Term> terms;
  for (const auto& en : e.entries) terms.push_back({en.probability, linalg::tensor_power(en.unitary, t)});
  return terms;
}

void BM_MomentMatrix(benchmark::State& state) {
  const auto terms = cluster_terms(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::moment_matrix(terms));
}

void BM_MomentMatrixSerial(benchmark::State& state) {
  const auto terms = cluster_terms(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::moment_matrix_serial(terms));
}

void BM_MomentApply(benchmark::State& state) {
  const auto terms = cluster_terms(static_cast<int>(state.range(0)), 2);
  const Eigen::Index n = terms.front().v.rows();
  const ComplexVector x = ComplexVector::Ones(n * n);
  ComplexVector y;
  for (auto _ : state) {
    kernels::moment_apply(terms, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_MomentApplySerial(benchmark::State& state) {
  const auto terms = cluster_terms(static_cast<int>(state.range(0)), 2);
  const Eigen::Index n = terms.front().v.rows();
  const ComplexVector x = ComplexVector::Ones(n * n);
  ComplexVector y;
  for (auto _ : state) {
    kernels::moment_apply_serial(terms, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

struct FrameInput {
  std::vector<double> p;
  std::vector<ComplexMatrix> u;
};

FrameInput frame_input(int power) {
  const auto seed = gadgets::preset("fig1", {1.0, std::sqrt(2.0)});
  const auto e = gadgets::enumerate_ensemble(gadgets::build_gadget(gadgets::tile_horizontal(seed, power)));
  FrameInput f;
  for (const auto& en : e.entries) {
    f.p.push_back(en.probability);
    f.u.push_back(en.unitary);
  }
  return f;
}

void BM_FramePotential(benchmark::State& state) {
  const auto f = frame_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::frame_potential(f.p, f.u, 2));
}

void BM_FramePotentialSerial(benchmark::State& state) {
  const auto f = frame_input(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::frame_potential_serial(f.p, f.u, 2));
}

}  // namespace

BENCHMARK(BM_MomentMatrix)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentMatrixSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentApply)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentApplySerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FramePotential)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FramePotentialSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
