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
#include <variant>
#include <vector>

#include "dforge/ensemble.hpp"
#include "dforge/gadgets.hpp"

namespace dforge::sampler {

struct SampleRecord {
  std::uint64_t y = 0;  // measured-qubit outcome, little-endian bit index
  std::uint64_t x = 0;  // output register, row 1 most significant
  double weight = 0.0;  // exact tables only
};

// p(x, y) stored at index y * 2^rows + x.
struct ExactTable {
  int measured = 0;
  int rows = 0;
  std::vector<double> p;

  double at(std::uint64_t y, std::uint64_t x) const {
    return p[static_cast<std::size_t>((y << rows) | x)];
  }
  std::vector<SampleRecord> records() const;
};

ExactTable exact_distribution(const gadgets::GraphGadget& g, int max_bits = 24);

std::vector<SampleRecord> sample_distribution(const gadgets::GraphGadget& g, std::int64_t shots,
                                              std::uint64_t seed, int max_rows = 20);

// Normalized histogram over the (y, x) index space of a gadget.
std::vector<double> empirical(const std::vector<SampleRecord>& samples, int measured, int rows);

struct HaarSource {
  int qubits = 1;
};

using Source = std::variant<const UnitaryEnsemble*, const gadgets::GraphGadget*, HaarSource>;

struct AnticoncentrationResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;  // alpha (1 - eps_d) / 2^n
  bool pass = false;
  std::int64_t shots = 0;
  int qubits = 0;
  // Histogram of 2^n |<x|U|0>|^2 on [0, hist_max) against exp(-p).
  double hist_max = 8.0;
  std::vector<double> hist_density;
  std::vector<double> porter_thomas;
};

AnticoncentrationResult anticoncentration_estimate(const Source& source, double alpha, double eps_d,
                                                   std::int64_t shots, std::uint64_t seed,
                                                   int bins = 32);

struct Distance {
  double tv = 0.0;
  double l1 = 0.0;
};

// Missing trailing entries count as zero.
Distance tv_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace dforge::sampler
