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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dforge/ensemble.hpp"
#include "dforge/errors.hpp"
#include "dforge/linalg.hpp"

namespace dforge::gadgets {

// H * diag(1, e^{-i theta}): the output of teleporting through one cluster
// wire after projecting onto (|0> + e^{i theta}|1>)/sqrt2.
ComplexMatrix hz(double theta);

// One bit per measured qubit; bit index (column-1)*rows + (row-1).
using OutcomeString = std::vector<std::uint8_t>;

OutcomeString outcome_from_index(std::uint64_t index, int bits);

struct GadgetConfig {
  int rows = 0;
  int columns = 0;
  std::vector<std::vector<double>> angles;       // [row][measured column]
  std::vector<std::array<int, 2>> vertical_edges;  // {column, row}
  std::optional<std::string> preset;
  std::vector<double> params;
  std::optional<std::string> seed_preset;  // tiling seed for kgb/block/lblock
  std::vector<double> seed_params;

  bool operator==(const GadgetConfig&) const = default;
};

// Validated cluster gadget: rows x columns, last column unmeasured.
class GraphGadget {
 public:
  GraphGadget(int rows, int columns, std::vector<double> angles,
              std::vector<std::vector<int>> edges_by_column);

  int rows() const { return rows_; }
  int columns() const { return columns_; }
  int measured() const { return rows_ * (columns_ - 1); }
  int bit_index(int column, int row) const { return (column - 1) * rows_ + (row - 1); }
  double angle(int column, int row) const {
    return angles_[static_cast<std::size_t>(bit_index(column, row))];
  }
  // Upper rows r of vertical CZ edges (r, r+1) in a column.
  const std::vector<int>& edges(int column) const {
    return edges_[static_cast<std::size_t>(column - 1)];
  }

 private:
  int rows_;
  int columns_;
  std::vector<double> angles_;  // indexed like outcome bits
  std::vector<std::vector<int>> edges_;
};

GraphGadget build_gadget(const GadgetConfig& config);

// Applies U_m to a 2^rows state in place. Row 1 is the most significant bit.
void apply_outcome(const GraphGadget& g, const OutcomeString& m, ComplexVector& state);

ComplexMatrix outcome_unitary(const GraphGadget& g, const OutcomeString& m);
ComplexMatrix outcome_unitary(const GraphGadget& g, std::uint64_t index);

// 2^M uniform entries ordered by little-endian outcome index.
UnitaryEnsemble enumerate_ensemble(const GraphGadget& g, int max_bits = 24);

GadgetConfig preset(const std::string& name, const std::vector<double>& params);
// As above with an explicit tiling seed for kgb/block/lblock.
GadgetConfig preset(const std::string& name, const std::vector<double>& params,
                    const GadgetConfig& seed);

// Default angles of the partially invertible two-row gadget.
double fig3_alpha();
double fig3_beta();

// Outcome-bit index of labels m1..m8 of the two-row gadget's factorized form
// (HZ(b+m8 pi) x HZ(b+m7 pi)) CZ (HZ(m6 pi)HZ(a+m5 pi)HZ(m4 pi) x HZ(a+m3 pi)HZ(m2 pi)HZ(a+m1 pi)).
inline constexpr std::array<int, 8> kFig3LabelToBit = {1, 3, 5, 0, 2, 4, 7, 6};

// k-fold horizontal tiling of a gadget (shared boundary columns).
GadgetConfig tile_horizontal(const GadgetConfig& seed, int k);

// Brickwork over n wires of 2L layers of the k-tiled two-row seed; unpaired
// wires are idle segments measured at angle 0. For n = 2 only odd layers
// exist, so the result is the kL-fold tiling.
GadgetConfig brickwork(const GadgetConfig& seed, int n, int k, int layers_l);

// Single wire with `measured` angle-0 columns.
GadgetConfig idle_wire(int measured);

// Angles as decimals or the literals "pi/N", "k*pi/N", "acos(sqrt(1/3))".
double parse_angle(const std::string& text);

}  // namespace dforge::gadgets
