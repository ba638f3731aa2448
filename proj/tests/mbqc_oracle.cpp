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

#include "mbqc_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace dforge::testing {

namespace {

// Qubit (row r, column c), both 1-based, occupies bit position q of the basis
// index with q = (c-1)*rows + (r-1); bit q is (index >> q) & 1.
int qubit(int rows, int r, int c) { return (c - 1) * rows + (r - 1); }

void apply_cz(ComplexVector& s, int qa, int qb) {
  const std::uint64_t mask = (std::uint64_t{1} << qa) | (std::uint64_t{1} << qb);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if ((static_cast<std::uint64_t>(i) & mask) == mask) s(i) = -s(i);
  }
}

}  // namespace

OracleResult mbqc_project(const gadgets::GadgetConfig& cfg, const gadgets::OutcomeString& m,
                          const ComplexVector& psi) {
  const int rows = cfg.rows;
  const int cols = cfg.columns;
  const int total = rows * cols;
  const int measured = rows * (cols - 1);
  if (static_cast<int>(m.size()) != measured) throw std::invalid_argument("oracle: outcome size");
  if (psi.size() != (Eigen::Index{1} << rows)) throw std::invalid_argument("oracle: input size");

  // Initial product state: psi on column 1, |+> elsewhere.
  const Eigen::Index n_states = Eigen::Index{1} << total;
  ComplexVector s(n_states);
  const double plus = std::pow(2.0, -0.5 * (total - rows));
  for (Eigen::Index i = 0; i < n_states; ++i) {
    Eigen::Index in = 0;
    for (int r = 1; r <= rows; ++r) {
      const int bit = static_cast<int>((i >> qubit(rows, r, 1)) & 1);
      in |= static_cast<Eigen::Index>(bit) << (rows - r);
    }
    s(i) = psi(in) * plus;
  }

  for (int c = 1; c < cols; ++c)
    for (int r = 1; r <= rows; ++r) apply_cz(s, qubit(rows, r, c), qubit(rows, r, c + 1));
  for (const auto& e : cfg.vertical_edges) apply_cz(s, qubit(rows, e[1], e[0]), qubit(rows, e[1] + 1, e[0]));

  // Contract all measured qubits (columns 1..cols-1) with the bras.
  const Eigen::Index n_out = Eigen::Index{1} << rows;
  OracleResult res;
  res.output = ComplexVector::Zero(n_out);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n_states; ++i) {
    cplx amp = s(i);
    for (int c = 1; c < cols; ++c) {
      for (int r = 1; r <= rows; ++r) {
        const int q = qubit(rows, r, c);
        const int bit = static_cast<int>((i >> q) & 1);
        if (bit == 1) {
          const double theta = cfg.angles[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)];
          const double sign = m[static_cast<std::size_t>(q)] ? -1.0 : 1.0;
          // bra component: conj((-1)^b e^{i theta}) / sqrt(2)
          amp *= sign * std::polar(inv_sqrt2, -theta);
        } else {
          amp *= inv_sqrt2;
        }
      }
    }
    Eigen::Index out = 0;
    for (int r = 1; r <= rows; ++r) {
      const int bit = static_cast<int>((i >> qubit(rows, r, cols)) & 1);
      out |= static_cast<Eigen::Index>(bit) << (rows - r);
    }
    res.output(out) += amp;
  }
  res.branch_norm2 = res.output.squaredNorm();
  return res;
}

}  // namespace dforge::testing
