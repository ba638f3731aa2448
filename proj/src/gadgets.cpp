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

#include "dforge/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

namespace dforge::gadgets {

namespace {

constexpr double kPi = std::numbers::pi;

void apply_1q(ComplexVector& s, int pos, const ComplexMatrix& g) {
  const Eigen::Index bit = Eigen::Index{1} << pos;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = s(i);
    const cplx a1 = s(i | bit);
    s(i) = g(0, 0) * a0 + g(0, 1) * a1;
    s(i | bit) = g(1, 0) * a0 + g(1, 1) * a1;
  }
}

void apply_cz(ComplexVector& s, int pos_a, int pos_b) {
  const Eigen::Index mask = (Eigen::Index{1} << pos_a) | (Eigen::Index{1} << pos_b);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if ((i & mask) == mask) s(i) = -s(i);
  }
}

[[noreturn]] void fail(const std::string& what) { throw DomainError("gadget: " + what); }

int as_count(double v, const char* name, int lo) {
  if (!std::isfinite(v) || v != std::floor(v) || v < lo || v > 1e6) {
    std::ostringstream m;
    m << name << " must be an integer >= " << lo << ", got " << v;
    fail(m.str());
  }
  return static_cast<int>(v);
}

// Angle grid given column-major as {top, bottom} per measured column.
GadgetConfig two_row(const std::vector<std::array<double, 2>>& cols,
                     std::vector<std::array<int, 2>> edges) {
  GadgetConfig c;
  c.rows = 2;
  c.columns = static_cast<int>(cols.size()) + 1;
  c.angles.assign(2, {});
  for (const auto& col : cols) {
    c.angles[0].push_back(col[0]);
    c.angles[1].push_back(col[1]);
  }
  c.vertical_edges = std::move(edges);
  return c;
}

GadgetConfig fig3_config(double a, double b) {
  return two_row({{0.0, a}, {a, 0.0}, {0.0, a}, {b, b}}, {{4, 1}});
}

GadgetConfig seed_or_default(const std::vector<double>& angles, std::size_t offset,
                             const std::optional<GadgetConfig>& seed) {
  if (seed) {
    if (angles.size() != offset) fail("angle params conflict with an explicit seed");
    return *seed;
  }
  if (angles.size() == offset) return fig3_config(fig3_alpha(), fig3_beta());
  if (angles.size() == offset + 2) return fig3_config(angles[offset], angles[offset + 1]);
  fail("expected " + std::to_string(offset) + " or " + std::to_string(offset + 2) +
       " params");
}

GadgetConfig make_preset(const std::string& name, const std::vector<double>& p,
                         const std::optional<GadgetConfig>& seed) {
  GadgetConfig c;
  if (name == "fig1") {
    if (p.size() != 2) fail("fig1 takes 2 params (alpha, beta)");
    c = two_row({{p[0], p[1]}}, {{2, 1}});
  } else if (name == "fig3") {
    if (p.empty()) {
      c = fig3_config(fig3_alpha(), fig3_beta());
    } else if (p.size() == 2) {
      c = fig3_config(p[0], p[1]);
    } else {
      fail("fig3 takes 0 or 2 params (alpha, beta)");
    }
  } else if (name == "cgen") {
    if (p.empty()) fail("cgen takes params (n, alpha_1..alpha_n)");
    const int n = as_count(p[0], "cgen n", 1);
    if (p.size() != static_cast<std::size_t>(n) + 1) {
      fail("cgen with n=" + std::to_string(n) + " takes " + std::to_string(n + 1) + " params");
    }
    c.rows = n;
    c.columns = 2;
    for (int r = 0; r < n; ++r) c.angles.push_back({p[static_cast<std::size_t>(r) + 1]});
    for (int r = 1; r < n; ++r) c.vertical_edges.push_back({2, r});
  } else if (name == "linear") {
    if (p.empty()) fail("linear takes at least one angle");
    c.rows = 1;
    c.columns = static_cast<int>(p.size()) + 1;
    c.angles = {p};
  } else if (name == "kgb") {
    if (p.empty()) fail("kgb takes params (k[, alpha, beta])");
    c = tile_horizontal(seed_or_default(p, 1, seed), as_count(p[0], "kgb k", 1));
  } else if (name == "block") {
    if (p.size() < 2) fail("block takes params (n, k[, alpha, beta])");
    c = brickwork(seed_or_default(p, 2, seed), as_count(p[0], "block n", 2),
                  as_count(p[1], "block k", 1), 1);
  } else if (name == "lblock") {
    if (p.size() < 3) fail("lblock takes params (n, k, L[, alpha, beta])");
    c = brickwork(seed_or_default(p, 3, seed), as_count(p[0], "lblock n", 2),
                  as_count(p[1], "lblock k", 1), as_count(p[2], "lblock L", 1));
  } else {
    fail("unknown preset '" + name + "'");
  }
  if (seed && name != "kgb" && name != "block" && name != "lblock") {
    fail("preset '" + name + "' does not take a seed");
  }
  c.preset = name;
  c.params = p;
  return c;
}

}  // namespace

double fig3_alpha() { return kPi / 6.0; }
double fig3_beta() { return std::acos(std::sqrt(1.0 / 3.0)); }

ComplexMatrix hz(double theta) {
  ComplexMatrix h = linalg::hadamard();
  h.col(1) *= std::polar(1.0, -theta);
  return h;
}

OutcomeString outcome_from_index(std::uint64_t index, int bits) {
  OutcomeString m(static_cast<std::size_t>(bits));
  for (int b = 0; b < bits; ++b) m[static_cast<std::size_t>(b)] = (index >> b) & 1U;
  return m;
}

GraphGadget::GraphGadget(int rows, int columns, std::vector<double> angles,
                         std::vector<std::vector<int>> edges_by_column)
    : rows_(rows), columns_(columns), angles_(std::move(angles)),
      edges_(std::move(edges_by_column)) {
  if (rows_ < 1) fail("rows must be >= 1");
  if (columns_ < 1) fail("columns must be >= 1");
  if (rows_ > 30) throw CapacityError("gadget: rows above 30");
  if (angles_.size() != static_cast<std::size_t>(measured())) fail("angle count mismatch");
  if (edges_.size() != static_cast<std::size_t>(columns_)) fail("edge column count mismatch");
}

GraphGadget build_gadget(const GadgetConfig& c) {
  if (c.rows < 1) fail("rows must be >= 1");
  if (c.columns < 1) fail("columns must be >= 1");
  if (c.angles.size() != static_cast<std::size_t>(c.rows)) {
    fail("angles must have one list per row (" + std::to_string(c.rows) + "), got " +
         std::to_string(c.angles.size()));
  }
  std::vector<double> flat(static_cast<std::size_t>(c.rows) * (c.columns - 1));
  for (int r = 1; r <= c.rows; ++r) {
    const auto& row = c.angles[static_cast<std::size_t>(r - 1)];
    if (row.size() != static_cast<std::size_t>(c.columns - 1)) {
      fail("angles row " + std::to_string(r) + " has " + std::to_string(row.size()) +
           " entries, expected " + std::to_string(c.columns - 1));
    }
    for (int col = 1; col < c.columns; ++col) {
      const double a = row[static_cast<std::size_t>(col - 1)];
      if (!std::isfinite(a)) fail("non-finite angle");
      flat[static_cast<std::size_t>((col - 1) * c.rows + (r - 1))] = a;
    }
  }
  std::vector<std::vector<int>> edges(static_cast<std::size_t>(c.columns));
  std::set<std::pair<int, int>> seen;
  for (const auto& e : c.vertical_edges) {
    const int col = e[0];
    const int row = e[1];
    if (col < 1 || col > c.columns || row < 1 || row > c.rows - 1) {
      fail("vertical edge (" + std::to_string(col) + "," + std::to_string(row) +
           ") out of range for " + std::to_string(c.rows) + "x" + std::to_string(c.columns));
    }
    if (!seen.insert({col, row}).second) fail("duplicate vertical edge");
    edges[static_cast<std::size_t>(col - 1)].push_back(row);
  }
  for (auto& col : edges) std::sort(col.begin(), col.end());
  return GraphGadget(c.rows, c.columns, std::move(flat), std::move(edges));
}

void apply_outcome(const GraphGadget& g, const OutcomeString& m, ComplexVector& state) {
  if (m.size() != static_cast<std::size_t>(g.measured())) {
    throw DomainError("outcome_unitary: expected " + std::to_string(g.measured()) +
                      " bits, got " + std::to_string(m.size()));
  }
  if (state.size() != (Eigen::Index{1} << g.rows())) {
    throw DomainError("apply_outcome: state dimension mismatch");
  }
  const int n = g.rows();
  for (int col = 1; col <= g.columns(); ++col) {
    for (int r : g.edges(col)) apply_cz(state, n - r, n - r - 1);
    if (col == g.columns()) break;
    for (int r = 1; r <= n; ++r) {
      const int b = g.bit_index(col, r);
      apply_1q(state, n - r, hz(g.angle(col, r) + m[static_cast<std::size_t>(b)] * kPi));
    }
  }
}

ComplexMatrix outcome_unitary(const GraphGadget& g, const OutcomeString& m) {
  const Eigen::Index d = Eigen::Index{1} << g.rows();
  ComplexMatrix u(d, d);
  ComplexVector col(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    col.setZero();
    col(j) = 1.0;
    apply_outcome(g, m, col);
    u.col(j) = col;
  }
  return u;
}

ComplexMatrix outcome_unitary(const GraphGadget& g, std::uint64_t index) {
  if (g.measured() < 64 && (index >> g.measured()) != 0) {
    throw DomainError("outcome index out of range");
  }
  return outcome_unitary(g, outcome_from_index(index, g.measured()));
}

UnitaryEnsemble enumerate_ensemble(const GraphGadget& g, int max_bits) {
  const int bits = g.measured();
  if (bits > max_bits) {
    throw CapacityError("enumerate_ensemble: " + std::to_string(bits) +
                        " measured qubits above cap " + std::to_string(max_bits) +
                        "; use the sampling path");
  }
  const std::int64_t count = std::int64_t{1} << bits;
  UnitaryEnsemble e;
  e.dim = 1 << g.rows();
  e.entries.resize(static_cast<std::size_t>(count));
  const double p = std::ldexp(1.0, -bits);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& entry = e.entries[static_cast<std::size_t>(i)];
    entry.probability = p;
    entry.unitary = outcome_unitary(g, static_cast<std::uint64_t>(i));
  }
  e.label = "gadget " + std::to_string(g.rows()) + "x" + std::to_string(g.columns());
  return e;
}

GadgetConfig preset(const std::string& name, const std::vector<double>& params) {
  return make_preset(name, params, std::nullopt);
}

GadgetConfig preset(const std::string& name, const std::vector<double>& params,
                    const GadgetConfig& seed) {
  return make_preset(name, params, seed);
}

GadgetConfig tile_horizontal(const GadgetConfig& seed, int k) {
  if (k < 1) fail("tiling factor must be >= 1");
  if (seed.columns < 2) fail("tiling seed needs a measured column");
  const int w = seed.columns - 1;
  GadgetConfig out;
  out.rows = seed.rows;
  out.columns = k * w + 1;
  out.angles.assign(static_cast<std::size_t>(seed.rows), {});
  for (int r = 0; r < seed.rows; ++r) {
    for (int b = 0; b < k; ++b) {
      const auto& row = seed.angles.at(static_cast<std::size_t>(r));
      out.angles[static_cast<std::size_t>(r)].insert(
          out.angles[static_cast<std::size_t>(r)].end(), row.begin(), row.end());
    }
  }
  std::set<std::pair<int, int>> used;
  for (int b = 0; b < k; ++b) {
    for (const auto& e : seed.vertical_edges) {
      const int col = b * w + e[0];
      if (!used.insert({col, e[1]}).second) {
        fail("seed has vertical edges on the same row in its first and last columns; "
             "tiling would overlap them");
      }
      out.vertical_edges.push_back({col, e[1]});
    }
  }
  return out;
}

GadgetConfig idle_wire(int measured) {
  GadgetConfig c;
  c.rows = 1;
  c.columns = measured + 1;
  c.angles = {std::vector<double>(static_cast<std::size_t>(measured), 0.0)};
  return c;
}

GadgetConfig brickwork(const GadgetConfig& seed, int n, int k, int layers_l) {
  if (seed.rows != 2) fail("brickwork seed must have 2 rows");
  if (n < 2) fail("brickwork needs n >= 2");
  if (layers_l < 1) fail("brickwork needs L >= 1");
  if (n == 2) return tile_horizontal(seed, k * layers_l);
  const GadgetConfig pair = tile_horizontal(seed, k);
  const int w = pair.columns - 1;
  const int layers = 2 * layers_l;
  GadgetConfig out;
  out.rows = n;
  out.columns = layers * w + 1;
  out.angles.assign(static_cast<std::size_t>(n),
                    std::vector<double>(static_cast<std::size_t>(layers * w), 0.0));
  std::set<std::pair<int, int>> used;
  for (int layer = 0; layer < layers; ++layer) {
    const int first = (layer % 2 == 0) ? 1 : 2;
    for (int r = first; r + 1 <= n; r += 2) {
      for (int c = 1; c <= w; ++c) {
        const std::size_t col = static_cast<std::size_t>(layer * w + c - 1);
        out.angles[static_cast<std::size_t>(r - 1)][col] = pair.angles[0][static_cast<std::size_t>(c - 1)];
        out.angles[static_cast<std::size_t>(r)][col] = pair.angles[1][static_cast<std::size_t>(c - 1)];
      }
      for (const auto& e : pair.vertical_edges) {
        const int col = layer * w + e[0];
        if (!used.insert({col, r}).second) fail("brickwork edge collision");
        out.vertical_edges.push_back({col, r});
      }
    }
  }
  return out;
}

double parse_angle(const std::string& text) {
  static const std::regex pi_frac(R"(^\s*(-)?\s*(?:(\d+(?:\.\d*)?)\s*\*\s*)?pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  static const std::regex acos_form(R"(^\s*acos\(\s*sqrt\(\s*1\s*/\s*3\s*\)\s*\)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_frac)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      const double den = std::stod(m[3].str());
      if (den == 0.0) fail("angle '" + text + "' divides by zero");
      v /= den;
    }
    return m[1].matched ? -v : v;
  }
  if (std::regex_match(text, acos_form)) return fig3_beta();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail("cannot parse angle '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) fail("cannot parse angle '" + text + "'");
  return v;
}

}  // namespace dforge::gadgets
