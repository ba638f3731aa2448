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

#include "dforge/ensembles.hpp"

#include <cmath>
#include <json.hpp>
#include <numeric>
#include <sstream>

namespace dforge {

void UnitaryEnsemble::validate(double prob_tol, double unitary_tol) const {
  if (dim < 1) throw DomainError("ensemble: dim must be >= 1");
  if (entries.empty()) throw DomainError("ensemble: no entries");
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!(e.probability > 0.0 && e.probability <= 1.0)) {
      throw DomainError("ensemble: entry " + std::to_string(i) + " probability not in (0,1]");
    }
    if (e.unitary.rows() != dim || e.unitary.cols() != dim) {
      throw DomainError("ensemble: entry " + std::to_string(i) + " has wrong dimension");
    }
    if (!linalg::is_unitary(e.unitary, unitary_tol)) {
      throw DomainError("ensemble: entry " + std::to_string(i) + " is not unitary");
    }
    total += e.probability;
  }
  if (std::abs(total - 1.0) > prob_tol) {
    std::ostringstream m;
    m.precision(17);
    m << "ensemble: probabilities sum to " << total;
    throw DomainError(m.str());
  }
}

UnitaryEnsemble UnitaryEnsemble::uniform(std::vector<ComplexMatrix> unitaries,
                                         std::string label) {
  if (unitaries.empty()) throw DomainError("ensemble: no unitaries");
  UnitaryEnsemble e;
  e.dim = static_cast<int>(unitaries.front().rows());
  e.label = std::move(label);
  const double p = 1.0 / static_cast<double>(unitaries.size());
  for (auto& u : unitaries) e.entries.push_back({p, std::move(u)});
  return e;
}

}  // namespace dforge

namespace dforge::ensembles {

std::string to_string(InvertibilityClass c) {
  switch (c) {
    case InvertibilityClass::invertible:
      return "invertible";
    case InvertibilityClass::partially_invertible:
      return "partially-invertible";
    case InvertibilityClass::non_invertible:
      return "non-invertible";
  }
  return "unknown";
}

UnitaryEnsemble concat_power(const UnitaryEnsemble& e, int k, std::size_t max_entries) {
  if (k < 1) throw DomainError("concat_power: k must be >= 1");
  const double total = std::pow(static_cast<double>(e.size()), k);
  if (total > static_cast<double>(max_entries)) {
    throw CapacityError("concat_power: " + std::to_string(e.size()) + "^" +
                        std::to_string(k) + " entries above cap " +
                        std::to_string(max_entries) + "; use sampled access");
  }
  UnitaryEnsemble out = e;
  for (int step = 1; step < k; ++step) {
    UnitaryEnsemble next;
    next.dim = e.dim;
    next.entries.resize(out.size() * e.size());
    const auto outer = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < outer; ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) {
        auto& dst = next.entries[static_cast<std::size_t>(i) * e.size() + j];
        dst.probability = out.entries[static_cast<std::size_t>(i)].probability * e.entries[j].probability;
        dst.unitary = e.entries[j].unitary * out.entries[static_cast<std::size_t>(i)].unitary;
      }
    }
    out = std::move(next);
  }
  out.label = e.label.empty() ? "" : e.label + "^" + std::to_string(k);
  return out;
}

UnitaryEnsemble block_compose(const UnitaryEnsemble& e, int n, std::size_t max_entries,
                              const std::optional<UnitaryEnsemble>& idle) {
  if (e.dim != 4) throw DomainError("block_compose: ensemble must act on two qubits");
  if (n < 2) throw DomainError("block_compose: n must be >= 2");
  if (idle && idle->dim != 2) throw DomainError("block_compose: idle ensemble must be 1-qubit");
  if (n > 20) throw CapacityError("block_compose: n above 20");

  // Slot layout per layer: a list of (wire count, source) factors, most
  // significant wire first. Source 0 = pair ensemble, 1 = idle.
  struct Slot {
    bool pair;
  };
  std::vector<std::vector<Slot>> layers;
  std::vector<Slot> odd;
  for (int w = 1; w <= n;) {
    if (w + 1 <= n) {
      odd.push_back({true});
      w += 2;
    } else {
      odd.push_back({false});
      w += 1;
    }
  }
  layers.push_back(odd);
  if (n > 2) {
    std::vector<Slot> even{{false}};
    for (int w = 2; w <= n;) {
      if (w + 1 <= n) {
        even.push_back({true});
        w += 2;
      } else {
        even.push_back({false});
        w += 1;
      }
    }
    layers.push_back(even);
  }
  std::vector<std::size_t> radix;
  for (const auto& layer : layers) {
    for (const auto& s : layer) {
      if (s.pair) {
        radix.push_back(e.size());
      } else if (idle) {
        radix.push_back(idle->size());
      } else {
        radix.push_back(1);
      }
    }
  }
  double total = 1.0;
  for (auto r : radix) total *= static_cast<double>(r);
  if (total > static_cast<double>(max_entries)) {
    throw CapacityError("block_compose: " + std::to_string(static_cast<long double>(total)) +
                        " entries above cap " + std::to_string(max_entries));
  }
  const auto count = static_cast<std::int64_t>(total);
  UnitaryEnsemble out;
  out.dim = 1 << n;
  out.entries.resize(static_cast<std::size_t>(count));
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    auto rem = static_cast<std::size_t>(idx);
    std::size_t slot = 0;
    double p = 1.0;
    ComplexMatrix total_u = ComplexMatrix::Identity(out.dim, out.dim);
    for (const auto& layer : layers) {
      ComplexMatrix lu = ComplexMatrix::Identity(1, 1);
      for (const auto& s : layer) {
        const std::size_t choice = rem % radix[slot];
        rem /= radix[slot];
        ++slot;
        if (s.pair) {
          lu = linalg::kron(lu, e.entries[choice].unitary);
          p *= e.entries[choice].probability;
        } else if (idle) {
          lu = linalg::kron(lu, idle->entries[choice].unitary);
          p *= idle->entries[choice].probability;
        } else {
          lu = linalg::kron(lu, id2);
        }
      }
      total_u = lu * total_u;
    }
    out.entries[static_cast<std::size_t>(idx)] = {p, std::move(total_u)};
  }
  out.label = "block(" + e.label + ", n=" + std::to_string(n) + ")";
  return out;
}

bool equal_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return linalg::max_abs_entry(linalg::phase_normalize(a) - linalg::phase_normalize(b)) <= tol;
}

UnitaryEnsemble dedup_up_to_phase(const UnitaryEnsemble& e, double tol) {
  UnitaryEnsemble out;
  out.dim = e.dim;
  out.label = e.label;
  std::vector<ComplexMatrix> normal;
  for (const auto& entry : e.entries) {
    const ComplexMatrix nu = linalg::phase_normalize(entry.unitary);
    bool merged = false;
    for (std::size_t j = 0; j < normal.size(); ++j) {
      if (linalg::max_abs_entry(normal[j] - nu) <= tol) {
        out.entries[j].probability += entry.probability;
        merged = true;
        break;
      }
    }
    if (!merged) {
      normal.push_back(nu);
      out.entries.push_back(entry);
    }
  }
  return out;
}

bool same_up_to_phase(const UnitaryEnsemble& a, const UnitaryEnsemble& b, double tol) {
  if (a.dim != b.dim) return false;
  const UnitaryEnsemble da = dedup_up_to_phase(a, tol);
  const UnitaryEnsemble db = dedup_up_to_phase(b, tol);
  if (da.size() != db.size()) return false;
  std::vector<bool> used(db.size(), false);
  for (const auto& ea : da.entries) {
    bool found = false;
    for (std::size_t j = 0; j < db.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(ea.probability - db.entries[j].probability) <= 1e-12 &&
          equal_up_to_phase(ea.unitary, db.entries[j].unitary, tol)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

InvertibilityReport classify_invertibility(const UnitaryEnsemble& e, double tol) {
  const UnitaryEnsemble d = dedup_up_to_phase(e, tol);
  InvertibilityReport rep;
  rep.tol = tol;
  rep.distinct = d.size();
  std::vector<ComplexMatrix> normal;
  normal.reserve(d.size());
  for (const auto& entry : d.entries) normal.push_back(linalg::phase_normalize(entry.unitary));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const ComplexMatrix inv = linalg::phase_normalize(d.entries[i].unitary.adjoint());
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (linalg::max_abs_entry(normal[j] - inv) <= tol) {
        rep.invertible_subset_indices.push_back(i);
        break;
      }
    }
  }
  rep.ratio_a = d.size() == 0 ? 0.0
                              : static_cast<double>(rep.invertible_subset_indices.size()) /
                                    static_cast<double>(d.size());
  if (rep.invertible_subset_indices.size() == d.size()) {
    rep.cls = InvertibilityClass::invertible;
  } else if (rep.invertible_subset_indices.empty()) {
    rep.cls = InvertibilityClass::non_invertible;
  } else {
    rep.cls = InvertibilityClass::partially_invertible;
  }
  return rep;
}

UnitaryEnsemble with_adjoints(const UnitaryEnsemble& e) {
  UnitaryEnsemble out;
  out.dim = e.dim;
  out.label = e.label + " with adjoints";
  for (const auto& entry : e.entries) out.entries.push_back({0.5 * entry.probability, entry.unitary});
  for (const auto& entry : e.entries) {
    out.entries.push_back({0.5 * entry.probability, entry.unitary.adjoint()});
  }
  return out;
}

Draw sample(const UnitaryEnsemble& e, rng::CounterRng& r) {
  if (e.entries.empty()) throw DomainError("sample: empty ensemble");
  const double u = r.uniform();
  double acc = 0.0;
  std::size_t pick = e.size() - 1;
  for (std::size_t i = 0; i < e.size(); ++i) {
    acc += e.entries[i].probability;
    if (u < acc) {
      pick = i;
      break;
    }
  }
  return {pick, {}, e.entries[pick].unitary};
}

Draw sample(const gadgets::GraphGadget& g, rng::CounterRng& r) {
  Draw d;
  const int bits = g.measured();
  d.bits.resize(static_cast<std::size_t>(bits));
  std::uint64_t word = 0;
  for (int b = 0; b < bits; ++b) {
    if (b % 64 == 0) word = r.next();
    d.bits[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>((word >> (b % 64)) & 1U);
  }
  for (int b = 0; b < std::min(bits, 64); ++b) {
    d.index |= static_cast<std::size_t>(d.bits[static_cast<std::size_t>(b)]) << b;
  }
  d.unitary = gadgets::outcome_unitary(g, d.bits);
  return d;
}

std::string to_json(const UnitaryEnsemble& e) {
  nlohmann::json j;
  j["dim"] = e.dim;
  if (!e.label.empty()) j["label"] = e.label;
  j["entries"] = nlohmann::json::array();
  for (const auto& entry : e.entries) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(2 * e.dim * e.dim));
    for (Eigen::Index r = 0; r < entry.unitary.rows(); ++r) {
      for (Eigen::Index c = 0; c < entry.unitary.cols(); ++c) {
        flat.push_back(entry.unitary(r, c).real());
        flat.push_back(entry.unitary(r, c).imag());
      }
    }
    j["entries"].push_back({{"probability", entry.probability}, {"unitary", flat}});
  }
  return j.dump();
}

UnitaryEnsemble from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("ensemble json: ") + ex.what());
  }
  UnitaryEnsemble e;
  try {
    for (const auto& [key, _] : j.items()) {
      if (key != "dim" && key != "entries" && key != "label") {
        throw DomainError("ensemble json: unknown key '" + key + "'");
      }
    }
    e.dim = j.at("dim").get<int>();
    if (j.contains("label")) e.label = j.at("label").get<std::string>();
    if (e.dim < 1 || e.dim > 4096) throw DomainError("ensemble json: dim out of range");
    for (const auto& item : j.at("entries")) {
      for (const auto& [key, _] : item.items()) {
        if (key != "probability" && key != "unitary") {
          throw DomainError("ensemble json: unknown entry key '" + key + "'");
        }
      }
      const auto flat = item.at("unitary").get<std::vector<double>>();
      if (flat.size() != static_cast<std::size_t>(2 * e.dim * e.dim)) {
        throw DomainError("ensemble json: unitary has " + std::to_string(flat.size()) +
                          " reals, expected " + std::to_string(2 * e.dim * e.dim));
      }
      ComplexMatrix u(e.dim, e.dim);
      for (int r = 0; r < e.dim; ++r) {
        for (int c = 0; c < e.dim; ++c) {
          const std::size_t k = 2 * static_cast<std::size_t>(r * e.dim + c);
          u(r, c) = cplx(flat[k], flat[k + 1]);
        }
      }
      e.entries.push_back({item.at("probability").get<double>(), std::move(u)});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError(std::string("ensemble json: ") + ex.what());
  }
  e.validate(1e-10, 1e-8);
  return e;
}

}  // namespace dforge::ensembles
