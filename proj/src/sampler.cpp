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

#include "dforge/sampler.hpp"

#include <cmath>

#include "dforge/ensembles.hpp"
#include "dforge/kernels.hpp"
#include "dforge/rng.hpp"

namespace dforge::sampler {

namespace {

ComplexVector zero_state(int rows) {
  ComplexVector s = ComplexVector::Zero(Eigen::Index{1} << rows);
  s(0) = 1.0;
  return s;
}

std::uint64_t draw_index(const ComplexVector& amp, double u) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    acc += std::norm(amp(i));
    if (u < acc) return static_cast<std::uint64_t>(i);
  }
  return static_cast<std::uint64_t>(amp.size() - 1);
}

void check_prob_vector(const std::vector<double>& p, const char* name) {
  double s = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("tv_distance: ") + name + " has a negative or non-finite entry");
    }
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-8) {
    throw DomainError(std::string("tv_distance: ") + name + " not normalized");
  }
}

}  // namespace

std::vector<SampleRecord> ExactTable::records() const {
  std::vector<SampleRecord> out;
  out.reserve(p.size());
  const std::uint64_t mask = (std::uint64_t{1} << rows) - 1;
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back({i >> rows, i & mask, p[i]});
  return out;
}

ExactTable exact_distribution(const gadgets::GraphGadget& g, int max_bits) {
  const int m = g.measured();
  if (m + g.rows() > max_bits) {
    throw CapacityError("exact_distribution: " + std::to_string(m + g.rows()) +
                        " total bits above cap " + std::to_string(max_bits));
  }
  ExactTable t;
  t.measured = m;
  t.rows = g.rows();
  const std::int64_t ny = std::int64_t{1} << m;
  const std::int64_t nx = std::int64_t{1} << g.rows();
  t.p.assign(static_cast<std::size_t>(ny * nx), 0.0);
  const double py = std::ldexp(1.0, -m);
#pragma omp parallel for schedule(static)
  for (std::int64_t y = 0; y < ny; ++y) {
    ComplexVector s = zero_state(g.rows());
    gadgets::apply_outcome(g, gadgets::outcome_from_index(static_cast<std::uint64_t>(y), m), s);
    for (std::int64_t x = 0; x < nx; ++x) {
      t.p[static_cast<std::size_t>(y * nx + x)] = py * std::norm(s(x));
    }
  }
  return t;
}

std::vector<SampleRecord> sample_distribution(const gadgets::GraphGadget& g, std::int64_t shots,
                                              std::uint64_t seed, int max_rows) {
  if (shots < 1) throw DomainError("sample_distribution: shots must be >= 1");
  if (g.rows() > max_rows) {
    throw CapacityError("sample_distribution: rows " + std::to_string(g.rows()) + " above cap " +
                        std::to_string(max_rows));
  }
  if (g.measured() > 64) throw CapacityError("sample_distribution: more than 64 measured qubits");
  std::vector<SampleRecord> out(static_cast<std::size_t>(shots));
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < shots; ++s) {
    rng::CounterRng r(seed, static_cast<std::uint64_t>(s));
    const auto draw = ensembles::sample(g, r);  // y first, uniform
    ComplexVector st = zero_state(g.rows());
    gadgets::apply_outcome(g, draw.bits, st);
    out[static_cast<std::size_t>(s)] = {static_cast<std::uint64_t>(draw.index), draw_index(st, r.uniform()), 0.0};
  }
  return out;
}

std::vector<double> empirical(const std::vector<SampleRecord>& samples, int measured, int rows) {
  if (measured + rows > 30) throw CapacityError("empirical: support above 2^30");
  std::vector<double> h(std::size_t{1} << (measured + rows), 0.0);
  for (const auto& s : samples) h[static_cast<std::size_t>((s.y << rows) | s.x)] += 1.0;
  for (double& v : h) v /= static_cast<double>(samples.size());
  return h;
}

AnticoncentrationResult anticoncentration_estimate(const Source& source, double alpha, double eps_d,
                                                   std::int64_t shots, std::uint64_t seed, int bins) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("anticoncentration: alpha must lie in (0,1)");
  if (!(eps_d > 0.0 && eps_d < 1.0)) throw DomainError("anticoncentration: eps_d must lie in (0,1)");
  if (shots < 1) throw DomainError("anticoncentration: shots must be >= 1");
  if (bins < 1) throw DomainError("anticoncentration: bins must be >= 1");

  int qubits = 0;
  if (const auto* e = std::get_if<const UnitaryEnsemble*>(&source)) {
    (*e)->validate(1e-10, 1e-8);
    qubits = static_cast<int>(std::lround(std::log2((*e)->dim)));
    if ((1 << qubits) != (*e)->dim) throw DomainError("anticoncentration: ensemble dim not a power of 2");
  } else if (const auto* g = std::get_if<const gadgets::GraphGadget*>(&source)) {
    qubits = (*g)->rows();
  } else {
    qubits = std::get<HaarSource>(source).qubits;
    if (qubits < 1 || qubits > 12) throw CapacityError("anticoncentration: Haar qubits out of range");
  }
  const std::uint64_t dim = std::uint64_t{1} << qubits;

  AnticoncentrationResult res;
  res.qubits = qubits;
  res.shots = shots;
  res.threshold = alpha * (1.0 - eps_d) / static_cast<double>(dim);
  res.rhs = (1.0 - alpha) * (1.0 - alpha) * (1.0 - eps_d) / (2.0 * (1.0 + eps_d));

  std::vector<long long> hist(static_cast<std::size_t>(bins), 0);
  long long hits = 0;
#pragma omp parallel
  {
    std::vector<long long> local(static_cast<std::size_t>(bins), 0);
    long long local_hits = 0;
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < shots; ++s) {
      rng::CounterRng r(seed, static_cast<std::uint64_t>(s));
      double amp2 = 0.0;
      if (const auto* e = std::get_if<const UnitaryEnsemble*>(&source)) {
        const auto d = ensembles::sample(**e, r);
        const std::uint64_t x = r.below(dim);
        amp2 = std::norm(d.unitary(static_cast<Eigen::Index>(x), 0));
      } else if (const auto* g = std::get_if<const gadgets::GraphGadget*>(&source)) {
        const auto d = ensembles::sample(**g, r);
        ComplexVector st = zero_state(qubits);
        gadgets::apply_outcome(**g, d.bits, st);
        const std::uint64_t x = r.below(dim);
        amp2 = std::norm(st(static_cast<Eigen::Index>(x)));
      } else {
        const ComplexMatrix u = kernels::haar_sample(static_cast<int>(dim), seed, static_cast<std::uint64_t>(s));
        rng::CounterRng rx(seed ^ 0xa5a5a5a5a5a5a5a5ULL, static_cast<std::uint64_t>(s));
        amp2 = std::norm(u(static_cast<Eigen::Index>(rx.below(dim)), 0));
      }
      if (amp2 > res.threshold) ++local_hits;
      const double scaled = amp2 * static_cast<double>(dim);
      const auto bin = static_cast<std::int64_t>(scaled / res.hist_max * bins);
      if (bin >= 0 && bin < bins) ++local[static_cast<std::size_t>(bin)];
    }
#pragma omp critical
    {
      hits += local_hits;
      for (int b = 0; b < bins; ++b) hist[static_cast<std::size_t>(b)] += local[static_cast<std::size_t>(b)];
    }
  }
  res.lhs = static_cast<double>(hits) / static_cast<double>(shots);
  res.sigma = std::sqrt(res.lhs * (1.0 - res.lhs) / static_cast<double>(shots));
  res.pass = res.lhs >= res.rhs - 3.0 * res.sigma;
  const double width = res.hist_max / bins;
  for (int b = 0; b < bins; ++b) {
    res.hist_density.push_back(static_cast<double>(hist[static_cast<std::size_t>(b)]) /
                               (static_cast<double>(shots) * width));
    res.porter_thomas.push_back(std::exp(-(b + 0.5) * width));
  }
  return res;
}

Distance tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  check_prob_vector(p, "P");
  check_prob_vector(q, "Q");
  const std::size_t n = std::max(p.size(), q.size());
  double l1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    l1 += std::abs(a - b);
  }
  return {0.5 * l1, l1};
}

}  // namespace dforge::sampler
