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

#include "dforge/kernels.hpp"

#include <omp.h>

#include <cmath>

#include "dforge/rng.hpp"

namespace dforge::kernels {

namespace {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr std::int64_t kApplyChunk = 16;
constexpr std::int64_t kHaarChunk = 512;

void check_terms(const std::vector<Term>& terms) {
  if (terms.empty()) throw DomainError("kernels: no terms");
}

// Adds w * kron(V, conj V) restricted to the block row a.
void add_block_row(const Term& term, Eigen::Index a, ComplexMatrix& m) {
  const Eigen::Index d = term.v.rows();
  const ComplexMatrix vc = term.v.conjugate();
  for (Eigen::Index c = 0; c < d; ++c) {
    const cplx f = term.weight * term.v(a, c);
    if (f == cplx(0.0)) continue;
    m.block(a * d, c * d, d, d) += f * vc;
  }
}

void apply_one(const Term& term, const RowMajor& x, bool adjoint, RowMajor& acc) {
  if (adjoint) {
    acc.noalias() += term.weight * (term.v.adjoint() * x * term.v);
  } else {
    acc.noalias() += term.weight * (term.v * x * term.v.adjoint());
  }
}

ComplexMatrix haar_term(int d, int t, std::uint64_t seed, std::uint64_t index) {
  const ComplexMatrix v = linalg::tensor_power(haar_sample(d, seed, index), t);
  return linalg::kron(v, v.conjugate(), std::size_t{1} << 26);
}

}  // namespace

ComplexMatrix moment_matrix(const std::vector<Term>& terms) {
  check_terms(terms);
  const Eigen::Index d = terms.front().v.rows();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index a = 0; a < d; ++a) {
    for (const auto& term : terms) add_block_row(term, a, m);
  }
  return m;
}

ComplexMatrix moment_matrix_serial(const std::vector<Term>& terms) {
  check_terms(terms);
  const Eigen::Index d = terms.front().v.rows();
  ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& term : terms) {
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b)
        for (Eigen::Index c = 0; c < d; ++c)
          for (Eigen::Index e = 0; e < d; ++e)
            m(a * d + b, c * d + e) += term.weight * term.v(a, c) * std::conj(term.v(b, e));
  }
  return m;
}

void moment_apply(const std::vector<Term>& terms, const ComplexVector& x, ComplexVector& y,
                  bool adjoint) {
  check_terms(terms);
  const Eigen::Index d = terms.front().v.rows();
  const RowMajor xm = Eigen::Map<const RowMajor>(x.data(), d, d);
  const auto n = static_cast<std::int64_t>(terms.size());
  const std::int64_t chunks = (n + kApplyChunk - 1) / kApplyChunk;
  std::vector<RowMajor> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic) if (chunks > 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    RowMajor acc = RowMajor::Zero(d, d);
    const std::int64_t end = std::min(n, (c + 1) * kApplyChunk);
    for (std::int64_t i = c * kApplyChunk; i < end; ++i) {
      apply_one(terms[static_cast<std::size_t>(i)], xm, adjoint, acc);
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  RowMajor total = partial.front();
  for (std::size_t c = 1; c < partial.size(); ++c) total += partial[c];
  y = Eigen::Map<const ComplexVector>(total.data(), d * d);
}

void moment_apply_serial(const std::vector<Term>& terms, const ComplexVector& x,
                         ComplexVector& y, bool adjoint) {
  check_terms(terms);
  const Eigen::Index d = terms.front().v.rows();
  y = ComplexVector::Zero(d * d);
  for (const auto& term : terms) {
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) {
        cplx s = 0.0;
        for (Eigen::Index c = 0; c < d; ++c)
          for (Eigen::Index e = 0; e < d; ++e) {
            // forward: V[a,c] conj(V[b,e]); adjoint: conj(V[c,a]) V[e,b]
            const cplx k = adjoint ? std::conj(term.v(c, a)) * term.v(e, b)
                                   : term.v(a, c) * std::conj(term.v(b, e));
            s += k * x(c * d + e);
          }
        y(a * d + b) += term.weight * s;
      }
  }
}

double frame_potential(const std::vector<double>& p, const std::vector<ComplexMatrix>& u,
                       int t) {
  const auto n = static_cast<std::int64_t>(u.size());
  std::vector<double> row(u.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const ComplexMatrix ui = u[static_cast<std::size_t>(i)].conjugate();
    double s = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const cplx tr = ui.cwiseProduct(u[static_cast<std::size_t>(j)]).sum();
      s += p[static_cast<std::size_t>(j)] * std::pow(std::norm(tr), t);
    }
    row[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)] * s;
  }
  double total = 0.0;
  for (double r : row) total += r;
  return total;
}

double frame_potential_serial(const std::vector<double>& p, const std::vector<ComplexMatrix>& u,
                              int t) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      const cplx tr = (u[i].adjoint() * u[j]).trace();
      total += p[i] * p[j] * std::pow(std::abs(tr), 2 * t);
    }
  return total;
}

ComplexMatrix haar_sample(int d, std::uint64_t seed, std::uint64_t index) {
  rng::CounterRng r(seed, index);
  ComplexMatrix g(d, d);
  for (int c = 0; c < d; ++c)
    for (int rr = 0; rr < d; ++rr) g(rr, c) = r.complex_normal();
  return linalg::haar_from_ginibre(g);
}

ComplexMatrix haar_montecarlo(int d, int t, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("haar_montecarlo: samples must be >= 1");
  const Eigen::Index dim = static_cast<Eigen::Index>(std::pow(d, 2 * t));
  const std::int64_t chunks = (samples + kHaarChunk - 1) / kHaarChunk;
  std::vector<ComplexMatrix> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    const std::int64_t end = std::min(samples, (c + 1) * kHaarChunk);
    for (std::int64_t i = c * kHaarChunk; i < end; ++i) {
      acc += haar_term(d, t, seed, static_cast<std::uint64_t>(i));
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  ComplexMatrix total = partial.front();
  for (std::size_t c = 1; c < partial.size(); ++c) total += partial[c];
  return total / static_cast<double>(samples);
}

ComplexMatrix haar_montecarlo_serial(int d, int t, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("haar_montecarlo: samples must be >= 1");
  const Eigen::Index dim = static_cast<Eigen::Index>(std::pow(d, 2 * t));
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::int64_t i = 0; i < samples; ++i) {
    total += haar_term(d, t, seed, static_cast<std::uint64_t>(i));
  }
  return total / static_cast<double>(samples);
}

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) {
  if (n < 1) throw DomainError("threads must be >= 1");
  omp_set_num_threads(n);
}

}  // namespace dforge::kernels
