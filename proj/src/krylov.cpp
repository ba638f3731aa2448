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

#include <algorithm>
#include <cmath>
#include <limits>

#include "dforge/linalg.hpp"
#include "dforge/rng.hpp"

namespace dforge::linalg {

namespace {

// Row/column Givens swap of adjacent diagonal entries k, k+1 of an upper
// triangular T, keeping Q T Q^H invariant.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, Eigen::Index k) {
  const Eigen::Index n = t.rows();
  const cplx t11 = t(k, k);
  const cplx t22 = t(k + 1, k + 1);
  const cplx f = t(k, k + 1);
  const cplx g = t22 - t11;
  double cs;
  cplx sn;
  if (g == cplx(0.0)) {
    cs = 1.0;
    sn = 0.0;
  } else if (f == cplx(0.0)) {
    cs = 0.0;
    sn = std::conj(g) / std::abs(g);
  } else {
    const double fa = std::abs(f);
    const double norm = std::hypot(fa, std::abs(g));
    cs = fa / norm;
    sn = (f / fa) * std::conj(g) / norm;
  }
  // Rows k, k+1 for columns k+2..n-1.
  for (Eigen::Index j = k + 2; j < n; ++j) {
    const cplx x = t(k, j);
    const cplx y = t(k + 1, j);
    t(k, j) = cs * x + sn * y;
    t(k + 1, j) = cs * y - std::conj(sn) * x;
  }
  // Columns k, k+1 for rows 0..k-1, rotation with conj(sn).
  const cplx snc = std::conj(sn);
  for (Eigen::Index i = 0; i < k; ++i) {
    const cplx x = t(i, k);
    const cplx y = t(i, k + 1);
    t(i, k) = cs * x + snc * y;
    t(i, k + 1) = cs * y - std::conj(snc) * x;
  }
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    const cplx x = q(i, k);
    const cplx y = q(i, k + 1);
    q(i, k) = cs * x + snc * y;
    q(i, k + 1) = cs * y - std::conj(snc) * x;
  }
}

ComplexVector random_unit(Eigen::Index n, rng::CounterRng& r) {
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = r.complex_normal();
  return v / v.norm();
}

// Ritz vector of T for diagonal entry i, by back substitution.
ComplexVector schur_eigvec(const ComplexMatrix& t, Eigen::Index i) {
  ComplexVector y = ComplexVector::Zero(i + 1);
  y(i) = 1.0;
  const cplx lam = t(i, i);
  const double small = std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(lam));
  for (Eigen::Index l = i - 1; l >= 0; --l) {
    cplx s = 0.0;
    for (Eigen::Index p = l + 1; p <= i; ++p) s += t(l, p) * y(p);
    cplx den = t(l, l) - lam;
    if (std::abs(den) < small) den = small;
    y(l) = -s / den;
  }
  return y / y.norm();
}

}  // namespace

void reorder_schur(ComplexMatrix& t, ComplexMatrix& q) {
  const Eigen::Index n = t.rows();
  for (Eigen::Index pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (Eigen::Index k = 0; k + 1 < n - pass; ++k) {
      if (std::abs(t(k + 1, k + 1)) > std::abs(t(k, k)) * (1.0 + 1e-14) + 1e-300) {
        swap_adjacent(t, q, k);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
}

KrylovResult leading_eigenvalues(const LinearOperator& op,
                                 const KrylovOptions& opts) {
  const Eigen::Index n = op.dim;
  if (n < 1) throw DomainError("leading_eigenvalues: empty operator");
  const int nev = std::max(1, std::min<int>(opts.nev, static_cast<int>(n)));
  KrylovResult res;

  int m = opts.ncv > 0 ? opts.ncv : std::max(2 * nev + 1, 24);
  if (m >= n) {
    // Small operator: materialize and solve densely.
    ComplexMatrix a(n, n);
    ComplexVector e = ComplexVector::Zero(n), y(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      e.setZero();
      e(j) = 1.0;
      op.apply(e, y);
      a.col(j) = y;
      ++res.matvecs;
    }
    auto s = eig_spectrum(a);
    res.values.assign(s.eigenvalues.begin(), s.eigenvalues.begin() + nev);
    res.residuals.assign(nev, 0.0);
    res.converged = true;
    return res;
  }

  rng::CounterRng r(opts.seed, 0);
  ComplexMatrix v = ComplexMatrix::Zero(n, m + 1);
  ComplexMatrix h = ComplexMatrix::Zero(m + 1, m);
  v.col(0) = random_unit(n, r);
  ComplexVector w(n);
  Eigen::Index k = 0;
  const int keep = std::min(m - 1, nev + (m - nev) / 2);

  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    for (Eigen::Index j = k; j < m; ++j) {
      op.apply(v.col(j), w);
      ++res.matvecs;
      const double wnorm0 = w.norm();
      ComplexVector coeff = v.leftCols(j + 1).adjoint() * w;
      w.noalias() -= v.leftCols(j + 1) * coeff;
      ComplexVector again = v.leftCols(j + 1).adjoint() * w;
      w.noalias() -= v.leftCols(j + 1) * again;
      coeff += again;
      h.block(0, j, j + 1, 1) = coeff;
      const double beta = w.norm();
      if (beta <= 1e-13 * std::max(wnorm0, 1e-300)) {
        // Invariant subspace: continue with a fresh orthogonal direction.
        ComplexVector fresh = random_unit(n, r);
        for (int pass = 0; pass < 2; ++pass) {
          fresh -= v.leftCols(j + 1) * (v.leftCols(j + 1).adjoint() * fresh);
        }
        v.col(j + 1) = fresh / fresh.norm();
        h(j + 1, j) = 0.0;
      } else {
        v.col(j + 1) = w / beta;
        h(j + 1, j) = beta;
      }
    }

    Eigen::ComplexSchur<ComplexMatrix> schur(h.topRows(m));
    if (schur.info() != Eigen::Success) {
      throw NumericError("leading_eigenvalues: Schur of projected matrix failed");
    }
    ComplexMatrix t = schur.matrixT();
    ComplexMatrix q = schur.matrixU();
    reorder_schur(t, q);
    const Eigen::RowVectorXcd bq = h.row(m) * q;

    const double scale = std::max(std::abs(t(0, 0)), 1e-300);
    res.values.clear();
    res.residuals.clear();
    bool all_ok = true;
    for (int i = 0; i < nev; ++i) {
      const ComplexVector y = schur_eigvec(t, i);
      const double rn = std::abs((bq.head(i + 1) * y).value());
      res.values.push_back(t(i, i));
      res.residuals.push_back(rn);
      if (rn > opts.tol * scale) all_ok = false;
    }
    res.restarts = restart;
    if (all_ok) {
      res.converged = true;
      break;
    }
    if (restart == opts.max_restarts) break;

    const ComplexMatrix vk = v.leftCols(m) * q.leftCols(keep);
    v.leftCols(keep) = vk;
    v.col(keep) = v.col(m);
    h.setZero();
    h.topLeftCorner(keep, keep) = t.topLeftCorner(keep, keep);
    h.row(keep).head(keep) = bq.head(keep);
    k = keep;
  }
  if (!res.converged) {
    throw NumericError("leading_eigenvalues: no convergence after " +
                       std::to_string(res.restarts) + " restarts, " +
                       std::to_string(res.matvecs) + " matvecs");
  }
  std::vector<int> order;
  sort_spectrum(res.values, &order);
  std::vector<double> sorted_res;
  for (int i : order) sorted_res.push_back(res.residuals[static_cast<std::size_t>(i)]);
  res.residuals = std::move(sorted_res);
  return res;
}

double operator_norm(const LinearOperator& op, const LinearOperator& adjoint,
                     const KrylovOptions& opts) {
  LinearOperator gram;
  gram.dim = op.dim;
  ComplexVector tmp(op.dim);
  gram.apply = [&](const ComplexVector& x, ComplexVector& y) {
    op.apply(x, tmp);
    adjoint.apply(tmp, y);
  };
  KrylovOptions o = opts;
  o.nev = std::max(1, opts.nev);
  const auto r = leading_eigenvalues(gram, o);
  return std::sqrt(std::abs(r.values.front()));
}

}  // namespace dforge::linalg
