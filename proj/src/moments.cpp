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

#include "dforge/moments.hpp"

#include <algorithm>
#include <cmath>

#include "dforge/ensembles.hpp"

namespace dforge::moments {

namespace {

constexpr std::size_t kDenseSvdDim = 1024;
constexpr double kOverlapTol = 1e-6;

double full_dim(int d, int t) { return std::pow(static_cast<double>(d), 2.0 * t); }

void check_t(int t) {
  if (t < 1) throw DomainError("moments: t must be >= 1");
}

linalg::LinearOperator residual_operator(const MomentOperator& m, const HaarProjector& p,
                                         bool adjoint) {
  linalg::LinearOperator op;
  op.dim = m.dim();
  op.apply = [&m, &p, adjoint](const ComplexVector& x, ComplexVector& y) {
    ComplexVector py;
    if (adjoint) {
      m.apply_adjoint(x, y);
    } else {
      m.apply(x, y);
    }
    p.apply(x, py);
    y -= py;
  };
  return op;
}

// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::ensemble_sum:
      return "ensemble-sum";
    case Method::haar_projector:
      return "haar-projector";
    case Method::haar_montecarlo:
      return "haar-montecarlo";
  }
  return "unknown";
}

Eigen::Index MomentOperator::dim() const {
  return static_cast<Eigen::Index>(std::llround(full_dim(d, t)));
}

void MomentOperator::apply(const ComplexVector& x, ComplexVector& y) const {
  if (materialized()) {
    y.noalias() = matrix * x;
  } else {
    kernels::moment_apply(terms, x, y, false);
  }
}

void MomentOperator::apply_adjoint(const ComplexVector& x, ComplexVector& y) const {
  if (materialized()) {
    y.noalias() = matrix.adjoint() * x;
  } else {
    kernels::moment_apply(terms, x, y, true);
  }
}

const ComplexMatrix& MomentOperator::dense() const {
  if (!materialized()) throw CapacityError("moment operator is matrix-free");
  return matrix;
}

MomentOperator moment_op(const UnitaryEnsemble& e, int t, const Caps& caps, bool materialize) {
  check_t(t);
  e.validate(1e-10, 1e-8);
  const double dim = full_dim(e.dim, t);
  if (materialize && dim > static_cast<double>(caps.max_moment_dim)) {
    throw CapacityError("moment_op: dimension d^{2t} = " + std::to_string(static_cast<long long>(dim)) +
                        " above cap " + std::to_string(caps.max_moment_dim));
  }
  if (dim > static_cast<double>(std::size_t{1} << 24)) {
    throw CapacityError("moment_op: matrix-free dimension above 2^24");
  }
  MomentOperator m;
  m.t = t;
  m.d = e.dim;
  m.method = Method::ensemble_sum;
  m.source = e.label;
  m.terms.reserve(e.size());
  for (const auto& entry : e.entries) {
    m.terms.push_back({entry.probability, linalg::tensor_power(entry.unitary, t, caps.max_kron_dim)});
  }
  if (materialize) m.matrix = kernels::moment_matrix(m.terms);
  return m;
}

double tpe_eta(const MomentOperator& m, const HaarProjector& p, const Caps& caps) {
  (void)caps;
  if (m.materialized() && static_cast<std::size_t>(m.dim()) <= kDenseSvdDim) {
    return linalg::spectral_norm(m.matrix - p.dense());
  }
  linalg::KrylovOptions o;
  o.nev = 1;
  return linalg::operator_norm(residual_operator(m, p, false), residual_operator(m, p, true), o);
}

double tpe_eta(const UnitaryEnsemble& e, int t, const Caps& caps) {
  check_t(t);
  const bool dense = full_dim(e.dim, t) <= static_cast<double>(kDenseSvdDim);
  const MomentOperator m = moment_op(e, t, caps, dense);
  const HaarProjector p(e.dim, t, std::max<std::size_t>(caps.max_moment_dim, static_cast<std::size_t>(m.dim())));
  return tpe_eta(m, p, caps);
}

LambdaResult subdominant_lambda(const MomentOperator& m, const HaarProjector& p,
                                const Caps& caps, const LambdaOptions& opts) {
  LambdaResult r;
  const Eigen::Index n = m.dim();
  if (m.materialized() && static_cast<std::size_t>(n) <= caps.dense_subdominant_dim) {
    r.method = "dense";
    const ComplexMatrix pd = p.dense();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(m.matrix, true);
    if (es.info() != Eigen::Success) throw NumericError("subdominant_lambda: eigensolver failed");
    ComplexMatrix vecs = es.eigenvectors();
    for (Eigen::Index k = 0; k < n; ++k) {
      vecs.col(k).normalize();
      const double overlap = (pd * vecs.col(k)).norm();
      const cplx lam = es.eigenvalues()(k);
      const double res = (m.matrix * vecs.col(k) - lam * vecs.col(k)).norm();
      if (res > kOverlapTol) r.defective_warning = true;
      if (overlap <= kOverlapTol) r.by_overlap = std::max(r.by_overlap, std::abs(lam));
    }
    Eigen::BDCSVD<ComplexMatrix> svd(vecs);
    const auto& sv = svd.singularValues();
    r.eigvec_condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                              : std::numeric_limits<double>::infinity();
    if (r.eigvec_condition > 1e8) r.defective_warning = true;
    const auto rs = linalg::eig_spectrum(m.matrix - pd, false, caps.dense_eig_dim);
    r.cross = std::abs(rs.eigenvalues.front());
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(opts.nev), rs.eigenvalues.size());
    r.leading.assign(rs.eigenvalues.begin(), rs.eigenvalues.begin() + static_cast<std::ptrdiff_t>(keep));
  } else {
    r.method = "krylov-schur";
    linalg::KrylovOptions o;
    o.nev = opts.nev;
    o.tol = opts.tol;
    const auto kr = linalg::leading_eigenvalues(residual_operator(m, p, false), o);
    r.leading = kr.values;
    r.cross = std::abs(kr.values.front());
    r.by_overlap = r.cross;
  }
  r.lambda_sub = std::max(r.by_overlap, r.cross);
  return r;
}

LambdaResult subdominant_lambda(const UnitaryEnsemble& e, int t, const Caps& caps,
                                const LambdaOptions& opts) {
  check_t(t);
  const bool dense = full_dim(e.dim, t) <= static_cast<double>(caps.dense_subdominant_dim);
  const MomentOperator m = moment_op(e, t, caps, dense);
  const HaarProjector p(e.dim, t, std::max<std::size_t>(caps.max_moment_dim, static_cast<std::size_t>(m.dim())));
  return subdominant_lambda(m, p, caps, opts);
}

double frame_potential(const UnitaryEnsemble& e, int t) {
  check_t(t);
  std::vector<double> p;
  std::vector<ComplexMatrix> u;
  for (const auto& entry : e.entries) {
    p.push_back(entry.probability);
    u.push_back(entry.unitary);
  }
  return kernels::frame_potential(p, u, t);
}

double haar_frame_potential(int d, int t) {
  check_t(t);
  return static_cast<double>(HaarProjector(d, t, static_cast<std::size_t>(-1)).rank());
}

ComplexMatrix choi_from_moment(const ComplexMatrix& m, Eigen::Index base) {
  ComplexMatrix j(base * base, base * base);
  for (Eigen::Index a = 0; a < base; ++a)
    for (Eigen::Index b = 0; b < base; ++b)
      for (Eigen::Index c = 0; c < base; ++c)
        for (Eigen::Index d = 0; d < base; ++d) j(a * base + c, b * base + d) = m(a * base + b, c * base + d);
  return j;
}

EpsilonResult design_epsilon_from_moment(const ComplexMatrix& m, int d, int t, const Caps& caps) {
  const HaarProjector proj(d, t, caps.max_moment_dim);
  const Eigen::Index base = proj.base_dim();
  if (m.rows() != proj.dim()) throw DomainError("design_epsilon: moment dimension mismatch");
  ComplexMatrix jm = choi_from_moment(m, base);
  ComplexMatrix jh = choi_from_moment(proj.dense(), base);
  jm = 0.5 * (jm + jm.adjoint()).eval();
  jh = 0.5 * (jh + jh.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eh(jh);
  const Eigen::VectorXd& w = eh.eigenvalues();
  const double cutoff = 1e-10 * w.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > cutoff) keep.push_back(i);
  }
  EpsilonResult r;
  r.support_rank = static_cast<int>(keep.size());
  ComplexMatrix qs(jh.rows(), static_cast<Eigen::Index>(keep.size()));
  Eigen::VectorXd inv_sqrt(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    qs.col(static_cast<Eigen::Index>(k)) = eh.eigenvectors().col(keep[k]);
    inv_sqrt(static_cast<Eigen::Index>(k)) = 1.0 / std::sqrt(w(keep[k]));
  }
  const ComplexMatrix perp = ComplexMatrix::Identity(jh.rows(), jh.cols()) - qs * qs.adjoint();
  r.support_leak = hermitian_norm(perp * jm * perp);
  if (r.support_leak > kExactTol) {
    r.support_mismatch = true;
    return r;
  }
  const ComplexMatrix s = inv_sqrt.asDiagonal() * (qs.adjoint() * jm * qs) * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
  r.g_min = es.eigenvalues().minCoeff();
  r.g_max = es.eigenvalues().maxCoeff();
  r.epsilon = std::max(std::abs(r.g_max - 1.0), std::abs(1.0 - r.g_min));
  return r;
}

EpsilonResult design_epsilon(const UnitaryEnsemble& e, int t, const Caps& caps) {
  const MomentOperator m = moment_op(e, t, caps, true);
  return design_epsilon_from_moment(m.matrix, e.dim, t, caps);
}

double block_factorization_check(const UnitaryEnsemble& e, int n, int t, const Caps& caps) {
  if (e.dim != 4) throw DomainError("block_factorization_check: ensemble must act on two qubits");
  if (n < 2) throw DomainError("block_factorization_check: n must be >= 2");
  const UnitaryEnsemble composed = ensembles::block_compose(e, n, caps.max_concat_entries);
  const ComplexMatrix left = moment_op(composed, t, caps, true).matrix;

  auto pair_factor = [&](int r) {
    UnitaryEnsemble embedded;
    embedded.dim = 1 << n;
    const ComplexMatrix lo = ComplexMatrix::Identity(1 << (r - 1), 1 << (r - 1));
    const ComplexMatrix hi = ComplexMatrix::Identity(1 << (n - r - 1), 1 << (n - r - 1));
    for (const auto& entry : e.entries) {
      embedded.entries.push_back({entry.probability, linalg::kron(linalg::kron(lo, entry.unitary), hi)});
    }
    return moment_op(embedded, t, caps, true).matrix;
  };
  auto layer = [&](int first) {
    ComplexMatrix acc = ComplexMatrix::Identity(left.rows(), left.cols());
    for (int r = first; r + 1 <= n; r += 2) acc = pair_factor(r) * acc;
    return acc;
  };
  ComplexMatrix right = layer(1);
  if (n > 2) right = layer(2) * right;
  return linalg::spectral_norm(left - right);
}

std::vector<DecayRow> prop1_decay_check(const UnitaryEnsemble& e, int t, int k_max,
                                        const Caps& caps) {
  if (k_max < 1) throw DomainError("prop1_decay_check: k_max must be >= 1");
  const ComplexMatrix m = moment_op(e, t, caps, true).matrix;
  const ComplexMatrix p = HaarProjector(e.dim, t, caps.max_moment_dim).dense();
  const double eta = linalg::spectral_norm(m - p);
  std::vector<DecayRow> rows;
  ComplexMatrix mk = m;
  for (int k = 1; k <= k_max; ++k) {
    DecayRow row;
    row.k = k;
    row.norm = linalg::spectral_norm(mk - p);
    row.eta_pow = std::pow(eta, k);
    row.ok = row.norm <= row.eta_pow + kExactTol;
    rows.push_back(row);
    mk = (mk * m).eval();
  }
  return rows;
}

DesignReport analyze(const UnitaryEnsemble& e, int t, const Caps& caps, const AnalyzeOptions& opts) {
  check_t(t);
  DesignReport rep;
  const double dim = full_dim(e.dim, t);
  const bool dense = dim <= static_cast<double>(caps.max_moment_dim);
  const MomentOperator m = moment_op(e, t, caps, dense && dim <= static_cast<double>(kDenseSvdDim));
  const HaarProjector p(e.dim, t, std::max<std::size_t>(caps.max_moment_dim, static_cast<std::size_t>(m.dim())));
  if (opts.eta) rep.eta = tpe_eta(m, p, caps);
  if (opts.lambda) {
    const auto lr = subdominant_lambda(m, p, caps);
    rep.lambda_sub = lr.lambda_sub;
    rep.lambda_cross = lr.cross;
    rep.defective_warning = lr.defective_warning;
    rep.lambda_method = lr.method;
    rep.leading = lr.leading;
  }
  if (opts.frame) {
    rep.frame_potential = frame_potential(e, t);
    rep.frame_potential_haar = static_cast<double>(p.rank());
  }
  if (opts.epsilon) {
    const auto er = m.materialized() ? design_epsilon_from_moment(m.matrix, e.dim, t, caps)
                                     : design_epsilon(e, t, caps);
    rep.epsilon_star = er.epsilon;
    rep.epsilon_support_mismatch = er.support_mismatch;
  }
  rep.exact_design = opts.eta && rep.eta <= kExactTol;
  return rep;
}

}  // namespace dforge::moments
