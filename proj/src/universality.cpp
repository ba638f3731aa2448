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

#include "dforge/universality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dforge/ensembles.hpp"
#include "dforge/moments.hpp"

namespace dforge::universality {

namespace {

constexpr double kPi = std::numbers::pi;
// Eigenvalue moduli this close to 1 count as unit.
constexpr double kUnitRadiusTol = 1e-9;

// Orthonormal coordinates of a Hermitian matrix under Tr(AB).
Eigen::VectorXd to_real(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  Eigen::VectorXd v(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) v(k++) = h(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v(k++) = std::sqrt(2.0) * h(i, j).real();
      v(k++) = std::sqrt(2.0) * h(i, j).imag();
    }
  }
  return v;
}

ComplexMatrix from_real(const Eigen::VectorXd& v, Eigen::Index d) {
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) h(i, i) = v(k++);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double re = v(k++) / std::sqrt(2.0);
      const double im = v(k++) / std::sqrt(2.0);
      h(i, j) = cplx(re, im);
      h(j, i) = cplx(re, -im);
    }
  }
  return h;
}

class RealSpan {
 public:
  RealSpan(Eigen::Index n, double tol) : n_(n), tol_(tol) {}

  // Modified Gram-Schmidt with one reorthogonalization pass. The new
  // component is compared to `scale`, the natural size of v, not to |v|:
  // a commutator of commuting unit elements is round-off and must not be
  // promoted to a direction by normalization.
  bool add(Eigen::VectorXd v, double scale) {
    if (!(scale > 0.0)) return false;
    v /= scale;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis_) v -= b.dot(v) * b;
    }
    const double r = v.norm();
    if (r <= tol_) return false;
    basis_.push_back(v / r);
    return true;
  }

  double residual(Eigen::VectorXd v) const {
    v /= v.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis_) v -= b.dot(v) * b;
    }
    return v.norm();
  }

  std::size_t size() const { return basis_.size(); }
  const Eigen::VectorXd& operator[](std::size_t i) const { return basis_[i]; }
  Eigen::Index ambient() const { return n_; }

 private:
  Eigen::Index n_;
  double tol_;
  std::vector<Eigen::VectorXd> basis_;
};

}  // namespace

LieClosureResult lie_closure_dim(const std::vector<ComplexMatrix>& generators, double rank_tol) {
  if (generators.empty()) throw DomainError("lie_closure_dim: no generators");
  const Eigen::Index d = generators.front().rows();
  if (d > 16) throw CapacityError("lie_closure_dim: d above 16");
  LieClosureResult r;
  r.ambient_dim = static_cast<int>(d * d);
  RealSpan span(d * d, rank_tol);
  for (const auto& u : generators) {
    if (u.rows() != d) throw DomainError("lie_closure_dim: generator dimension mismatch");
    const auto lg = linalg::principal_log(u);
    r.branch_cut_warning = r.branch_cut_warning || lg.branch_cut;
    const Eigen::VectorXd hv = to_real(lg.h);
    span.add(hv, hv.norm());
  }
  const auto full = static_cast<std::size_t>(d * d);
  for (std::size_t j = 1; j < span.size() && span.size() < full; ++j) {
    const ComplexMatrix bj = from_real(span[j], d);
    for (std::size_t i = 0; i < j && span.size() < full; ++i) {
      const ComplexMatrix bi = from_real(span[i], d);
      const ComplexMatrix comm = cplx(0.0, 1.0) * (bi * bj - bj * bi);
      ++r.iterations;
      span.add(to_real(comm), 1.0);  // bi, bj have unit Frobenius norm
    }
  }
  r.closure_dim = static_cast<int>(span.size());
  const Eigen::VectorXd id = to_real(ComplexMatrix::Identity(d, d));
  const bool has_identity = span.residual(id) <= rank_tol;
  r.traceless_dim = r.closure_dim - (has_identity ? 1 : 0);
  r.universal = r.traceless_dim == static_cast<int>(d * d - 1);
  return r;
}

std::string RationalityVerdict::label() const {
  std::ostringstream s;
  if (rational) {
    s << "rational(" << p << "," << q << ")";
  } else {
    s << "irrational-likely";
  }
  return s.str();
}

RationalityVerdict rationality_class(double theta, long long q_max, double tol) {
  if (!std::isfinite(theta)) throw DomainError("rationality_class: non-finite angle");
  RationalityVerdict v;
  v.q_max = q_max;
  v.tol = tol;
  const double x = theta / kPi;
  v.angle_over_pi = x;
  long double frac = x;
  long long a = static_cast<long long>(std::floor(frac));
  frac -= a;
  long long p_prev = 1, q_prev = 0;
  long long p = a, q = 1;
  for (int iter = 0; iter < 64; ++iter) {
    if (q > q_max) break;
    if (std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <= tol) {
      v.rational = true;
      v.p = p;
      v.q = q;
      return v;
    }
    if (frac < 1e-300L) break;
    const long double y = 1.0L / frac;
    if (y > 1e18L) break;
    a = static_cast<long long>(std::floor(y));
    frac = y - a;
    const long long pn = a * p + p_prev;
    const long long qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  return v;
}

Lemma5Params lemma5_params(double alpha) {
  Lemma5Params r;
  const double c2 = std::cos(alpha / 2.0) * std::cos(alpha / 2.0);
  r.printed_delta = c2;
  const double s = std::sqrt(std::max(0.0, 1.0 - c2 * c2));
  const ComplexMatrix h = linalg::hadamard();
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  z(1, 1) = std::polar(1.0, alpha);
  const ComplexMatrix target = (h * z) * (h * z);
  if (s < 1e-14) {
    r.degenerate = true;
    r.residual = linalg::max_abs_entry(target - std::polar(1.0, alpha) * ComplexMatrix::Identity(2, 2));
    return r;
  }
  r.delta = std::acos(std::clamp(c2, -1.0, 1.0));
  r.a = -std::sin(alpha) / (2.0 * s);
  r.c = r.a;
  r.b = (1.0 - std::cos(alpha)) / (2.0 * s);
  r.printed_b = -r.b;
  const ComplexMatrix axis = r.a * linalg::pauli_x() + r.b * linalg::pauli_y() + r.c * linalg::pauli_z();
  const ComplexMatrix rot = std::cos(r.delta) * ComplexMatrix::Identity(2, 2) +
                            cplx(0.0, std::sin(r.delta)) * axis;
  r.residual = linalg::max_abs_entry(target - std::polar(1.0, alpha) * rot);
  return r;
}

UniversalityReport check_universal(const UnitaryEnsemble& e, double phase_tol, const Caps& caps) {
  UniversalityReport rep;
  const UnitaryEnsemble d = ensembles::dedup_up_to_phase(e, phase_tol);
  rep.distinct = d.size();
  std::vector<ComplexMatrix> gens;
  for (const auto& entry : d.entries) {
    gens.push_back(entry.unitary);
    const cplx det = entry.unitary.determinant();
    const auto dv = rationality_class(std::arg(det));
    rep.det_classes.push_back(dv);
    rep.det_irrational = rep.det_irrational || !dv.rational;
    if (!rep.spectral_irrational) {
      Eigen::ComplexEigenSolver<ComplexMatrix> es(entry.unitary, false);
      const auto& ev = es.eigenvalues();
      for (Eigen::Index i = 0; i < ev.size() && !rep.spectral_irrational; ++i) {
        for (Eigen::Index j = i + 1; j < ev.size(); ++j) {
          // Eigenvalues carry ~1e-15 error, so the tolerance is loosened.
          if (!rationality_class(std::arg(ev(i) / ev(j)), 10000, 1e-10).rational) {
            rep.spectral_irrational = true;
            break;
          }
        }
      }
    }
  }
  rep.closure = lie_closure_dim(gens);
  if (rep.closure.branch_cut_warning) {
    rep.warnings.push_back("a generator has an eigenvalue on the log branch cut");
  }
  const double d4 = std::pow(static_cast<double>(e.dim), 4);
  if (rep.closure.universal && e.dim >= 2 && d4 <= static_cast<double>(caps.max_moment_dim)) {
    Caps iterative = caps;
    iterative.dense_subdominant_dim = 0;  // only the spectral radius is needed
    rep.t2_radius = moments::subdominant_lambda(d, 2, iterative).cross;
    rep.t2_invariants = *rep.t2_radius >= 1.0 - kUnitRadiusTol;
  } else if (rep.closure.universal && e.dim >= 2) {
    rep.warnings.push_back("second-moment invariant screen skipped: d^4 exceeds the moment cap");
  }
  if (!rep.closure.universal) {
    rep.verdict = "not-universal";
  } else if (rep.t2_invariants) {
    rep.verdict = "not-universal";
    rep.warnings.push_back(
        "full Lie closure of the principal logarithms, but the second moment has a "
        "unit-modulus eigenvalue outside the Haar space: the generated group leaves extra "
        "invariants on two copies and is not dense");
  } else if (rep.spectral_irrational) {
    rep.verdict = "universal";
  } else {
    rep.verdict = "inconclusive";
    rep.warnings.push_back(
        "universal closure (continuous), discrete-set caveat: every eigenvalue-argument "
        "difference is a rational multiple of pi, so the generated group may be finite");
  }
  return rep;
}

}  // namespace dforge::universality
