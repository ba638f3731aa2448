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

#include "dforge/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace dforge::linalg {

namespace {

bool same_modulus(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b));
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                   std::size_t max_dim) {
  const auto ra = static_cast<std::size_t>(a.rows());
  const auto rb = static_cast<std::size_t>(b.rows());
  const auto ca = static_cast<std::size_t>(a.cols());
  const auto cb = static_cast<std::size_t>(b.cols());
  if (ra * rb > max_dim || ca * cb > max_dim) {
    std::ostringstream msg;
    msg << "kron: result dimension " << ra * rb << "x" << ca * cb
        << " exceeds cap " << max_dim;
    throw CapacityError(msg.str());
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& u, int t, std::size_t max_dim) {
  if (t < 1) throw DomainError("tensor_power: t must be >= 1");
  ComplexMatrix out = u;
  for (int i = 1; i < t; ++i) out = kron(out, u, max_dim);
  return out;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double nfrob_norm(const ComplexMatrix& a) {
  return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

void sort_spectrum(std::vector<cplx>& values, std::vector<int>* order) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    const double mi = std::abs(values[i]);
    const double mj = std::abs(values[j]);
    if (!same_modulus(mi, mj)) return mi > mj;
    return std::arg(values[i]) < std::arg(values[j]);
  });
  std::vector<cplx> sorted;
  sorted.reserve(values.size());
  for (int i : idx) sorted.push_back(values[i]);
  values = std::move(sorted);
  if (order) *order = std::move(idx);
}

Spectrum eig_spectrum(const ComplexMatrix& a, bool with_vectors,
                      std::size_t max_dim) {
  if (a.rows() != a.cols()) throw DomainError("eig_spectrum: matrix not square");
  if (static_cast<std::size_t>(a.rows()) > max_dim) {
    throw CapacityError("eig_spectrum: dim " + std::to_string(a.rows()) +
                        " above dense cap " + std::to_string(max_dim) +
                        "; use leading_eigenvalues");
  }
  if (!all_finite(a)) throw DomainError("eig_spectrum: non-finite entries");
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, with_vectors);
  if (es.info() != Eigen::Success) {
    throw NumericError("eig_spectrum: QR iteration did not converge (dim " +
                       std::to_string(a.rows()) + ")");
  }
  Spectrum s;
  s.eigenvalues.assign(es.eigenvalues().data(),
                       es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<int> order;
  sort_spectrum(s.eigenvalues, &order);
  if (with_vectors) {
    ComplexMatrix v(a.rows(), a.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
      v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(order[k]);
    }
    const double scale = std::max(spectral_norm(a), 1e-300);
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      const double res =
          (a * v.col(k) - s.eigenvalues[static_cast<std::size_t>(k)] * v.col(k)).norm() /
          std::max(v.col(k).norm(), 1e-300);
      if (res > 1e-8 * scale) {
        throw NumericError("eig_spectrum: eigenpair residual " +
                           std::to_string(res) + " above 1e-8*|A|");
      }
    }
    s.eigenvectors = std::move(v);
  }
  return s;
}

LogResult principal_log(const ComplexMatrix& u) {
  if (!is_unitary(u, 1e-8)) throw DomainError("principal_log: input not unitary");
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success) {
    throw NumericError("principal_log: Schur decomposition failed");
  }
  const ComplexMatrix& q = schur.matrixU();
  const ComplexMatrix& t = schur.matrixT();
  LogResult out;
  Eigen::VectorXcd phases(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const cplx lam = t(i, i);
    double theta = std::arg(lam);
    if (std::abs(lam + 1.0) <= 1e-8) {
      theta = std::numbers::pi;
      out.branch_cut = true;
    }
    phases(i) = theta;
  }
  ComplexMatrix h = q * phases.asDiagonal() * q.adjoint();
  out.h = 0.5 * (h + h.adjoint());
  return out;
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  Eigen::VectorXcd d(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    d(i) = std::polar(1.0, es.eigenvalues()(i));
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix phase_normalize(const ComplexMatrix& u) {
  const double m = max_abs_entry(u);
  if (m == 0.0) throw DomainError("phase_normalize: zero matrix");
  // Row-major scan; near-equal moduli count as ties.
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      if (std::abs(u(r, c)) >= m * (1.0 - 1e-9)) {
        const cplx ph = std::polar(1.0, -std::arg(u(r, c)));
        return u * ph;
      }
    }
  }
  return u;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || !all_finite(u)) return false;
  const ComplexMatrix e =
      u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs_entry(e) <= tol;
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double max_abs_entry(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix cz() {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

ComplexMatrix haar_from_ginibre(const ComplexMatrix& g) {
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

}  // namespace dforge::linalg

namespace dforge {

Caps Caps::from_env() {
  Caps c;
  if (const char* env = std::getenv("DFORGE_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw DomainError(std::string("DFORGE_MAX_DIM: not a positive integer: ") + env);
    }
    c.max_moment_dim = static_cast<std::size_t>(v);
    c.dense_eig_dim = static_cast<std::size_t>(v);
    c.max_kron_dim = std::max<std::size_t>(c.max_kron_dim, static_cast<std::size_t>(v));
  }
  return c;
}

}  // namespace dforge
