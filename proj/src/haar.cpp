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
#include <numeric>

#include "dforge/moments.hpp"

namespace dforge::moments {

int cycle_count(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true;
  }
  return cycles;
}

HaarProjector::HaarProjector(int d, int t, std::size_t max_dim) : d_(d), t_(t) {
  if (d < 1) throw DomainError("haar: d must be >= 1");
  if (t < 1) throw DomainError("haar: t must be >= 1");
  if (t > 8) throw CapacityError("haar: t above 8");
  const double full = std::pow(static_cast<double>(d), 2.0 * t);
  if (full > static_cast<double>(max_dim)) {
    throw CapacityError("haar: dimension d^{2t} = " + std::to_string(static_cast<long long>(full)) +
                        " above cap " + std::to_string(max_dim));
  }
  base_ = static_cast<Eigen::Index>(std::llround(std::pow(d, t)));
  std::vector<int> p(static_cast<std::size_t>(t));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  images_.resize(perms_.size());
  for (std::size_t k = 0; k < perms_.size(); ++k) {
    images_[k].resize(static_cast<std::size_t>(base_));
    for (Eigen::Index b = 0; b < base_; ++b) images_[k][static_cast<std::size_t>(b)] = permute(perms_[k], b);
  }
  const auto np = static_cast<Eigen::Index>(perms_.size());
  gram_.resize(np, np);
  for (Eigen::Index i = 0; i < np; ++i) {
    for (Eigen::Index j = 0; j < np; ++j) {
      double count = 0.0;
      const auto& a = images_[static_cast<std::size_t>(i)];
      const auto& b = images_[static_cast<std::size_t>(j)];
      for (std::size_t x = 0; x < a.size(); ++x) count += (a[x] == b[x]) ? 1.0 : 0.0;
      gram_(i, j) = count;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
  const Eigen::VectorXd& w = es.eigenvalues();
  const double cutoff = 1e-10 * w.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) > cutoff) {
      inv(i) = 1.0 / w(i);
      ++rank_;
    }
  }
  pinv_ = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::Index HaarProjector::permute(const std::vector<int>& p, Eigen::Index b) const {
  std::vector<Eigen::Index> digits(static_cast<std::size_t>(t_));
  for (int j = t_ - 1; j >= 0; --j) {
    digits[static_cast<std::size_t>(j)] = b % d_;
    b /= d_;
  }
  Eigen::Index out = 0;
  for (int j = 0; j < t_; ++j) out = out * d_ + digits[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])];
  return out;
}

void HaarProjector::apply(const ComplexVector& x, ComplexVector& y) const {
  const auto np = static_cast<Eigen::Index>(perms_.size());
  ComplexVector overlaps(np);
  for (Eigen::Index k = 0; k < np; ++k) {
    cplx s = 0.0;
    const auto& img = images_[static_cast<std::size_t>(k)];
    for (Eigen::Index b = 0; b < base_; ++b) s += x(img[static_cast<std::size_t>(b)] * base_ + b);
    overlaps(k) = s;
  }
  const ComplexVector c = pinv_.cast<cplx>() * overlaps;
  y = ComplexVector::Zero(dim());
  for (Eigen::Index k = 0; k < np; ++k) {
    const auto& img = images_[static_cast<std::size_t>(k)];
    for (Eigen::Index b = 0; b < base_; ++b) y(img[static_cast<std::size_t>(b)] * base_ + b) += c(k);
  }
}

ComplexMatrix HaarProjector::dense() const {
  ComplexMatrix p = ComplexMatrix::Zero(dim(), dim());
  const auto np = perms_.size();
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      const double g = pinv_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (g == 0.0) continue;
      for (Eigen::Index b = 0; b < base_; ++b) {
        const Eigen::Index row = images_[i][static_cast<std::size_t>(b)] * base_ + b;
        for (Eigen::Index b2 = 0; b2 < base_; ++b2) {
          p(row, images_[j][static_cast<std::size_t>(b2)] * base_ + b2) += g;
        }
      }
    }
  }
  return p;
}

MomentOperator haar_moment(int d, int t, Method method, const Caps& caps,
                           std::int64_t samples, std::uint64_t seed) {
  MomentOperator m;
  m.d = d;
  m.t = t;
  m.method = method;
  m.source = "haar";
  if (method == Method::haar_projector) {
    m.matrix = HaarProjector(d, t, caps.max_moment_dim).dense();
  } else if (method == Method::haar_montecarlo) {
    const double full = std::pow(static_cast<double>(d), 2.0 * t);
    if (full > static_cast<double>(caps.max_moment_dim)) {
      throw CapacityError("haar_moment: dimension above cap");
    }
    m.samples = samples;
    m.matrix = kernels::haar_montecarlo(d, t, samples, seed);
  } else {
    throw DomainError("haar_moment: method must be a Haar method");
  }
  return m;
}

}  // namespace dforge::moments
