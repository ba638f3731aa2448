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

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dforge/ensemble.hpp"
#include "dforge/errors.hpp"
#include "dforge/kernels.hpp"
#include "dforge/linalg.hpp"

namespace dforge::moments {

// Vectorization is row-major: x[a*D + b] = X[a, b], so that
// (A (x) B) vec(X) = vec(A X B^T).

enum class Method { ensemble_sum, haar_projector, haar_montecarlo };
std::string to_string(Method m);

class HaarProjector {
 public:
  HaarProjector(int d, int t, std::size_t max_dim = 4096);

  int d() const { return d_; }
  int t() const { return t_; }
  Eigen::Index base_dim() const { return base_; }        // d^t
  Eigen::Index dim() const { return base_ * base_; }     // d^{2t}
  int rank() const { return rank_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const std::vector<std::vector<int>>& permutations() const { return perms_; }

  // Image of basis index b under permutation p of tensor factors.
  Eigen::Index permute(const std::vector<int>& p, Eigen::Index b) const;

  void apply(const ComplexVector& x, ComplexVector& y) const;
  ComplexMatrix dense() const;

 private:
  int d_;
  int t_;
  Eigen::Index base_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<Eigen::Index>> images_;  // images_[p][b]
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd pinv_;
  int rank_ = 0;
};

int cycle_count(const std::vector<int>& p);

struct MomentOperator {
  int t = 1;
  int d = 1;
  Method method = Method::ensemble_sum;
  std::int64_t samples = 0;  // Monte-Carlo only
  std::string source;
  ComplexMatrix matrix;              // empty when matrix-free
  std::vector<kernels::Term> terms;  // ensemble-sum operators

  Eigen::Index dim() const;
  bool materialized() const { return matrix.size() > 0; }
  void apply(const ComplexVector& x, ComplexVector& y) const;
  void apply_adjoint(const ComplexVector& x, ComplexVector& y) const;
  const ComplexMatrix& dense() const;
};

MomentOperator moment_op(const UnitaryEnsemble& e, int t, const Caps& caps = {},
                         bool materialize = true);

MomentOperator haar_moment(int d, int t, Method method, const Caps& caps = {},
                           std::int64_t samples = 100000, std::uint64_t seed = 1);

// Largest singular value of M_t[E] - M_t[Haar].
double tpe_eta(const UnitaryEnsemble& e, int t, const Caps& caps = {});
double tpe_eta(const MomentOperator& m, const HaarProjector& p, const Caps& caps = {});

struct LambdaResult {
  double lambda_sub = 0.0;    // reported |lambda|
  double by_overlap = 0.0;    // eigenvectors with Haar component <= 1e-6
  double cross = 0.0;         // spectral radius of M - M_H
  bool defective_warning = false;
  double eigvec_condition = 0.0;
  std::string method;
  std::vector<cplx> leading;  // leading eigenvalues of M - M_H
};

struct LambdaOptions {
  int nev = 6;
  double tol = 1e-12;
};

LambdaResult subdominant_lambda(const UnitaryEnsemble& e, int t, const Caps& caps = {},
                                const LambdaOptions& opts = {});
LambdaResult subdominant_lambda(const MomentOperator& m, const HaarProjector& p,
                                const Caps& caps = {}, const LambdaOptions& opts = {});

double frame_potential(const UnitaryEnsemble& e, int t);
double haar_frame_potential(int d, int t);

struct EpsilonResult {
  double epsilon = std::numeric_limits<double>::infinity();
  bool support_mismatch = false;
  double support_leak = 0.0;
  int support_rank = 0;
  double g_min = 0.0;
  double g_max = 0.0;
};

// Choi matrix of rho -> Sum p V rho V^H realigned from the moment matrix:
// J[(a,c),(b,d)] = M[(a,b),(c,d)].
ComplexMatrix choi_from_moment(const ComplexMatrix& m, Eigen::Index base_dim);

EpsilonResult design_epsilon(const UnitaryEnsemble& e, int t, const Caps& caps = {});
EpsilonResult design_epsilon_from_moment(const ComplexMatrix& m, int d, int t,
                                         const Caps& caps = {});

// Spectral-norm residual between both sides of the brickwork factorization.
double block_factorization_check(const UnitaryEnsemble& e, int n, int t, const Caps& caps = {});

struct DecayRow {
  int k = 0;
  double norm = 0.0;
  double eta_pow = 0.0;
  bool ok = false;
};

std::vector<DecayRow> prop1_decay_check(const UnitaryEnsemble& e, int t, int k_max,
                                        const Caps& caps = {});

inline constexpr double kExactTol = 1e-8;

struct DesignReport {
  double eta = 0.0;
  double lambda_sub = 0.0;
  double lambda_cross = 0.0;
  bool defective_warning = false;
  double frame_potential = 0.0;
  double frame_potential_haar = 0.0;
  std::optional<double> epsilon_star;
  bool epsilon_support_mismatch = false;
  bool exact_design = false;
  std::string lambda_method;
  std::vector<cplx> leading;
};

struct AnalyzeOptions {
  bool eta = true;
  bool lambda = true;
  bool frame = true;
  bool epsilon = false;
};

DesignReport analyze(const UnitaryEnsemble& e, int t, const Caps& caps = {},
                     const AnalyzeOptions& opts = {});

}  // namespace dforge::moments
