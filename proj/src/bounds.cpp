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

#include "dforge/bounds.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "dforge/errors.hpp"

namespace dforge::bounds {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("bounds: " + what);
}

void require_open_unit(double x, const char* name) {
  require(std::isfinite(x) && x > 0.0 && x < 1.0, std::string(name) + " must lie in (0,1)");
}

void require_nt(int n, int t) {
  require(n >= 1, "n must be >= 1");
  require(t >= 1, "t must be >= 1");
}

int floor_log2(long long v) { return static_cast<int>(std::bit_width(static_cast<unsigned long long>(v))) - 1; }

long long ceil_checked(double x) {
  require(std::isfinite(x) && x < 9.0e18, "bound overflows");
  return static_cast<long long>(std::ceil(x));
}

// 1/log2(1/eta) with eta = 1 + (C-1)a.
double inverse_rate(double c, double a) {
  require(std::isfinite(c) && c > 0.0 && c < 1.0, "C must lie in (0,1); C >= 1 gives eta = 1");
  require(std::isfinite(a) && a > 0.0 && a <= 1.0, "a must lie in (0,1]");
  const double x = (c - 1.0) * a;  // eta = 1 + x, x in (-1, 0)
  return std::numbers::ln2 / -std::log1p(x);
}

}  // namespace

LogMode parse_log_mode(const std::string& s) {
  if (s == "natural") return LogMode::natural;
  if (s == "base2") return LogMode::base2;
  throw DomainError("bounds: log_mode must be 'natural' or 'base2'");
}

std::string to_string(LogMode m) { return m == LogMode::natural ? "natural" : "base2"; }

double one_minus_p_of_t(int t, LogMode mode) {
  require(t >= 1, "t must be >= 1");
  const double exponent = mode == LogMode::natural ? 3.1 / std::numbers::ln2 : 3.1;
  const double fl = floor_log2(4LL * t);
  const double big = 425.0 * fl * fl * std::pow(t, 5.0) * std::pow(t, exponent);
  const double u = 0.5 / big;
  return -std::expm1(-std::log1p(u) / 3.0);
}

double p_of_t(int t, LogMode mode) { return 1.0 - one_minus_p_of_t(t, mode); }

long long theorem1_k(int n, int t, double c, double a, double eps_prime) {
  require_nt(n, t);
  require_open_unit(eps_prime, "eps_prime");
  const double poly = 10.0 * t + static_cast<double>(n) * n * t - static_cast<double>(n) * t + n +
                      std::log2(1.0 / eps_prime);
  return ceil_checked(inverse_rate(c, a) * poly);
}

long long theorem1_L(int n, int t, double eps_prime, double eps_d, LogMode mode) {
  require_nt(n, t);
  require_open_unit(eps_d, "eps_d");
  require(std::isfinite(eps_prime) && eps_prime > 0.0, "eps_prime must be > 0");
  const double x = eps_prime - one_minus_p_of_t(t, mode);  // eps' + P(t) = 1 + x
  require(x < 0.0, "eps_prime must be below 1 - P(t)");
  const double rate = -std::log1p(x) / std::numbers::ln2;
  return ceil_checked((4.0 * n * t + std::log2(1.0 / eps_d)) / rate);
}

int min_qubits(int t) {
  require(t >= 1, "t must be >= 1");
  return static_cast<int>(std::floor(2.5 * std::log2(4.0 * t)));
}

DepthResult depth(int n, int t, double c, double a, double eps_prime, double eps_d, LogMode mode) {
  require_nt(n, t);
  require(n >= min_qubits(t), "n must be >= floor(2.5 log2(4t)) = " + std::to_string(min_qubits(t)));
  DepthResult r;
  r.k = theorem1_k(n, t, c, a, eps_prime);
  r.L = theorem1_L(n, t, eps_prime, eps_d, mode);
  const double dd = 2.0 * static_cast<double>(r.k) * static_cast<double>(r.L);
  require(dd < 9.0e18, "depth overflows");
  r.depth = 2 * r.k * r.L;
  r.witness = dd / (std::pow(n, 3.0) * std::pow(t, 12.0));
  return r;
}

long long corollary2_k(int n, int t, double c, double a, double eps_prime) {
  require_nt(n, t);
  require_open_unit(eps_prime, "eps_prime");
  const double nn = n;
  const double poly = 8.0 * t + (nn * t + 2.0 * t + nn * nn * t - 2.0 * nn * t + nn) +
                      std::log2(1.0 / eps_prime);
  return ceil_checked(inverse_rate(c, a) * poly);
}

long long prop1_k(double eta, int n, int t, double eps) {
  require_nt(n, t);
  require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta must lie in (0,1)");
  require_open_unit(eps, "eps");
  return ceil_checked((4.0 * n * t + std::log2(1.0 / eps)) / std::log2(1.0 / eta));
}

long long conjectureA_k(double lambda, int n, int t, double eps) {
  require(std::isfinite(lambda) && lambda > 0.0 && lambda < 1.0, "lambda must lie in (0,1)");
  return prop1_k(lambda, n, t, eps);
}

SpeedupParams speedup_params(double mu, double delta, double alpha, double eps_d) {
  require_open_unit(mu, "mu");
  require_open_unit(delta, "delta");
  require_open_unit(alpha, "alpha");
  require_open_unit(eps_d, "eps_d");
  SpeedupParams s;
  s.relative_error = mu / (delta * alpha * (1.0 - eps_d));
  s.fraction = (1.0 - delta) * (1.0 - alpha) * (1.0 - alpha) * (1.0 - eps_d) / (2.0 * (1.0 + eps_d));
  s.relative_error_above_quarter = s.relative_error > 0.25;
  return s;
}

}  // namespace dforge::bounds
