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

#include <string>

namespace dforge::bounds {

// Reading of the inner logarithm in the t^{3.1/log 2} exponent of P(t).
enum class LogMode { natural, base2 };

LogMode parse_log_mode(const std::string& s);
std::string to_string(LogMode m);

// Bourgain-Gamburd-type constant; not known, user supplied.
inline constexpr double kDefaultC = 0.9;

double p_of_t(int t, LogMode mode = LogMode::natural);
// 1 - P(t), evaluated without cancellation.
double one_minus_p_of_t(int t, LogMode mode = LogMode::natural);

long long theorem1_k(int n, int t, double c, double a, double eps_prime);
long long theorem1_L(int n, int t, double eps_prime, double eps_d, LogMode mode = LogMode::natural);

struct DepthResult {
  long long k = 0;
  long long L = 0;
  long long depth = 0;  // 2 k L
  double witness = 0.0;  // depth / (n^3 t^12)
};

int min_qubits(int t);  // floor(2.5 log2(4t))

DepthResult depth(int n, int t, double c, double a, double eps_prime, double eps_d,
                  LogMode mode = LogMode::natural);

long long corollary2_k(int n, int t, double c, double a, double eps_prime);
long long prop1_k(double eta, int n, int t, double eps);
long long conjectureA_k(double lambda, int n, int t, double eps);

struct SpeedupParams {
  double relative_error = 0.0;  // mu / (delta alpha (1 - eps_d))
  double fraction = 0.0;        // (1-delta)(1-alpha)^2(1-eps_d) / (2(1+eps_d))
  bool relative_error_above_quarter = false;
};

SpeedupParams speedup_params(double mu, double delta, double alpha, double eps_d);

}  // namespace dforge::bounds
