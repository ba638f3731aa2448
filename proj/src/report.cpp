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

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <sstream>

#include "dforge/bounds.hpp"
#include "dforge/cli.hpp"
#include "dforge/ensembles.hpp"
#include "dforge/moments.hpp"
#include "dforge/sampler.hpp"
#include "dforge/universality.hpp"

namespace dforge::cli {

namespace {

using nlohmann::json;

#ifndef DFORGE_VERSION
#define DFORGE_VERSION "0.0.0"
#endif

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json complex_list(const std::vector<cplx>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write csv '" + path + "'");
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
}

std::string bits_string(std::uint64_t v, int bits) {
  std::string s;
  for (int b = 0; b < bits; ++b) s.push_back(((v >> b) & 1U) ? '1' : '0');
  return s;
}

Caps resolve_caps(const RunConfig& cfg, Caps caps) {
  if (cfg.caps.max_moment_dim) {
    caps.max_moment_dim = *cfg.caps.max_moment_dim;
    caps.dense_eig_dim = *cfg.caps.max_moment_dim;
  }
  if (cfg.caps.max_enumerated_bits) caps.max_enumerated_bits = *cfg.caps.max_enumerated_bits;
  if (cfg.caps.max_concat_entries) caps.max_concat_entries = *cfg.caps.max_concat_entries;
  return caps;
}

UnitaryEnsemble base_ensemble(const RunConfig& cfg, const Caps& caps) {
  if (cfg.gadget) {
    auto e = gadgets::enumerate_ensemble(gadgets::build_gadget(*cfg.gadget), caps.max_enumerated_bits);
    if (cfg.gadget->preset) e.label = *cfg.gadget->preset;
    return e;
  }
  if (cfg.ensemble_path) return ensembles::from_json(read_file(*cfg.ensemble_path));
  if (cfg.ensemble_inline) return ensembles::from_json(*cfg.ensemble_inline);
  throw DomainError("command requires a gadget or ensemble source");
}

UnitaryEnsemble source_ensemble(const RunConfig& cfg, const Caps& caps) {
  const auto e = base_ensemble(cfg, caps);
  return cfg.power == 1 ? e : ensembles::concat_power(e, cfg.power, caps.max_concat_entries);
}

gadgets::GadgetConfig source_gadget_config(const RunConfig& cfg) {
  if (!cfg.gadget) throw DomainError("command requires a gadget source");
  return cfg.power == 1 ? *cfg.gadget : gadgets::tile_horizontal(*cfg.gadget, cfg.power);
}

ComplexMatrix matrix_power(ComplexMatrix base, int k) {
  ComplexMatrix acc = ComplexMatrix::Identity(base.rows(), base.cols());
  while (k > 0) {
    if (k & 1) acc = (acc * base).eval();
    k >>= 1;
    if (k) base = (base * base).eval();
  }
  return acc;
}

json run_spectrum(const RunConfig& cfg, const Caps& caps, bool eta_only) {
  const auto e = source_ensemble(cfg, caps);
  moments::AnalyzeOptions o;
  o.lambda = !eta_only;
  o.frame = !eta_only;
  const auto rep = moments::analyze(e, cfg.t, caps, o);
  json r;
  r["t"] = cfg.t;
  r["dim"] = e.dim;
  r["ensemble_size"] = e.size();
  r["eta"] = rep.eta;
  r["exact_design"] = rep.exact_design;
  r["exactness_tol"] = moments::kExactTol;
  if (!eta_only) {
    r["lambda_sub"] = rep.lambda_sub;
    r["lambda_cross"] = rep.lambda_cross;
    r["lambda_method"] = rep.lambda_method;
    r["defective_warning"] = rep.defective_warning;
    r["frame_potential"] = rep.frame_potential;
    r["frame_potential_haar"] = rep.frame_potential_haar;
    r["leading_eigenvalues"] = complex_list(rep.leading);
    if (cfg.csv) {
      std::vector<std::string> rows;
      for (const auto& z : rep.leading) {
        std::ostringstream s;
        s << std::setprecision(17) << z.real() << "," << z.imag() << "," << std::abs(z);
        rows.push_back(s.str());
      }
      write_csv(*cfg.csv, "re,im,modulus", rows);
    }
  }
  return r;
}

json run_design_check(const RunConfig& cfg, const Caps& caps) {
  const auto e = base_ensemble(cfg, caps);
  const auto m = moments::moment_op(e, cfg.t, caps, true);
  const ComplexMatrix mk = matrix_power(m.matrix, cfg.power);
  const auto eps = moments::design_epsilon_from_moment(mk, e.dim, cfg.t, caps);
  const moments::HaarProjector p(e.dim, cfg.t, caps.max_moment_dim);
  const double eta = linalg::spectral_norm(mk - p.dense());
  json r;
  r["t"] = cfg.t;
  r["power"] = cfg.power;
  r["epsilon_star"] = number_or_null(eps.epsilon);
  r["support_mismatch"] = eps.support_mismatch;
  r["support_leak"] = eps.support_leak;
  r["support_rank"] = eps.support_rank;
  r["eta"] = eta;
  r["exact_design"] = eta <= moments::kExactTol;
  r["eps_d"] = cfg.eps_d;
  r["certified"] = std::isfinite(eps.epsilon) && eps.epsilon <= cfg.eps_d;
  return r;
}

json run_universality(const RunConfig& cfg, const Caps& caps) {
  const auto e = source_ensemble(cfg, caps);
  const auto rep = universality::check_universal(e, cfg.tol, caps);
  std::map<std::string, int> dets;
  for (const auto& v : rep.det_classes) ++dets[v.label()];
  return {{"verdict", rep.verdict},
          {"distinct", rep.distinct},
          {"closure_dim", rep.closure.closure_dim},
          {"traceless_dim", rep.closure.traceless_dim},
          {"ambient_dim", rep.closure.ambient_dim},
          {"closure_universal", rep.closure.universal},
          {"spectral_irrational", rep.spectral_irrational},
          {"det_irrational", rep.det_irrational},
          {"det_classes", dets},
          {"t2_radius", rep.t2_radius ? json(*rep.t2_radius) : json(nullptr)},
          {"t2_invariants", rep.t2_invariants},
          {"warnings", rep.warnings}};
}

json run_classify(const RunConfig& cfg, const Caps& caps) {
  const auto e = source_ensemble(cfg, caps);
  const auto rep = ensembles::classify_invertibility(e, cfg.tol);
  return {{"class", ensembles::to_string(rep.cls)},
          {"ratio_a", rep.ratio_a},
          {"distinct", rep.distinct},
          {"invertible_subset_indices", rep.invertible_subset_indices},
          {"tol", rep.tol}};
}

json run_bounds(const RunConfig& cfg, const Caps& caps) {
  const auto mode = bounds::parse_log_mode(cfg.log_mode);
  json inputs = {{"n", cfg.n}, {"t", cfg.t}, {"log_mode", cfg.log_mode}, {"bound", cfg.bound}};
  json flags = json::array();
  json r;
  r["k"] = nullptr;
  r["L"] = nullptr;
  r["D"] = nullptr;
  r["P_t"] = bounds::p_of_t(cfg.t, mode);
  r["one_minus_P_t"] = bounds::one_minus_p_of_t(cfg.t, mode);
  if (cfg.bound == "theorem1" || cfg.bound == "corollary2") {
    inputs["C"] = cfg.c;
    inputs["a"] = cfg.a;
    inputs["eps_prime"] = cfg.eps_prime;
    flags.push_back("C is an unproven user-supplied constant");
    if (cfg.bound == "theorem1") {
      inputs["eps_d"] = cfg.eps_d;
      const auto d = bounds::depth(cfg.n, cfg.t, cfg.c, cfg.a, cfg.eps_prime, cfg.eps_d, mode);
      r["k"] = d.k;
      r["L"] = d.L;
      r["D"] = d.depth;
      r["depth_witness"] = d.witness;
    } else {
      r["k"] = bounds::corollary2_k(cfg.n, cfg.t, cfg.c, cfg.a, cfg.eps_prime);
    }
  } else if (cfg.bound == "prop1" || cfg.bound == "conjectureA") {
    const bool conj = cfg.bound == "conjectureA";
    std::optional<double> rate = conj ? cfg.lambda : cfg.eta;
    const bool has_source = cfg.gadget || cfg.ensemble_path || cfg.ensemble_inline;
    if (!rate && has_source) {
      const auto e = source_ensemble(cfg, caps);
      rate = conj ? moments::subdominant_lambda(e, cfg.t, caps).lambda_sub : moments::tpe_eta(e, cfg.t, caps);
      inputs[conj ? "lambda_source" : "eta_source"] = "computed";
    }
    if (!rate) throw DomainError(std::string("bounds: ") + (conj ? "lambda" : "eta") + " or a source is required");
    inputs[conj ? "lambda" : "eta"] = *rate;
    inputs["eps"] = cfg.eps;
    r["k"] = conj ? bounds::conjectureA_k(*rate, cfg.n, cfg.t, cfg.eps) : bounds::prop1_k(*rate, cfg.n, cfg.t, cfg.eps);
    if (conj) {
      r["conjectural"] = true;
      flags.push_back("conjectural: eta replaced by the subdominant eigenvalue");
    }
  } else if (cfg.bound == "speedup") {
    inputs["mu"] = cfg.mu;
    inputs["delta"] = cfg.delta;
    inputs["alpha"] = cfg.alpha;
    inputs["eps_d"] = cfg.eps_d;
    const auto s = bounds::speedup_params(cfg.mu, cfg.delta, cfg.alpha, cfg.eps_d);
    r["relative_error"] = s.relative_error;
    r["fraction"] = s.fraction;
    if (s.relative_error_above_quarter) {
      flags.push_back("relative_error exceeds 1/4: the computed leading term is reported as is");
    }
  }
  if (mode == bounds::LogMode::base2) flags.push_back("P(t) exponent uses log base 2");
  r["inputs"] = inputs;
  r["flags"] = flags;
  return r;
}

json run_sample(const RunConfig& cfg, const Caps& caps) {
  const auto g = gadgets::build_gadget(source_gadget_config(cfg));
  const auto samples = sampler::sample_distribution(g, cfg.shots, *cfg.seed, caps.max_sample_rows);
  json r;
  r["shots"] = cfg.shots;
  r["measured"] = g.measured();
  r["rows"] = g.rows();
  if (g.measured() + g.rows() <= std::min(caps.max_exact_bits, 24)) {
    const auto exact = sampler::exact_distribution(g, caps.max_exact_bits);
    const auto emp = sampler::empirical(samples, g.measured(), g.rows());
    const auto dist = sampler::tv_distance(emp, exact.p);
    r["tv"] = dist.tv;
    r["l1"] = dist.l1;
    r["within_hardness_window"] = dist.l1 <= 1.0 / 22.0;
    r["note"] = "illustrative label only: l1 <= 1/22 between the empirical and exact tables";
  }
  if (cfg.csv) {
    std::vector<std::string> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples) rows.push_back(bits_string(s.y, g.measured()) + "," + bits_string(s.x, g.rows()));
    write_csv(*cfg.csv, "y_bits,x_bits", rows);
  }
  return r;
}

json run_anticoncentration(const RunConfig& cfg, const Caps& caps) {
  sampler::AnticoncentrationResult res;
  if (cfg.haar_qubits) {
    res = sampler::anticoncentration_estimate(sampler::HaarSource{*cfg.haar_qubits}, cfg.alpha, cfg.eps_d, cfg.shots,
                                              *cfg.seed);
  } else if (cfg.gadget) {
    const auto g = gadgets::build_gadget(source_gadget_config(cfg));
    res = sampler::anticoncentration_estimate(&g, cfg.alpha, cfg.eps_d, cfg.shots, *cfg.seed);
  } else {
    const auto e = source_ensemble(cfg, caps);
    res = sampler::anticoncentration_estimate(&e, cfg.alpha, cfg.eps_d, cfg.shots, *cfg.seed);
  }
  return {{"lhs", res.lhs},
          {"rhs", res.rhs},
          {"sigma", res.sigma},
          {"threshold", res.threshold},
          {"pass", res.pass},
          {"qubits", res.qubits},
          {"shots", res.shots},
          {"histogram", {{"max", res.hist_max}, {"density", res.hist_density}, {"porter_thomas", res.porter_thomas}}}};
}

json run_factorization(const RunConfig& cfg, const Caps& caps) {
  const auto e = source_ensemble(cfg, caps);
  const double res = moments::block_factorization_check(e, cfg.n, cfg.t, caps);
  return {{"n", cfg.n}, {"t", cfg.t}, {"residual", res}};
}

json dispatch(const RunConfig& cfg, const Caps& caps) {
  const std::string& c = cfg.command;
  if (c == "spectrum") return run_spectrum(cfg, caps, false);
  if (c == "eta") return run_spectrum(cfg, caps, true);
  if (c == "design-check") return run_design_check(cfg, caps);
  if (c == "universality") return run_universality(cfg, caps);
  if (c == "classify") return run_classify(cfg, caps);
  if (c == "bounds") return run_bounds(cfg, caps);
  if (c == "sample") return run_sample(cfg, caps);
  if (c == "anticoncentration") return run_anticoncentration(cfg, caps);
  if (c == "factorization-check") return run_factorization(cfg, caps);
  throw DomainError("unknown command '" + c + "'");
}

}  // namespace

RunOutcome run_report(const RunConfig& cfg, const Caps& base_caps, int threads) {
  json rep;
  rep["schema"] = kSchemaVersion;
  rep["version"] = DFORGE_VERSION;
  rep["timestamp"] = utc_now();
  rep["command"] = cfg.command;
  rep["config"] = json::parse(serialize(cfg));
  rep["threads"] = threads;
  RunOutcome out;
  auto fail = [&](const char* kind, const std::exception& e, int code) {
    rep["status"] = "error";
    rep["error"] = {{"kind", kind}, {"message", e.what()}};
    out.exit_code = code;
  };
  try {
    const Caps caps = resolve_caps(cfg, base_caps);
    rep["caps"] = {{"max_moment_dim", caps.max_moment_dim},
                   {"dense_eig_dim", caps.dense_eig_dim},
                   {"max_enumerated_bits", caps.max_enumerated_bits},
                   {"max_concat_entries", caps.max_concat_entries}};
    rep["result"] = dispatch(cfg, caps);
    rep["status"] = "ok";
  } catch (const CapacityError& e) {
    fail("capacity", e, 3);
  } catch (const DomainError& e) {
    fail("domain", e, 2);
  } catch (const NumericError& e) {
    fail("numeric", e, 4);
  } catch (const std::exception& e) {
    fail("internal", e, 1);
  }
  out.report = rep.dump(2);
  return out;
}

std::string strip_timestamp(const std::string& report) {
  json j = json::parse(report);
  j.erase("timestamp");
  return j.dump(2);
}

}  // namespace dforge::cli
