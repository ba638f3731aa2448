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
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "dforge/cli.hpp"

namespace dforge::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(path, "must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) bad(path + "." + key, "unknown key");
  }
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) bad(path, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(path, "must be finite");
  return x;
}

long long get_integer(const json& v, const std::string& path, long long lo, long long hi) {
  if (!v.is_number_integer() && !(v.is_number() && v.get<double>() == std::floor(v.get<double>()))) {
    bad(path, "must be an integer");
  }
  const long long x = v.is_number_unsigned() ? static_cast<long long>(v.get<unsigned long long>())
                                             : v.get<long long>();
  if (x < lo || x > hi) {
    bad(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return x;
}

double get_angle(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return gadgets::parse_angle(v.get<std::string>());
    } catch (const DomainError& e) {
      bad(path, e.what());
    }
  }
  return get_number(v, path);
}

double get_open_unit(const json& v, const std::string& path) {
  const double x = get_number(v, path);
  if (!(x > 0.0 && x < 1.0)) bad(path, "must lie in (0,1)");
  return x;
}

std::vector<double> get_params(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "must be a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_angle(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

gadgets::GadgetConfig parse_gadget(const json& g, const std::string& path) {
  check_keys(g, path, {"rows", "columns", "angles", "vertical_edges", "preset", "params", "seed"});
  if (g.contains("preset")) {
    for (const char* k : {"rows", "columns", "angles", "vertical_edges"}) {
      if (g.contains(k)) bad(path + "." + k, "not allowed together with preset");
    }
    if (!g["preset"].is_string()) bad(path + ".preset", "must be a string");
    const std::string name = g["preset"].get<std::string>();
    const std::vector<double> params = g.contains("params") ? get_params(g["params"], path + ".params")
                                                            : std::vector<double>{};
    try {
      gadgets::GadgetConfig out;
      if (g.contains("seed")) {
        const json& s = g["seed"];
        check_keys(s, path + ".seed", {"preset", "params"});
        if (!s.contains("preset") || !s["preset"].is_string()) bad(path + ".seed.preset", "required string");
        const std::string sname = s["preset"].get<std::string>();
        const std::vector<double> sparams =
            s.contains("params") ? get_params(s["params"], path + ".seed.params") : std::vector<double>{};
        out = gadgets::preset(name, params, gadgets::preset(sname, sparams));
        out.seed_preset = sname;
        out.seed_params = sparams;
      } else {
        out = gadgets::preset(name, params);
      }
      gadgets::build_gadget(out);
      return out;
    } catch (const ConfigError&) {
      throw;
    } catch (const DomainError& e) {
      bad(path, e.what());
    }
  }
  if (g.contains("params")) bad(path + ".params", "only allowed with preset");
  if (g.contains("seed")) bad(path + ".seed", "only allowed with preset");
  for (const char* k : {"rows", "columns", "angles"}) {
    if (!g.contains(k)) bad(path + "." + k, "required");
  }
  gadgets::GadgetConfig c;
  c.rows = static_cast<int>(get_integer(g["rows"], path + ".rows", 1, 30));
  c.columns = static_cast<int>(get_integer(g["columns"], path + ".columns", 1, 100000));
  const json& angles = g["angles"];
  if (!angles.is_array()) bad(path + ".angles", "must be a list of lists");
  for (std::size_t r = 0; r < angles.size(); ++r) {
    const std::string rp = path + ".angles[" + std::to_string(r) + "]";
    if (!angles[r].is_array()) bad(rp, "must be a list");
    std::vector<double> row;
    for (std::size_t j = 0; j < angles[r].size(); ++j) {
      row.push_back(get_angle(angles[r][j], rp + "[" + std::to_string(j) + "]"));
    }
    c.angles.push_back(std::move(row));
  }
  if (g.contains("vertical_edges")) {
    const json& edges = g["vertical_edges"];
    if (!edges.is_array()) bad(path + ".vertical_edges", "must be a list of [column,row]");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string ep = path + ".vertical_edges[" + std::to_string(i) + "]";
      if (!edges[i].is_array() || edges[i].size() != 2) bad(ep, "must be [column,row]");
      c.vertical_edges.push_back({static_cast<int>(get_integer(edges[i][0], ep + "[0]", 1, 100000)),
                                  static_cast<int>(get_integer(edges[i][1], ep + "[1]", 1, 100000))});
    }
  }
  try {
    gadgets::build_gadget(c);
  } catch (const DomainError& e) {
    bad(path, e.what());
  }
  return c;
}

json gadget_to_json(const gadgets::GadgetConfig& g) {
  json out;
  if (g.preset) {
    out["preset"] = *g.preset;
    out["params"] = g.params;
    if (g.seed_preset) out["seed"] = {{"preset", *g.seed_preset}, {"params", g.seed_params}};
    return out;
  }
  out["rows"] = g.rows;
  out["columns"] = g.columns;
  out["angles"] = g.angles;
  json edges = json::array();
  for (const auto& e : g.vertical_edges) edges.push_back({e[0], e[1]});
  out["vertical_edges"] = edges;
  return out;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"spectrum",     "eta",    "design-check",
                                                 "universality", "classify", "bounds",
                                                 "sample",       "anticoncentration",
                                                 "factorization-check"};
  return names;
}

bool is_sampling_command(const std::string& command) {
  return command == "sample" || command == "anticoncentration";
}

RunConfig parse_config(const std::string& text, const std::string& command, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"command", "gadget", "ensemble", "haar_qubits", "power", "t", "alpha", "eps_d", "shots", "seed",
              "tol", "k_max", "bound", "n", "C", "a", "eps_prime", "eps", "eta", "lambda", "mu", "delta",
              "log_mode", "caps", "csv"});
  RunConfig c;
  if (j.contains("command")) {
    if (!j["command"].is_string()) bad("config.command", "must be a string");
    c.command = j["command"].get<std::string>();
    if (!command.empty() && command != c.command) {
      bad("config.command", "'" + c.command + "' conflicts with requested command '" + command + "'");
    }
  } else {
    c.command = command;
  }
  if (c.command.empty()) bad("config.command", "required");
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end()) {
    bad("config.command", "unknown command '" + c.command + "'");
  }

  int sources = 0;
  if (j.contains("gadget")) {
    c.gadget = parse_gadget(j["gadget"], "config.gadget");
    ++sources;
  }
  if (j.contains("ensemble")) {
    const json& e = j["ensemble"];
    if (e.is_string()) {
      std::string path = e.get<std::string>();
      if (!base_dir.empty() && !path.empty() && path.front() != '/') path = base_dir + "/" + path;
      c.ensemble_path = path;
    } else if (e.is_object()) {
      c.ensemble_inline = e.dump();
    } else {
      bad("config.ensemble", "must be a file path or an ensemble object");
    }
    ++sources;
  }
  if (j.contains("haar_qubits")) {
    c.haar_qubits = static_cast<int>(get_integer(j["haar_qubits"], "config.haar_qubits", 1, 12));
    ++sources;
  }
  if (sources > 1) bad("config", "exactly one of gadget, ensemble, haar_qubits may be given");
  if (sources == 0 && c.command != "bounds") bad("config", "a source (gadget, ensemble or haar_qubits) is required");
  if (c.haar_qubits && c.command != "anticoncentration") {
    bad("config.haar_qubits", "only valid for anticoncentration");
  }
  if (c.command == "sample" && !c.gadget) bad("config.gadget", "sample requires a gadget source");

  if (j.contains("power")) c.power = static_cast<int>(get_integer(j["power"], "config.power", 1, 100000));
  if (j.contains("t")) c.t = static_cast<int>(get_integer(j["t"], "config.t", 1, 8));
  if (j.contains("alpha")) c.alpha = get_open_unit(j["alpha"], "config.alpha");
  if (j.contains("eps_d")) c.eps_d = get_open_unit(j["eps_d"], "config.eps_d");
  if (j.contains("shots")) c.shots = get_integer(j["shots"], "config.shots", 1, 1000000000LL);
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0)) {
      bad("config.seed", "must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("tol")) {
    c.tol = get_number(j["tol"], "config.tol");
    if (!(c.tol > 0.0 && c.tol < 1.0)) bad("config.tol", "must lie in (0,1)");
  }
  if (j.contains("k_max")) c.k_max = static_cast<int>(get_integer(j["k_max"], "config.k_max", 1, 1000));
  if (j.contains("bound")) {
    if (!j["bound"].is_string()) bad("config.bound", "must be a string");
    c.bound = j["bound"].get<std::string>();
    static const std::set<std::string> kinds = {"theorem1", "corollary2", "prop1", "conjectureA", "speedup", "p_of_t"};
    if (!kinds.count(c.bound)) bad("config.bound", "unknown bound '" + c.bound + "'");
  }
  if (j.contains("n")) c.n = static_cast<int>(get_integer(j["n"], "config.n", 1, 100000));
  if (j.contains("C")) c.c = get_number(j["C"], "config.C");
  if (j.contains("a")) c.a = get_number(j["a"], "config.a");
  if (j.contains("eps_prime")) c.eps_prime = get_number(j["eps_prime"], "config.eps_prime");
  if (j.contains("eps")) c.eps = get_number(j["eps"], "config.eps");
  if (j.contains("eta")) c.eta = get_number(j["eta"], "config.eta");
  if (j.contains("lambda")) c.lambda = get_number(j["lambda"], "config.lambda");
  if (j.contains("mu")) c.mu = get_number(j["mu"], "config.mu");
  if (j.contains("delta")) c.delta = get_number(j["delta"], "config.delta");
  if (j.contains("log_mode")) {
    if (!j["log_mode"].is_string()) bad("config.log_mode", "must be a string");
    c.log_mode = j["log_mode"].get<std::string>();
    if (c.log_mode != "natural" && c.log_mode != "base2") bad("config.log_mode", "must be natural or base2");
  }
  if (j.contains("caps")) {
    const json& k = j["caps"];
    check_keys(k, "config.caps", {"max_moment_dim", "max_enumerated_bits", "max_concat_entries"});
    if (k.contains("max_moment_dim")) {
      c.caps.max_moment_dim = static_cast<std::size_t>(get_integer(k["max_moment_dim"], "config.caps.max_moment_dim", 1, 1LL << 16));
    }
    if (k.contains("max_enumerated_bits")) {
      c.caps.max_enumerated_bits = static_cast<int>(get_integer(k["max_enumerated_bits"], "config.caps.max_enumerated_bits", 1, 30));
    }
    if (k.contains("max_concat_entries")) {
      c.caps.max_concat_entries = static_cast<std::size_t>(get_integer(k["max_concat_entries"], "config.caps.max_concat_entries", 1, 1LL << 32));
    }
  }
  if (j.contains("csv")) {
    if (!j["csv"].is_string()) bad("config.csv", "must be a path string");
    c.csv = j["csv"].get<std::string>();
  }
  if (is_sampling_command(c.command) && !c.seed) {
    bad("config.seed", "required for '" + c.command + "' (no implicit randomness)");
  }
  return c;
}

std::string serialize(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.gadget) j["gadget"] = gadget_to_json(*c.gadget);
  if (c.ensemble_path) j["ensemble"] = *c.ensemble_path;
  if (c.ensemble_inline) j["ensemble"] = json::parse(*c.ensemble_inline);
  if (c.haar_qubits) j["haar_qubits"] = *c.haar_qubits;
  j["power"] = c.power;
  j["t"] = c.t;
  j["alpha"] = c.alpha;
  j["eps_d"] = c.eps_d;
  j["shots"] = c.shots;
  if (c.seed) j["seed"] = *c.seed;
  j["tol"] = c.tol;
  j["k_max"] = c.k_max;
  j["bound"] = c.bound;
  j["n"] = c.n;
  j["C"] = c.c;
  j["a"] = c.a;
  j["eps_prime"] = c.eps_prime;
  j["eps"] = c.eps;
  if (c.eta) j["eta"] = *c.eta;
  if (c.lambda) j["lambda"] = *c.lambda;
  j["mu"] = c.mu;
  j["delta"] = c.delta;
  j["log_mode"] = c.log_mode;
  json caps = json::object();
  if (c.caps.max_moment_dim) caps["max_moment_dim"] = *c.caps.max_moment_dim;
  if (c.caps.max_enumerated_bits) caps["max_enumerated_bits"] = *c.caps.max_enumerated_bits;
  if (c.caps.max_concat_entries) caps["max_concat_entries"] = *c.caps.max_concat_entries;
  if (!caps.empty()) j["caps"] = caps;
  if (c.csv) j["csv"] = *c.csv;
  return j.dump(2);
}

}  // namespace dforge::cli
