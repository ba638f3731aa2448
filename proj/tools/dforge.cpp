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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "dforge/cli.hpp"
#include "dforge/kernels.hpp"

namespace {

// Emits an error report for failures that happen before a config exists.
int early_error(const std::string& command, const std::string& message, const std::string& out_path) {
  nlohmann::json rep = {{"schema", dforge::cli::kSchemaVersion},
                        {"version", DFORGE_VERSION},
                        {"command", command},
                        {"status", "error"},
                        {"error", {{"kind", "config"}, {"message", message}}}};
  const std::string text = rep.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream(out_path) << text << "\n";
  }
  std::cerr << "dforge: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dforge: design and universality diagnostics for measurement gadgets"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  for (const auto& name : dforge::cli::commands()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " command");
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "write the JSON report here instead of stdout");
    sub->add_option("--seed", seed, "RNG seed; overrides the config");
    sub->add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream in(config_path);
  if (!in) return early_error(command, "cannot read config '" + config_path + "'", out_path);
  std::ostringstream text;
  text << in.rdbuf();

  dforge::cli::RunConfig cfg;
  try {
    nlohmann::json j = nlohmann::json::parse(text.str());
    if (seed) j["seed"] = *seed;
    const auto base = std::filesystem::absolute(config_path).parent_path().string();
    cfg = dforge::cli::parse_config(j.dump(), command, base);
  } catch (const std::exception& e) {
    return early_error(command, e.what(), out_path);
  }

  if (threads > 0) dforge::kernels::set_threads(threads);
  const auto outcome = dforge::cli::run_report(cfg, dforge::Caps::from_env(), dforge::kernels::max_threads());
  if (out_path.empty()) {
    std::cout << outcome.report << "\n";
  } else {
    std::ofstream(out_path) << outcome.report << "\n";
  }
  return outcome.exit_code;
}
