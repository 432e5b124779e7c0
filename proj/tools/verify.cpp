// Copyright 2026 The entbreak Authors
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

// verify: runs a named suite and prints its JSON report.
// Exit status 0 iff every check passes, 1 on failed checks, 2 on errors.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entbreak/errors.hpp"
#include "entbreak/suites.hpp"

namespace {

std::string flag_name(std::string name) {
  for (char& c : name)
    if (c == '_') c = '-';
  return "--tol-" + name;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace entbreak;

  CLI::App app{"Verification suites for entanglement-breaking super-activation"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_json;
  std::uint64_t seed = 1;
  bool timings = true;
  app.add_option("--out", out_json, "Write the JSON report here instead of stdout");
  app.add_option("--seed", seed, "Seed for every randomized suite")->capture_default_str();
  app.add_flag("!--no-timings", timings, "Omit the timings block from the report");

  std::map<std::string, std::optional<double>> overrides;
  for (const auto& [name, value] : Tolerances().as_map()) {
    app.add_option(flag_name(name), overrides[name], "default " + std::to_string(value))
        ->group("Tolerances");
  }
  app.add_option("--tol-obs2", overrides["obs2"], "Both AB and AC PT-minimum tolerances")
      ->group("Tolerances");

  auto* obs = app.add_subcommand("observations", "Marginal checks and BC certification on the reference state");

  auto* sup = app.add_subcommand("superactivate", "Super-activation pipeline and Kraus form");
  std::string realization = "canonical";
  sup->add_option("--realization", realization, "canonical or seed:N")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Output entanglement sweep over (z, phi)");
  int grid = 101;
  std::string csv;
  sweep->add_option("--grid", grid, "Points per axis")->capture_default_str();
  sweep->add_option("--out", csv, "CSV path")->required();

  auto* family = app.add_subcommand("family", "One-parameter family of states");
  std::vector<double> q_list{0.0, 0.25, 0.5, 0.75, 1.0};
  family->add_option("--q", q_list, "Comma-separated q values in [0,1]")->delimiter(',');

  auto* four = app.add_subcommand("fourqubit", "Four-qubit examples");
  char which = 'a';
  four->add_option("--case", which, "a or b")->required()->check(CLI::IsMember({'a', 'b'}));

  auto* all = app.add_subcommand("all", "Every suite");
  bool parallel = false;
  all->add_flag("--parallel", parallel, "Run independent suites concurrently");

  CLI11_PARSE(app, argc, argv);

  try {
    SuiteConfig config;
    const char* profile = std::getenv("ENTBREAK_TOL_PROFILE");
    config.tol = Tolerances::profile(profile ? profile : "");
    config.seed = seed;
    for (const auto& [name, value] : overrides)
      if (value) config.tol.set(name, *value);

    const auto t0 = std::chrono::steady_clock::now();
    CertReport report;
    if (*obs) {
      report = cmd_observations(config);
    } else if (*sup) {
      report = cmd_superactivate(realization, config);
    } else if (*sweep) {
      report = cmd_sweep(grid, csv, config);
    } else if (*family) {
      report = cmd_family(q_list, config);
    } else if (*four) {
      report = cmd_fourqubit(which, config);
    } else {
      report = cmd_all(config, parallel);
    }
    if (!*all)
      report.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = report.to_json(timings).dump(2) + "\n";
    if (out_json.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(out_json);
      if (!os || !(os << text)) throw Error("cannot write '" + out_json + "'");
    }
    if (!report.passed())
      std::cerr << report.suite << ": " << report.failures() << " check(s) failed\n";
    return report.passed() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return 2;
  }
}
