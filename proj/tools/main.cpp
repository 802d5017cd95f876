// Copyright the qdelsim developers
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "qdelsim/report.hpp"
#include "qdelsim/scenario.hpp"
#include "qdelsim/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConsistency = 2;

struct Overrides {
  std::string output;
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tolerance = 0.0;
  bool tolerance_given = false;
  int grid_points = 0;
  bool grid_points_given = false;
};

void apply_overrides(qdelsim::ScenarioConfig& config, const Overrides& o) {
  if (!o.output.empty()) config.output_path = o.output;
  if (o.seed_given) config.seed = o.seed;
  if (o.tolerance_given) {
    if (o.tolerance <= 0.0) {
      throw qdelsim::ConfigError(0, "tolerance", "must be positive");
    }
    config.tolerance = o.tolerance;
  }
  if (o.grid_points_given) {
    if (o.grid_points < 1) {
      throw qdelsim::ConfigError(0, "grid-points", "must be at least 1");
    }
    config.bases = qdelsim::uniform_theta_grid(o.grid_points);
  }
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  out.flush();
  return static_cast<bool>(out);
}

constexpr int kDefaultSweepGridPoints = 64;

int run_scenario(const std::string& config_path, const Overrides& overrides,
                 bool as_sweep) {
  // sweep falls back to a uniform theta grid; run requires explicit bases
  qdelsim::ScenarioConfig config = qdelsim::parse_scenario_file(
      config_path, as_sweep ? std::optional<int>(kDefaultSweepGridPoints)
                            : std::nullopt);
  apply_overrides(config, overrides);
  if (config.output_path.empty()) {
    config.output_path = as_sweep ? "sweep.csv" : "run_report.json";
  }

  const qdelsim::RunReport report =
      qdelsim::execute_scenario(config, as_sweep ? "sweep" : "run");
  const std::string rendered = as_sweep
                                   ? qdelsim::render_sweep_csv(report)
                                   : qdelsim::render_run_report_json(report);
  if (!write_file(config.output_path, rendered)) {
    std::cerr << "error: cannot write output file '" << config.output_path
              << "'\n";
    return kExitUsage;
  }

  std::cout << "machine: " << to_string(config.kind) << "\n"
            << "pairs:   " << report.pairs.size() << "\n"
            << "max trace distance: "
            << qdelsim::format_double(report.max_distance) << " at grid index "
            << report.argmax_index << "\n"
            << "verdict: " << to_string(report.overall_verdict) << "\n"
            << "wrote " << config.output_path << "\n";
  return kExitOk;
}

int run_verify(const std::string& fault_name) {
  qdelsim::FaultInjection fault = qdelsim::FaultInjection::kNone;
  if (fault_name == "partial-trace") {
    fault = qdelsim::FaultInjection::kPartialTrace;
  } else if (!fault_name.empty()) {
    std::cerr << "error: unknown fault '" << fault_name << "'\n";
    return kExitUsage;
  }

  const auto results = qdelsim::run_verification_suite(fault);
  bool all_passed = true;
  std::string first_failure;
  for (const auto& check : results) {
    std::printf("%s %-26s %s %-12s (%s %s)\n",
                check.passed ? "PASS" : "FAIL", check.name.c_str(),
                check.require_at_least ? "value" : "residual",
                qdelsim::format_double(check.residual).c_str(),
                check.require_at_least ? "required >=" : "tolerance",
                qdelsim::format_double(check.threshold).c_str());
    if (!check.passed && all_passed) {
      all_passed = false;
      first_failure = check.name + " (residual " +
                      qdelsim::format_double(check.residual) + ")";
    }
  }
  if (!all_passed) {
    std::cout << "verification failed: " << first_failure << "\n";
    return kExitConsistency;
  }
  std::cout << "all checks passed\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qdelsim: reduced-state signalling analysis of branch-defined qubit "
      "machines (delete/erase/clone) against linear-channel controls"};
  app.require_subcommand(1);

  std::string run_config, sweep_config;
  Overrides run_overrides, sweep_overrides;
  std::string fault_name;

  auto add_common = [](CLI::App* cmd, Overrides& o) {
    cmd->add_option("--output", o.output, "Output file path");
    cmd->add_option("--seed", o.seed, "Random seed override")
        ->each([&o](const std::string&) { o.seed_given = true; });
    cmd->add_option("--tolerance", o.tolerance,
                    "Signalling verdict tolerance override")
        ->each([&o](const std::string&) { o.tolerance_given = true; });
    cmd->add_option("--grid-points", o.grid_points,
                    "Replace the basis grid with N uniform theta points")
        ->each([&o](const std::string&) { o.grid_points_given = true; });
  };

  CLI::App* run_cmd = app.add_subcommand(
      "run", "Run a scenario and write a JSON report");
  run_cmd->add_option("config", run_config, "Scenario config file")
      ->required();
  add_common(run_cmd, run_overrides);

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Sweep the basis grid and write a CSV table");
  sweep_cmd->add_option("config", sweep_config, "Scenario config file")
      ->required();
  add_common(sweep_cmd, sweep_overrides);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the full consistency suite");
  verify_cmd->add_option("--inject-fault", fault_name, "")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      return run_scenario(run_config, run_overrides, /*as_sweep=*/false);
    }
    if (sweep_cmd->parsed()) {
      return run_scenario(sweep_config, sweep_overrides, /*as_sweep=*/true);
    }
    return run_verify(fault_name);
  } catch (const qdelsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  }
}
