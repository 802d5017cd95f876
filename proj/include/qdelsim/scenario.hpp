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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdelsim/machines.hpp"
#include "qdelsim/resources.hpp"

namespace qdelsim {

/// Configuration / parse failure with the offending line and field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& message);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class ScenarioMachineKind { kDelete, kErase, kClone, kCustom, kCptp };
std::string to_string(ScenarioMachineKind kind);

/// A fully resolved scenario: machine choice plus parameters, the basis
/// grid, the reference basis, tolerance, seed and output path. Produced
/// from a flat key-value file with dotted keys, e.g.
///
///   machine.kind = delete
///   basis.grid   = 0, pi/4, pi/2
///   tolerance    = 1e-10
struct ScenarioConfig {
  ScenarioMachineKind kind = ScenarioMachineKind::kDelete;
  Eigen::Vector2cd sigma = Eigen::Vector2cd(1.0, 0.0);
  Eigen::Vector2cd ancilla = Eigen::Vector2cd(1.0, 0.0);
  AncillaRule ancilla_rule;
  OffdiagRule offdiag_rule;
  int num_kraus = 4;
  std::vector<QubitBasis> bases;
  QubitBasis reference{0.0, 0.0};
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  std::string output_path;
};

/// When `default_grid_points` is set, a config with no basis.grid and no
/// basis.grid_points key falls back to that many uniform theta points;
/// otherwise a missing grid is a ConfigError.
ScenarioConfig parse_scenario_text(
    const std::string& text,
    std::optional<int> default_grid_points = std::nullopt);
ScenarioConfig parse_scenario_file(
    const std::string& path,
    std::optional<int> default_grid_points = std::nullopt);

/// Accepts plain radians ("1.5708", "-0.3") and pi fractions ("pi",
/// "pi/2", "3pi/4", "2*pi/3", "-pi").
double parse_angle(const std::string& token);

/// N uniformly spaced theta values over [0, 2*pi), phi = 0.
std::vector<QubitBasis> uniform_theta_grid(int points);

/// The configured branch machine. Throws for cptp configurations.
BranchMachine make_machine(const ScenarioConfig& config);

/// The configured channel. Throws for non-cptp configurations.
LinearChannel make_channel(const ScenarioConfig& config);

}  // namespace qdelsim
