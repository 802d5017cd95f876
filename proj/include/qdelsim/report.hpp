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

#include <cstddef>
#include <string>
#include <vector>

#include "qdelsim/protocol.hpp"
#include "qdelsim/scenario.hpp"

namespace qdelsim {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a run emits: the resolved configuration, one signalling
/// result per (reference, basis) pair, the sweep summary, and the
/// consistency residuals computed on this run's states. Serialization is
/// deterministic, so identical configs yield byte-identical reports.
struct RunReport {
  std::string command;
  ScenarioConfig config;
  std::vector<SignallingReport> pairs;
  std::size_t argmax_index = 0;
  double max_distance = 0.0;
  Verdict overall_verdict = Verdict::kNoSignalling;
  double eq2_identity_residual = 0.0;
  double hermiticity_residual = 0.0;
  double trace_residual = 0.0;
  double min_eigenvalue = 0.0;
};

/// Runs the configured scenario: every basis in config.bases is compared
/// against config.reference. Throws std::logic_error if a cptp control
/// trips the hard consistency threshold.
RunReport execute_scenario(const ScenarioConfig& config,
                           const std::string& command);

/// %.17g, enough digits to round-trip an IEEE double.
std::string format_double(double value);

/// JSON with stable key order and 17-significant-digit numbers.
std::string render_run_report_json(const RunReport& report);

/// Columns: theta, phi, trace_distance, discrimination_probability,
/// verdict. One row per grid point, in grid order.
std::string render_sweep_csv(const RunReport& report);

}  // namespace qdelsim
