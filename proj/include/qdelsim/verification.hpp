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

#include <string>
#include <vector>

namespace qdelsim {

/// Outcome of one named consistency check. For residual-style checks the
/// check passes when residual <= threshold; for separation-style checks
/// (signalling distances, the nonlinearity witness) it passes when
/// residual >= threshold, indicated by `require_at_least`.
struct CheckResult {
  std::string name;
  bool passed;
  double residual;
  double threshold;
  bool require_at_least;
};

/// Test-fixture hooks that corrupt a named computation so the failure
/// path of the verification suite can be exercised.
enum class FaultInjection { kNone, kPartialTrace };

/// Runs every cross-module identity check with fixed internal seeds.
/// Deterministic: repeated calls produce identical results.
std::vector<CheckResult> run_verification_suite(
    FaultInjection fault = FaultInjection::kNone);

}  // namespace qdelsim
