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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qdelsim/core.hpp"
#include "qdelsim/machines.hpp"
#include "qdelsim/resources.hpp"

namespace qdelsim {

/// Verdict threshold on trace distance: below it a difference counts as
/// numerical noise, above it as genuine basis dependence.
inline constexpr double kVerdictTol = 1e-10;

/// A linear channel whose reduced states differ across bases by at least
/// this much indicates a bug, not signalling; cptp_control throws.
inline constexpr double kControlHardThreshold = 1e-10;

enum class BasisMember { kPsi, kPsiBar };
std::string to_string(BasisMember member);

/// One outcome of Alice measuring qubits (1,3) in the chosen basis, with
/// the collapsed state of Bob's qubits (2,4).
struct MeasurementBranch {
  double probability;
  BasisMember alice_q1;
  BasisMember alice_q3;
  StateVector bob_state;
};

/// The four equiprobable outcomes of Alice's (1,3) measurement on two
/// shared singlets. Outcome (psi,psi) leaves Bob in |psi_bar>|psi_bar>,
/// and so on per the four-branch expansion.
std::array<MeasurementBranch, 4> alice_branches(const QubitBasis& basis);

/// Bob's post-measurement input branch for a given Alice outcome.
Branch bob_branch_for(BasisMember alice_q1, BasisMember alice_q3);

/// Bob's (2,4) state with no communication and no machine: the equal
/// mixture over Alice's outcomes, which is I/4 for every basis.
DensityMatrix bob_unconditional_state(const QubitBasis& basis);

/// Probability-weighted average, over Alice's branches, of Bob's (2,4)
/// state after the machine acts on (2,4,5) and the ancilla is traced out.
DensityMatrix bob_reduced_state(const BranchMachine& machine,
                                const QubitBasis& basis);

/// Reduced state of Alice's qubits (1,3) from the full five-qubit branch
/// mixture; I/4 regardless of any Bob-side machine.
DensityMatrix alice_marginal(const BranchMachine& machine,
                             const QubitBasis& basis);

enum class Verdict { kSignalling, kNoSignalling };
std::string to_string(Verdict verdict);

/// Comparison of Bob's reduced states under two choices of Alice's basis.
/// discrimination_probability is the Helstrom bound (1 + distance)/2 for
/// a single-shot guess between the two equiprobable mixtures.
struct SignallingReport {
  QubitBasis basis_a;
  QubitBasis basis_b;
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  double distance;
  double discrimination_probability;
  PauliDecomposition pauli_a;
  PauliDecomposition pauli_b;
  Verdict verdict;
  double tolerance;
};

SignallingReport signalling_report(const BranchMachine& machine,
                                   const QubitBasis& basis_a,
                                   const QubitBasis& basis_b,
                                   double tolerance = kVerdictTol);

/// Control: Bob applies an honest linear channel instead of a machine.
/// Linearity forces basis independence, so any distance at or above
/// kControlHardThreshold is surfaced as std::logic_error.
SignallingReport cptp_control(const LinearChannel& channel,
                              const QubitBasis& basis_a,
                              const QubitBasis& basis_b,
                              double tolerance = kVerdictTol);

/// Single-singlet variant: Alice measures qubit 1 only (two branches of
/// probability 1/2) and Bob clones his collapsed qubit 2 onto the blank
/// qubit 4. Requires a clone-kind machine.
SignallingReport cloning_protocol(const BranchMachine& machine,
                                  const QubitBasis& basis_a,
                                  const QubitBasis& basis_b,
                                  double tolerance = kVerdictTol);

/// signalling_report, except clone-kind machines route through
/// cloning_protocol.
SignallingReport machine_report(const BranchMachine& machine,
                                const QubitBasis& basis_a,
                                const QubitBasis& basis_b,
                                double tolerance = kVerdictTol);

/// One report per grid point against the reference basis, in grid order,
/// plus the argmax of the distance (ties break on the lowest index).
struct SweepResult {
  std::vector<SignallingReport> reports;
  std::size_t argmax_index;
  double max_distance;
};

SweepResult sweep(const BranchMachine& machine,
                  const std::vector<QubitBasis>& grid,
                  const QubitBasis& reference, double tolerance = kVerdictTol);

/// Guard used by cptp_control; exposed for direct testing.
void ensure_control_distance(double distance,
                             double hard_threshold = kControlHardThreshold);

}  // namespace qdelsim
