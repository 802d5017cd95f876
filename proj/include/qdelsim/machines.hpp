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
#include <random>
#include <string>
#include <vector>

#include "qdelsim/core.hpp"
#include "qdelsim/resources.hpp"

namespace qdelsim {

enum class MachineKind { kDelete, kErase, kClone, kCustom };
std::string to_string(MachineKind kind);

/// Which basis member sits on each of Bob's input slots (qubits 2 and 4).
enum class Branch { kPsiPsi, kBarBar, kPsiBar, kBarPsi };
std::string to_string(Branch branch);

/// Final ancilla state for the identical-input branches.
struct AncillaRule {
  enum class Kind {
    kCopy,  // |A_psi> = |psi>, |A_psi_bar> = |psi_bar>
    kFixed  // basis-independent states given below
  };
  Kind kind = Kind::kCopy;
  Eigen::Vector2cd fixed_psi = Eigen::Vector2cd(1.0, 0.0);
  Eigen::Vector2cd fixed_psi_bar = Eigen::Vector2cd(1.0, 0.0);
};

/// Images |phi'>, |phi''> of the non-identical input branches, as 3-qubit
/// states on (2,4,5).
struct OffdiagRule {
  enum class Kind {
    kPassthrough,  // |phi'> = |psi>|psi_bar>|A>, |phi''> = |psi_bar>|psi>|A>
    kEntangling,   // (|psi psi_bar A> + |psi_bar psi A>)/sqrt(2), both branches
    kInline        // fixed 8-dim states from configuration
  };
  Kind kind = Kind::kPassthrough;
  Eigen::VectorXcd inline_phi_prime;
  Eigen::VectorXcd inline_phi_double_prime;
};

std::string to_string(AncillaRule::Kind kind);
std::string to_string(OffdiagRule::Kind kind);

/// A Bob-side operation defined branch by branch relative to the
/// measurement basis. It is applied only to post-measurement product
/// branches, never linearly to entangled states; that is what gives the
/// hypothetical nonlinear machines unambiguous semantics.
struct BranchMachine {
  MachineKind kind = MachineKind::kDelete;
  Eigen::Vector2cd sigma = Eigen::Vector2cd(1.0, 0.0);         // blank |Sigma>
  Eigen::Vector2cd ancilla_init = Eigen::Vector2cd(1.0, 0.0);  // |A>
  AncillaRule ancilla_rule;
  OffdiagRule offdiag_rule;
};

/// Identical-input branches map (x, x, A) -> (x, Sigma, A_x); the others
/// follow the off-diagonal rule. Throws on unnormalized configuration.
BranchMachine deleting_machine(
    const Eigen::Vector2cd& sigma = Eigen::Vector2cd(1.0, 0.0),
    const Eigen::Vector2cd& ancilla_init = Eigen::Vector2cd(1.0, 0.0),
    OffdiagRule offdiag_rule = {}, AncillaRule ancilla_rule = {});

/// All four branches swap qubits 4 and 5 of (x, y, Sigma), i.e. map
/// (x, y) -> (x, Sigma, y). The ancilla is forced to the blank state.
BranchMachine erasure_machine(
    const Eigen::Vector2cd& sigma = Eigen::Vector2cd(1.0, 0.0));

/// Identical-input branches duplicate onto the blank slot:
/// (x, Sigma, A) -> (x, x, A_x).
BranchMachine cloning_machine(
    AncillaRule ancilla_rule = {},
    const Eigen::Vector2cd& sigma = Eigen::Vector2cd(1.0, 0.0),
    const Eigen::Vector2cd& ancilla_init = Eigen::Vector2cd(1.0, 0.0));

/// Leaves every branch untouched: (x, y, A) -> (x, y, A). The "no machine"
/// control.
BranchMachine passthrough_machine();

BranchMachine custom_machine(OffdiagRule offdiag_rule,
                             const Eigen::Vector2cd& sigma = Eigen::Vector2cd(1.0, 0.0),
                             const Eigen::Vector2cd& ancilla_init = Eigen::Vector2cd(1.0, 0.0));

/// The configured image of the named branch, as a normalized state on
/// register (2,4,5).
StateVector apply_branch(const BranchMachine& machine, const QubitBasis& basis,
                         Branch branch);

/// Trace-preserving completely positive map on Bob's two-qubit space,
/// held as Kraus operators with sum K_i^dag K_i = I to 1e-12.
class LinearChannel {
 public:
  explicit LinearChannel(std::vector<Eigen::Matrix4cd> kraus);
  const std::vector<Eigen::Matrix4cd>& kraus() const noexcept { return kraus_; }
  int num_kraus() const noexcept { return static_cast<int>(kraus_.size()); }

 private:
  std::vector<Eigen::Matrix4cd> kraus_;
};

/// Haar-distributed unitary, deterministic for a given generator state.
Eigen::MatrixXcd haar_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Kraus operators sliced from a Haar-random isometry on a dilated space
/// of dimension 4 * num_kraus; trace preservation holds by construction.
/// Deterministic for a fixed seed.
LinearChannel random_cptp_channel(int num_kraus, std::uint64_t seed);

LinearChannel identity_channel();

/// Uniform two-qubit Pauli twirl; sends every state to I/4.
LinearChannel depolarizing_channel();

/// sum_i K_i rho K_i^dag. Completeness is re-checked on every application.
DensityMatrix apply_channel(const LinearChannel& channel,
                            const DensityMatrix& rho);

}  // namespace qdelsim
