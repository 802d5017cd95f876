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

#include "qdelsim/protocol.hpp"

#include <stdexcept>
#include <utility>

namespace qdelsim {

std::string to_string(BasisMember member) {
  return member == BasisMember::kPsi ? "psi" : "psi_bar";
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::kSignalling ? "signalling" : "no-signalling";
}

std::array<MeasurementBranch, 4> alice_branches(const QubitBasis& basis) {
  const Eigen::Vector2cd psi = basis_psi(basis);
  const Eigen::Vector2cd bar = basis_psi_bar(basis);
  auto bob = [&](const Eigen::Vector2cd& q2, const Eigen::Vector2cd& q4) {
    return tensor_product(make_qubit_state({2}, q2),
                          make_qubit_state({4}, q4));
  };
  // Anti-correlation of the singlets: Alice's outcome on (1,3) leaves
  // Bob's (2,4) in the opposite basis members.
  return {
      MeasurementBranch{0.25, BasisMember::kPsi, BasisMember::kPsi,
                        bob(bar, bar)},
      MeasurementBranch{0.25, BasisMember::kPsiBar, BasisMember::kPsiBar,
                        bob(psi, psi)},
      MeasurementBranch{0.25, BasisMember::kPsiBar, BasisMember::kPsi,
                        bob(psi, bar)},
      MeasurementBranch{0.25, BasisMember::kPsi, BasisMember::kPsiBar,
                        bob(bar, psi)},
  };
}

Branch bob_branch_for(BasisMember alice_q1, BasisMember alice_q3) {
  const bool q2_psi = alice_q1 == BasisMember::kPsiBar;
  const bool q4_psi = alice_q3 == BasisMember::kPsiBar;
  if (q2_psi && q4_psi) return Branch::kPsiPsi;
  if (!q2_psi && !q4_psi) return Branch::kBarBar;
  if (q2_psi) return Branch::kPsiBar;
  return Branch::kBarPsi;
}

DensityMatrix bob_unconditional_state(const QubitBasis& basis) {
  Eigen::Matrix4cd mix = Eigen::Matrix4cd::Zero();
  for (const auto& branch : alice_branches(basis)) {
    const auto& amps = branch.bob_state.amplitudes();
    mix += branch.probability * (amps * amps.adjoint());
  }
  return DensityMatrix(make_register({2, 4}), mix);
}

DensityMatrix bob_reduced_state(const BranchMachine& machine,
                                const QubitBasis& basis) {
  Eigen::Matrix4cd mix = Eigen::Matrix4cd::Zero();
  for (const auto& branch : alice_branches(basis)) {
    const Branch bob_input = bob_branch_for(branch.alice_q1, branch.alice_q3);
    const StateVector out = apply_branch(machine, basis, bob_input);
    const DensityMatrix reduced = partial_trace(out.projector(), {{5}});
    mix += branch.probability * reduced.matrix();
  }
  return DensityMatrix(make_register({2, 4}), mix);
}

DensityMatrix alice_marginal(const BranchMachine& machine,
                             const QubitBasis& basis) {
  Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(32, 32);
  Register full_reg;
  for (const auto& branch : alice_branches(basis)) {
    const Branch bob_input = bob_branch_for(branch.alice_q1, branch.alice_q3);
    const StateVector bob_out = apply_branch(machine, basis, bob_input);
    const Eigen::Vector2cd q1 = branch.alice_q1 == BasisMember::kPsi
                                    ? basis_psi(basis)
                                    : basis_psi_bar(basis);
    const Eigen::Vector2cd q3 = branch.alice_q3 == BasisMember::kPsi
                                    ? basis_psi(basis)
                                    : basis_psi_bar(basis);
    const StateVector alice =
        tensor_product(make_qubit_state({1}, q1), make_qubit_state({3}, q3));
    const StateVector full = tensor_product(alice, bob_out);  // (1,3,2,4,5)
    full_reg = full.reg();
    const auto& amps = full.amplitudes();
    mix += branch.probability * (amps * amps.adjoint());
  }
  const DensityMatrix five_qubit(full_reg, std::move(mix));
  return partial_trace(five_qubit, make_register({2, 4, 5}));
}

namespace {

SignallingReport build_report(QubitBasis basis_a, QubitBasis basis_b,
                              DensityMatrix rho_a, DensityMatrix rho_b,
                              double tolerance) {
  if (tolerance <= 0.0) {
    throw std::invalid_argument("tolerance must be positive");
  }
  const double distance = trace_distance(rho_a, rho_b);
  PauliDecomposition pauli_a = pauli_decompose(rho_a);
  PauliDecomposition pauli_b = pauli_decompose(rho_b);
  const Verdict verdict =
      distance > tolerance ? Verdict::kSignalling : Verdict::kNoSignalling;
  return SignallingReport{basis_a,
                          basis_b,
                          std::move(rho_a),
                          std::move(rho_b),
                          distance,
                          (1.0 + distance) / 2.0,
                          std::move(pauli_a),
                          std::move(pauli_b),
                          verdict,
                          tolerance};
}

}  // namespace

SignallingReport signalling_report(const BranchMachine& machine,
                                   const QubitBasis& basis_a,
                                   const QubitBasis& basis_b,
                                   double tolerance) {
  return build_report(basis_a, basis_b, bob_reduced_state(machine, basis_a),
                      bob_reduced_state(machine, basis_b), tolerance);
}

void ensure_control_distance(double distance, double hard_threshold) {
  if (distance >= hard_threshold) {
    throw std::logic_error(
        "linear channel produced basis-dependent reduced states (distance " +
        std::to_string(distance) + "); this indicates an implementation bug");
  }
}

SignallingReport cptp_control(const LinearChannel& channel,
                              const QubitBasis& basis_a,
                              const QubitBasis& basis_b, double tolerance) {
  const DensityMatrix rho_a =
      apply_channel(channel, bob_unconditional_state(basis_a));
  const DensityMatrix rho_b =
      apply_channel(channel, bob_unconditional_state(basis_b));
  SignallingReport report =
      build_report(basis_a, basis_b, rho_a, rho_b, tolerance);
  ensure_control_distance(report.distance);
  return report;
}

SignallingReport cloning_protocol(const BranchMachine& machine,
                                  const QubitBasis& basis_a,
                                  const QubitBasis& basis_b,
                                  double tolerance) {
  if (machine.kind != MachineKind::kClone) {
    throw std::invalid_argument(
        "cloning_protocol requires a clone machine, got " +
        to_string(machine.kind));
  }
  auto bob_state = [&](const QubitBasis& basis) {
    // Alice measures qubit 1 of a single singlet: outcome psi collapses
    // Bob's qubit 2 to psi_bar and vice versa, each with probability 1/2.
    Eigen::Matrix4cd mix = Eigen::Matrix4cd::Zero();
    for (Branch input : {Branch::kBarBar, Branch::kPsiPsi}) {
      const StateVector cloned = apply_branch(machine, basis, input);
      const DensityMatrix reduced = partial_trace(cloned.projector(), {{5}});
      mix += 0.5 * reduced.matrix();
    }
    return DensityMatrix(make_register({2, 4}), mix);
  };
  return build_report(basis_a, basis_b, bob_state(basis_a),
                      bob_state(basis_b), tolerance);
}

SignallingReport machine_report(const BranchMachine& machine,
                                const QubitBasis& basis_a,
                                const QubitBasis& basis_b, double tolerance) {
  if (machine.kind == MachineKind::kClone) {
    return cloning_protocol(machine, basis_a, basis_b, tolerance);
  }
  return signalling_report(machine, basis_a, basis_b, tolerance);
}

SweepResult sweep(const BranchMachine& machine,
                  const std::vector<QubitBasis>& grid,
                  const QubitBasis& reference, double tolerance) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep requires a non-empty basis grid");
  }
  SweepResult result;
  result.reports.reserve(grid.size());
  result.argmax_index = 0;
  result.max_distance = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.reports.push_back(
        machine_report(machine, reference, grid[i], tolerance));
    const double d = result.reports.back().distance;
    if (d > result.max_distance) {
      result.max_distance = d;
      result.argmax_index = i;
    }
  }
  return result;
}

}  // namespace qdelsim
