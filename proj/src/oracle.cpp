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

#include "qdelsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qdelsim::oracle {

namespace {

struct BasisAmps {
  Eigen::Vector2cd psi;
  Eigen::Vector2cd bar;
};

BasisAmps basis_amps(const QubitBasis& basis) {
  const double c = std::cos(basis.theta / 2.0);
  const double s = std::sin(basis.theta / 2.0);
  const Complex phase(std::cos(basis.phi), std::sin(basis.phi));
  BasisAmps out;
  out.psi << Complex(c, 0.0), phase * s;
  out.bar << Complex(s, 0.0), -phase * c;
  return out;
}

int bit(Eigen::Index value, int position, int width) {
  return static_cast<int>((value >> (width - 1 - position)) & 1);
}

}  // namespace

Eigen::MatrixXcd partial_trace_brute(const Eigen::MatrixXcd& matrix,
                                     int num_qubits,
                                     const std::vector<int>& discard_positions) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw std::invalid_argument("partial_trace_brute: dimension mismatch");
  }
  std::vector<bool> discarded(static_cast<std::size_t>(num_qubits), false);
  for (int p : discard_positions) {
    discarded.at(static_cast<std::size_t>(p)) = true;
  }
  std::vector<int> kept;
  for (int p = 0; p < num_qubits; ++p) {
    if (!discarded[static_cast<std::size_t>(p)]) kept.push_back(p);
  }
  const Eigen::Index out_dim = Eigen::Index{1} << kept.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);

  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index col = 0; col < dim; ++col) {
      bool diagonal_on_discarded = true;
      for (int p = 0; p < num_qubits; ++p) {
        if (discarded[static_cast<std::size_t>(p)] &&
            bit(row, p, num_qubits) != bit(col, p, num_qubits)) {
          diagonal_on_discarded = false;
          break;
        }
      }
      if (!diagonal_on_discarded) continue;
      Eigen::Index out_row = 0, out_col = 0;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        const int shift = static_cast<int>(kept.size() - 1 - i);
        out_row |= static_cast<Eigen::Index>(bit(row, kept[i], num_qubits))
                   << shift;
        out_col |= static_cast<Eigen::Index>(bit(col, kept[i], num_qubits))
                   << shift;
      }
      out(out_row, out_col) += matrix(row, col);
    }
  }
  return out;
}

Eigen::VectorXcd branch_image_brute(const BranchMachine& machine,
                                    const QubitBasis& basis, Branch branch) {
  const BasisAmps amps = basis_amps(basis);
  const bool diagonal =
      branch == Branch::kPsiPsi || branch == Branch::kBarBar;
  const bool first_is_psi =
      branch == Branch::kPsiPsi || branch == Branch::kPsiBar;
  const Eigen::Vector2cd& x = first_is_psi ? amps.psi : amps.bar;
  const Eigen::Vector2cd& other = first_is_psi ? amps.bar : amps.psi;

  Eigen::Vector2cd ancilla_final;
  if (machine.ancilla_rule.kind == AncillaRule::Kind::kCopy) {
    ancilla_final = x;
  } else {
    ancilla_final = first_is_psi ? machine.ancilla_rule.fixed_psi
                                 : machine.ancilla_rule.fixed_psi_bar;
  }

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
  auto fill_product = [&out](const Eigen::Vector2cd& q2,
                             const Eigen::Vector2cd& q4,
                             const Eigen::Vector2cd& q5, Complex scale) {
    for (int b2 = 0; b2 < 2; ++b2) {
      for (int b4 = 0; b4 < 2; ++b4) {
        for (int b5 = 0; b5 < 2; ++b5) {
          out((b2 << 2) | (b4 << 1) | b5) += scale * q2(b2) * q4(b4) * q5(b5);
        }
      }
    }
  };

  const bool offdiagonal = !diagonal;
  if (machine.kind == MachineKind::kErase) {
    fill_product(x, machine.sigma, diagonal ? x : other, 1.0);
    return out;
  }
  if (offdiagonal) {
    switch (machine.offdiag_rule.kind) {
      case OffdiagRule::Kind::kPassthrough:
        fill_product(x, other, machine.ancilla_init, 1.0);
        return out;
      case OffdiagRule::Kind::kEntangling: {
        const Complex half = 1.0 / std::sqrt(2.0);
        fill_product(x, other, machine.ancilla_init, half);
        fill_product(other, x, machine.ancilla_init, half);
        return out;
      }
      case OffdiagRule::Kind::kInline:
        return branch == Branch::kPsiBar
                   ? machine.offdiag_rule.inline_phi_prime
                   : machine.offdiag_rule.inline_phi_double_prime;
    }
    throw std::logic_error("unreachable off-diagonal rule kind");
  }

  switch (machine.kind) {
    case MachineKind::kDelete:
      fill_product(x, machine.sigma, ancilla_final, 1.0);
      return out;
    case MachineKind::kClone:
      fill_product(x, x, ancilla_final, 1.0);
      return out;
    case MachineKind::kCustom:
      fill_product(x, x, machine.ancilla_init, 1.0);
      return out;
    case MachineKind::kErase:
      break;
  }
  throw std::logic_error("unreachable machine kind");
}

Eigen::VectorXcd output_state_brute(const BranchMachine& machine,
                                    const QubitBasis& basis) {
  const BasisAmps amps = basis_amps(basis);

  struct Term {
    double coefficient;
    const Eigen::Vector2cd* alice_q1;
    const Eigen::Vector2cd* alice_q3;
    Branch bob_branch;
  };
  const Term terms[4] = {
      {+1.0, &amps.psi, &amps.psi, Branch::kBarBar},
      {+1.0, &amps.bar, &amps.bar, Branch::kPsiPsi},
      {-1.0, &amps.bar, &amps.psi, Branch::kPsiBar},
      {-1.0, &amps.psi, &amps.bar, Branch::kBarPsi},
  };

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(32);
  for (const Term& term : terms) {
    const Eigen::VectorXcd bob = branch_image_brute(machine, basis,
                                                    term.bob_branch);
    for (Eigen::Index idx = 0; idx < 32; ++idx) {
      const int b1 = bit(idx, 0, 5);
      const int b2 = bit(idx, 1, 5);
      const int b3 = bit(idx, 2, 5);
      const int b4 = bit(idx, 3, 5);
      const int b5 = bit(idx, 4, 5);
      out(idx) += 0.5 * term.coefficient * (*term.alice_q1)(b1) *
                  (*term.alice_q3)(b3) * bob((b2 << 2) | (b4 << 1) | b5);
    }
  }
  return out;
}

Eigen::MatrixXcd bob_reduced_state_brute(const BranchMachine& machine,
                                         const QubitBasis& basis) {
  const Eigen::VectorXcd state = output_state_brute(machine, basis);
  const Eigen::MatrixXcd projector = state * state.adjoint();
  // Trace over qubits 1, 3 and 5 (register positions 0, 2 and 4).
  return partial_trace_brute(projector, 5, {0, 2, 4});
}

Eigen::MatrixXcd offdiag_reduced_brute(const BranchMachine& machine,
                                       const QubitBasis& basis,
                                       Branch branch) {
  if (branch != Branch::kPsiBar && branch != Branch::kBarPsi) {
    throw std::invalid_argument(
        "offdiag_reduced_brute expects a non-identical input branch");
  }
  const Eigen::VectorXcd phi = branch_image_brute(machine, basis, branch);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
  for (int b2 = 0; b2 < 2; ++b2) {
    for (int b4 = 0; b4 < 2; ++b4) {
      for (int c2 = 0; c2 < 2; ++c2) {
        for (int c4 = 0; c4 < 2; ++c4) {
          Complex sum = 0.0;
          for (int b5 = 0; b5 < 2; ++b5) {
            sum += phi((b2 << 2) | (b4 << 1) | b5) *
                   std::conj(phi((c2 << 2) | (c4 << 1) | b5));
          }
          out((b2 << 1) | b4, (c2 << 1) | c4) = sum;
        }
      }
    }
  }
  return out;
}

}  // namespace qdelsim::oracle
