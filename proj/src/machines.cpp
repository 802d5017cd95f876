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

#include "qdelsim/machines.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qdelsim {

namespace {

void require_normalized(const Eigen::VectorXcd& v, const std::string& what) {
  if (std::abs(v.squaredNorm() - 1.0) > kEqTol) {
    throw std::invalid_argument(what + " is not normalized: |norm^2 - 1| = " +
                                std::to_string(std::abs(v.squaredNorm() - 1.0)));
  }
}

Eigen::VectorXcd normalized_or_throw(Eigen::VectorXcd v,
                                     const std::string& what) {
  const double norm = v.norm();
  if (norm < 1e-9) {
    throw std::invalid_argument(what + " has (near-)zero norm");
  }
  return v / norm;
}

void validate_offdiag_rule(OffdiagRule& rule) {
  if (rule.kind == OffdiagRule::Kind::kInline) {
    if (rule.inline_phi_prime.size() != 8 ||
        rule.inline_phi_double_prime.size() != 8) {
      throw std::invalid_argument(
          "inline off-diagonal rule needs two 8-amplitude states on (2,4,5)");
    }
    rule.inline_phi_prime =
        normalized_or_throw(rule.inline_phi_prime, "inline |phi'>");
    rule.inline_phi_double_prime =
        normalized_or_throw(rule.inline_phi_double_prime, "inline |phi''>");
  }
}

void validate_ancilla_rule(const AncillaRule& rule) {
  if (rule.kind == AncillaRule::Kind::kFixed) {
    require_normalized(rule.fixed_psi, "ancilla-rule state |A_psi>");
    require_normalized(rule.fixed_psi_bar, "ancilla-rule state |A_psi_bar>");
  }
}

Eigen::VectorXcd kron3(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b,
                       const Eigen::Vector2cd& c) {
  return Eigen::kroneckerProduct(a, Eigen::kroneckerProduct(b, c).eval())
      .eval();
}

}  // namespace

std::string to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::kDelete:
      return "delete";
    case MachineKind::kErase:
      return "erase";
    case MachineKind::kClone:
      return "clone";
    case MachineKind::kCustom:
      return "custom";
  }
  return "?";
}

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::kPsiPsi:
      return "psi,psi";
    case Branch::kBarBar:
      return "psi_bar,psi_bar";
    case Branch::kPsiBar:
      return "psi,psi_bar";
    case Branch::kBarPsi:
      return "psi_bar,psi";
  }
  return "?";
}

std::string to_string(AncillaRule::Kind kind) {
  return kind == AncillaRule::Kind::kCopy ? "copy" : "fixed";
}

std::string to_string(OffdiagRule::Kind kind) {
  switch (kind) {
    case OffdiagRule::Kind::kPassthrough:
      return "passthrough";
    case OffdiagRule::Kind::kEntangling:
      return "entangling";
    case OffdiagRule::Kind::kInline:
      return "inline";
  }
  return "?";
}

BranchMachine deleting_machine(const Eigen::Vector2cd& sigma,
                               const Eigen::Vector2cd& ancilla_init,
                               OffdiagRule offdiag_rule,
                               AncillaRule ancilla_rule) {
  require_normalized(sigma, "blank state |Sigma>");
  require_normalized(ancilla_init, "ancilla state |A>");
  validate_ancilla_rule(ancilla_rule);
  validate_offdiag_rule(offdiag_rule);
  return BranchMachine{MachineKind::kDelete, sigma, ancilla_init,
                       std::move(ancilla_rule), std::move(offdiag_rule)};
}

BranchMachine erasure_machine(const Eigen::Vector2cd& sigma) {
  require_normalized(sigma, "blank state |Sigma>");
  // The ancilla starts in the blank state; every branch then swaps
  // qubits 4 and 5.
  return BranchMachine{MachineKind::kErase, sigma, sigma, AncillaRule{},
                       OffdiagRule{}};
}

BranchMachine cloning_machine(AncillaRule ancilla_rule,
                              const Eigen::Vector2cd& sigma,
                              const Eigen::Vector2cd& ancilla_init) {
  require_normalized(sigma, "blank state |Sigma>");
  require_normalized(ancilla_init, "ancilla state |A>");
  validate_ancilla_rule(ancilla_rule);
  return BranchMachine{MachineKind::kClone, sigma, ancilla_init,
                       std::move(ancilla_rule), OffdiagRule{}};
}

BranchMachine passthrough_machine() {
  return BranchMachine{MachineKind::kCustom, Eigen::Vector2cd(1.0, 0.0),
                       Eigen::Vector2cd(1.0, 0.0), AncillaRule{},
                       OffdiagRule{}};
}

BranchMachine custom_machine(OffdiagRule offdiag_rule,
                             const Eigen::Vector2cd& sigma,
                             const Eigen::Vector2cd& ancilla_init) {
  require_normalized(sigma, "blank state |Sigma>");
  require_normalized(ancilla_init, "ancilla state |A>");
  validate_offdiag_rule(offdiag_rule);
  return BranchMachine{MachineKind::kCustom, sigma, ancilla_init,
                       AncillaRule{}, std::move(offdiag_rule)};
}

namespace {

Eigen::Vector2cd final_ancilla(const BranchMachine& m, bool is_psi,
                               const Eigen::Vector2cd& psi,
                               const Eigen::Vector2cd& psi_bar) {
  if (m.ancilla_rule.kind == AncillaRule::Kind::kCopy) {
    return is_psi ? psi : psi_bar;
  }
  return is_psi ? m.ancilla_rule.fixed_psi : m.ancilla_rule.fixed_psi_bar;
}

Eigen::VectorXcd offdiag_image(const BranchMachine& m, bool prime,
                               const Eigen::Vector2cd& psi,
                               const Eigen::Vector2cd& psi_bar) {
  const Eigen::Vector2cd& first = prime ? psi : psi_bar;
  const Eigen::Vector2cd& second = prime ? psi_bar : psi;
  switch (m.offdiag_rule.kind) {
    case OffdiagRule::Kind::kPassthrough:
      return kron3(first, second, m.ancilla_init);
    case OffdiagRule::Kind::kEntangling:
      return (kron3(first, second, m.ancilla_init) +
              kron3(second, first, m.ancilla_init)) /
             std::sqrt(2.0);
    case OffdiagRule::Kind::kInline:
      return prime ? m.offdiag_rule.inline_phi_prime
                   : m.offdiag_rule.inline_phi_double_prime;
  }
  throw std::logic_error("unreachable off-diagonal rule kind");
}

}  // namespace

StateVector apply_branch(const BranchMachine& m, const QubitBasis& basis,
                         Branch branch) {
  const Eigen::Vector2cd psi = basis_psi(basis);
  const Eigen::Vector2cd psi_bar = basis_psi_bar(basis);
  const Register out_reg = make_register({2, 4, 5});

  const bool diagonal =
      branch == Branch::kPsiPsi || branch == Branch::kBarBar;
  const bool first_is_psi =
      branch == Branch::kPsiPsi || branch == Branch::kPsiBar;
  const Eigen::Vector2cd& x = first_is_psi ? psi : psi_bar;
  const Eigen::Vector2cd& y = diagonal ? x : (first_is_psi ? psi_bar : psi);

  switch (m.kind) {
    case MachineKind::kErase:
      return StateVector(out_reg, kron3(x, m.sigma, y));
    case MachineKind::kDelete:
      if (diagonal) {
        return StateVector(
            out_reg,
            kron3(x, m.sigma, final_ancilla(m, first_is_psi, psi, psi_bar)));
      }
      return StateVector(out_reg,
                         offdiag_image(m, branch == Branch::kPsiBar, psi,
                                       psi_bar));
    case MachineKind::kClone:
      if (diagonal) {
        return StateVector(
            out_reg,
            kron3(x, x, final_ancilla(m, first_is_psi, psi, psi_bar)));
      }
      return StateVector(out_reg,
                         offdiag_image(m, branch == Branch::kPsiBar, psi,
                                       psi_bar));
    case MachineKind::kCustom:
      if (diagonal) {
        return StateVector(out_reg, kron3(x, y, m.ancilla_init));
      }
      return StateVector(out_reg,
                         offdiag_image(m, branch == Branch::kPsiBar, psi,
                                       psi_bar));
  }
  throw std::logic_error("unreachable machine kind");
}

LinearChannel::LinearChannel(std::vector<Eigen::Matrix4cd> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw std::invalid_argument("a channel needs at least one Kraus operator");
  }
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  const double residual =
      (sum - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
  if (residual > kEqTol) {
    throw std::invalid_argument(
        "Kraus operators are not trace preserving: completeness residual " +
        std::to_string(residual));
  }
}

Eigen::MatrixXcd haar_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd ginibre(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      ginibre(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

LinearChannel random_cptp_channel(int num_kraus, std::uint64_t seed) {
  if (num_kraus < 1) {
    throw std::invalid_argument("num_kraus must be at least 1");
  }
  std::mt19937_64 rng(seed);
  const Eigen::Index dilated = 4 * static_cast<Eigen::Index>(num_kraus);
  const Eigen::MatrixXcd unitary = haar_unitary(dilated, rng);
  // The first four columns form an isometry V; its 4x4 row blocks are
  // Kraus operators with sum K^dag K = V^dag V = I.
  const Eigen::MatrixXcd isometry = unitary.leftCols(4);
  std::vector<Eigen::Matrix4cd> kraus;
  kraus.reserve(static_cast<std::size_t>(num_kraus));
  for (int i = 0; i < num_kraus; ++i) {
    kraus.push_back(isometry.middleRows(4 * i, 4));
  }
  return LinearChannel(std::move(kraus));
}

LinearChannel identity_channel() {
  return LinearChannel({Eigen::Matrix4cd::Identity()});
}

LinearChannel depolarizing_channel() {
  std::vector<Eigen::Matrix4cd> kraus;
  kraus.reserve(16);
  const Eigen::Matrix2cd ops[4] = {identity2(), pauli_x(), pauli_y(),
                                   pauli_z()};
  for (const auto& a : ops) {
    for (const auto& b : ops) {
      kraus.push_back(0.25 * Eigen::kroneckerProduct(a, b));
    }
  }
  return LinearChannel(std::move(kraus));
}

DensityMatrix apply_channel(const LinearChannel& channel,
                            const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument(
        "apply_channel expects a two-qubit state, got dimension " +
        std::to_string(rho.dim()));
  }
  Eigen::Matrix4cd completeness = Eigen::Matrix4cd::Zero();
  for (const auto& k : channel.kraus()) completeness += k.adjoint() * k;
  if ((completeness - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() >
      kEqTol) {
    throw std::logic_error("channel lost trace preservation");
  }
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (const auto& k : channel.kraus()) {
    out += k * rho.matrix() * k.adjoint();
  }
  return DensityMatrix(rho.reg(), out);
}

}  // namespace qdelsim
