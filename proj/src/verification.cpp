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

#include "qdelsim/verification.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qdelsim/core.hpp"
#include "qdelsim/machines.hpp"
#include "qdelsim/oracle.hpp"
#include "qdelsim/protocol.hpp"
#include "qdelsim/resources.hpp"

namespace qdelsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform_angle(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
}

Eigen::VectorXcd random_state(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

DensityMatrix random_density_matrix(const Register& reg,
                                    std::mt19937_64& rng) {
  const Eigen::Index dim = Eigen::Index{1} << reg.size();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd v(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      v(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::MatrixXcd psd = v * v.adjoint();
  psd /= psd.trace().real();
  return DensityMatrix(reg, (psd + psd.adjoint()) / 2.0);
}

BranchMachine random_machine(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind_dist(0, 3);
  std::uniform_int_distribution<int> rule_dist(0, 2);
  std::uniform_int_distribution<int> coin(0, 1);

  const Eigen::Vector2cd sigma = random_state(2, rng);
  const Eigen::Vector2cd ancilla = random_state(2, rng);

  AncillaRule ancilla_rule;
  if (coin(rng) == 1) {
    ancilla_rule.kind = AncillaRule::Kind::kFixed;
    ancilla_rule.fixed_psi = random_state(2, rng);
    ancilla_rule.fixed_psi_bar = random_state(2, rng);
  }

  OffdiagRule offdiag;
  switch (rule_dist(rng)) {
    case 0:
      offdiag.kind = OffdiagRule::Kind::kPassthrough;
      break;
    case 1:
      offdiag.kind = OffdiagRule::Kind::kEntangling;
      break;
    default:
      offdiag.kind = OffdiagRule::Kind::kInline;
      offdiag.inline_phi_prime = random_state(8, rng);
      offdiag.inline_phi_double_prime = random_state(8, rng);
      break;
  }

  switch (kind_dist(rng)) {
    case 0:
      return deleting_machine(sigma, ancilla, offdiag, ancilla_rule);
    case 1:
      return erasure_machine(sigma);
    case 2:
      return cloning_machine(ancilla_rule, sigma, ancilla);
    default:
      return custom_machine(offdiag, sigma, ancilla);
  }
}

struct SuiteBuilder {
  std::vector<CheckResult> results;

  void residual_check(const std::string& name, double residual,
                      double threshold) {
    results.push_back(
        CheckResult{name, residual <= threshold, residual, threshold, false});
  }

  void separation_check(const std::string& name, double value,
                        double threshold) {
    results.push_back(
        CheckResult{name, value >= threshold, value, threshold, true});
  }
};

double check_eq2_identity() {
  std::mt19937_64 rng(101);
  const Eigen::VectorXcd product =
      tensor_product(singlet({1}, {2}), singlet({3}, {4})).amplitudes();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const QubitBasis basis{uniform_angle(rng), 0.0};
    worst = std::max(worst, phase_aligned_deviation(
                                expand_two_singlets(basis).amplitudes(),
                                product));
  }
  for (int i = 0; i < 20; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    worst = std::max(worst, phase_aligned_deviation(
                                expand_two_singlets(basis).amplitudes(),
                                product));
  }
  return worst;
}

double check_basis_completeness() {
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    const Eigen::Vector2cd psi = basis_psi(basis);
    const Eigen::Vector2cd bar = basis_psi_bar(basis);
    const Eigen::Matrix2cd completeness =
        psi * psi.adjoint() + bar * bar.adjoint();
    worst = std::max(worst, max_abs_diff(completeness, identity2()));
  }
  return worst;
}

double check_premachine_marginal() {
  std::mt19937_64 rng(103);
  const Eigen::Matrix4cd expected = Eigen::Matrix4cd::Identity() / 4.0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    worst = std::max(
        worst, max_abs_diff(bob_unconditional_state(basis).matrix(), expected));
  }
  return worst;
}

double check_partial_trace_oracle(FaultInjection fault) {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<int> subset_dist(1, 6);
  const Register reg = make_register({1, 2, 3});
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density_matrix(reg, rng);
    const int subset = subset_dist(rng);  // nonempty proper-or-full subsets
    std::vector<QubitLabel> discard;
    std::vector<int> positions;
    for (int p = 0; p < 3; ++p) {
      if ((subset >> p) & 1) {
        discard.push_back(reg[static_cast<std::size_t>(p)]);
        positions.push_back(p);
      }
    }
    Eigen::MatrixXcd via_impl = partial_trace(rho, discard).matrix();
    if (fault == FaultInjection::kPartialTrace) {
      via_impl(0, 0) += 1e-6;
    }
    const Eigen::MatrixXcd via_oracle =
        oracle::partial_trace_brute(rho.matrix(), 3, positions);
    worst = std::max(worst, max_abs_diff(via_impl, via_oracle));
  }
  return worst;
}

double check_tensor_associativity() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const StateVector a({QubitLabel{1}}, random_state(2, rng));
    const StateVector b({QubitLabel{2}, QubitLabel{3}}, random_state(4, rng));
    const StateVector c({QubitLabel{4}}, random_state(2, rng));
    const auto left = tensor_product(tensor_product(a, b), c);
    const auto right = tensor_product(a, tensor_product(b, c));
    worst = std::max(
        worst,
        (left.amplitudes() - right.amplitudes()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double check_trace_distance_triangle() {
  std::mt19937_64 rng(106);
  const Register reg = make_register({2, 4});
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix a = random_density_matrix(reg, rng);
    const DensityMatrix b = random_density_matrix(reg, rng);
    const DensityMatrix c = random_density_matrix(reg, rng);
    const double slack =
        trace_distance(a, c) - trace_distance(a, b) - trace_distance(b, c);
    worst = std::max(worst, slack);
  }
  return std::max(worst, 0.0);
}

double check_pauli_roundtrip() {
  std::mt19937_64 rng(107);
  const Register reg = make_register({2, 4});
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density_matrix(reg, rng);
    const DensityMatrix back = pauli_reconstruct(pauli_decompose(rho), reg);
    worst = std::max(worst, max_abs_diff(rho.matrix(), back.matrix()));
  }
  const PauliDecomposition singlet_decomp =
      pauli_decompose(singlet({1}, {2}).projector());
  worst = std::max(worst, singlet_decomp.m.cwiseAbs().maxCoeff());
  worst = std::max(worst, singlet_decomp.n.cwiseAbs().maxCoeff());
  worst = std::max(
      worst, (singlet_decomp.correlation + Eigen::Matrix3d::Identity())
                 .cwiseAbs()
                 .maxCoeff());
  return worst;
}

double check_erasure_universality() {
  std::mt19937_64 rng(108);
  double worst = 0.0;
  for (const Eigen::Vector2cd& sigma :
       {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(random_state(2, rng))}) {
    const BranchMachine machine = erasure_machine(sigma);
    const Eigen::Matrix4cd expected = Eigen::kroneckerProduct(
        (identity2() / 2.0).eval(), (sigma * sigma.adjoint()).eval());
    for (int i = 0; i < 100; ++i) {
      const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
      worst = std::max(
          worst,
          max_abs_diff(bob_reduced_state(machine, basis).matrix(), expected));
    }
  }
  return worst;
}

double check_erasure_swap_oracle() {
  std::mt19937_64 rng(109);
  // swap of qubits 4 and 5 inside the (2,4,5) register
  Eigen::MatrixXcd swap45 = Eigen::MatrixXcd::Zero(8, 8);
  for (int b2 = 0; b2 < 2; ++b2) {
    for (int b4 = 0; b4 < 2; ++b4) {
      for (int b5 = 0; b5 < 2; ++b5) {
        swap45((b2 << 2) | (b5 << 1) | b4, (b2 << 2) | (b4 << 1) | b5) = 1.0;
      }
    }
  }
  const BranchMachine machine = erasure_machine();
  double worst = 0.0;
  for (int i = 0; i < 25; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    const Eigen::Vector2cd psi = basis_psi(basis);
    const Eigen::Vector2cd bar = basis_psi_bar(basis);
    const struct {
      Branch branch;
      Eigen::Vector2cd q2, q4;
    } cases[4] = {{Branch::kPsiPsi, psi, psi},
                  {Branch::kBarBar, bar, bar},
                  {Branch::kPsiBar, psi, bar},
                  {Branch::kBarPsi, bar, psi}};
    for (const auto& c : cases) {
      const Eigen::VectorXcd input = Eigen::kroneckerProduct(
          c.q2, Eigen::kroneckerProduct(c.q4, machine.sigma).eval());
      const Eigen::VectorXcd swapped = swap45 * input;
      const Eigen::VectorXcd actual =
          apply_branch(machine, basis, c.branch).amplitudes();
      worst = std::max(worst,
                       (swapped - actual).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double check_eq5_structure() {
  std::mt19937_64 rng(110);
  double worst = 0.0;
  OffdiagRule entangling;
  entangling.kind = OffdiagRule::Kind::kEntangling;
  const BranchMachine machines[2] = {deleting_machine(),
                                     deleting_machine(Eigen::Vector2cd(1, 0),
                                                      Eigen::Vector2cd(1, 0),
                                                      entangling)};
  for (const BranchMachine& machine : machines) {
    const Eigen::Matrix4cd blank_part =
        0.25 * Eigen::kroneckerProduct(
                   identity2(),
                   (machine.sigma * machine.sigma.adjoint()).eval());
    for (int i = 0; i < 25; ++i) {
      const QubitBasis basis{uniform_angle(rng), 0.0};
      const Eigen::Matrix4cd lhs =
          bob_reduced_state(machine, basis).matrix() - blank_part;
      const Eigen::Matrix4cd rhs =
          0.25 * (oracle::offdiag_reduced_brute(machine, basis,
                                                Branch::kPsiBar) +
                  oracle::offdiag_reduced_brute(machine, basis,
                                                Branch::kBarPsi));
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
  }
  return worst;
}

double check_deletion_signalling_residual() {
  const BranchMachine machine = deleting_machine();
  const QubitBasis computational{0.0, 0.0};
  const QubitBasis tilted{std::numbers::pi / 2.0, 0.0};

  double worst = 0.0;
  Eigen::Vector4d expected_diag(0.25, 0.25, 0.5, 0.0);
  worst = std::max(
      worst, max_abs_diff(bob_reduced_state(machine, computational).matrix(),
                          expected_diag.asDiagonal().toDenseMatrix().cast<Complex>()));
  for (const QubitBasis& basis : {computational, tilted}) {
    worst = std::max(
        worst, max_abs_diff(bob_reduced_state(machine, basis).matrix(),
                            oracle::bob_reduced_state_brute(machine, basis)));
  }
  return worst;
}

double deletion_signalling_distance() {
  const BranchMachine machine = deleting_machine();
  return signalling_report(machine, QubitBasis{0.0, 0.0},
                           QubitBasis{std::numbers::pi / 2.0, 0.0})
      .distance;
}

double check_cptp_no_signalling() {
  std::mt19937_64 rng(111);
  std::uniform_int_distribution<int> kraus_dist(1, 6);
  double worst = 0.0;
  for (int c = 0; c < 50; ++c) {
    const LinearChannel channel =
        random_cptp_channel(kraus_dist(rng), 7000 + static_cast<std::uint64_t>(c));
    for (int p = 0; p < 20; ++p) {
      const QubitBasis a{uniform_angle(rng), uniform_angle(rng)};
      const QubitBasis b{uniform_angle(rng), uniform_angle(rng)};
      worst = std::max(worst, cptp_control(channel, a, b).distance);
    }
  }
  return worst;
}

double cloning_signalling_distance() {
  const BranchMachine machine = cloning_machine();
  return cloning_protocol(machine, QubitBasis{0.0, 0.0},
                          QubitBasis{std::numbers::pi / 2.0, 0.0})
      .distance;
}

double check_nonlinearity_witness() {
  // Linear extension of the computational-basis branch rules, applied to
  // the tilted psi,psi branch input, versus the machine's own output.
  const BranchMachine machine = deleting_machine();
  const QubitBasis computational{0.0, 0.0};
  const QubitBasis tilted{std::numbers::pi / 2.0, 0.0};

  Eigen::MatrixXcd linear_map = Eigen::MatrixXcd::Zero(8, 8);
  const struct {
    Branch branch;
  } cases[4] = {{Branch::kPsiPsi}, {Branch::kBarBar}, {Branch::kPsiBar},
                {Branch::kBarPsi}};
  for (const auto& c : cases) {
    const Eigen::Vector2cd psi = basis_psi(computational);
    const Eigen::Vector2cd bar = basis_psi_bar(computational);
    const bool first_is_psi =
        c.branch == Branch::kPsiPsi || c.branch == Branch::kPsiBar;
    const bool diagonal =
        c.branch == Branch::kPsiPsi || c.branch == Branch::kBarBar;
    const Eigen::Vector2cd& q2 = first_is_psi ? psi : bar;
    const Eigen::Vector2cd q4 =
        diagonal ? q2 : (first_is_psi ? bar : psi);
    const Eigen::VectorXcd input = Eigen::kroneckerProduct(
        q2, Eigen::kroneckerProduct(q4, machine.ancilla_init).eval());
    const Eigen::VectorXcd output =
        apply_branch(machine, computational, c.branch).amplitudes();
    linear_map += output * input.adjoint();
  }

  const Eigen::VectorXcd tilted_input = Eigen::kroneckerProduct(
      basis_psi(tilted),
      Eigen::kroneckerProduct(basis_psi(tilted), machine.ancilla_init).eval());
  const Eigen::VectorXcd linear_result = linear_map * tilted_input;
  const Eigen::VectorXcd machine_result =
      apply_branch(machine, tilted, Branch::kPsiPsi).amplitudes();
  return (linear_result - machine_result).cwiseAbs().maxCoeff();
}

double check_alice_marginal() {
  std::mt19937_64 rng(112);
  const Eigen::Matrix4cd expected = Eigen::Matrix4cd::Identity() / 4.0;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const BranchMachine machine = random_machine(rng);
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    worst = std::max(
        worst, max_abs_diff(alice_marginal(machine, basis).matrix(), expected));
  }
  return worst;
}

double check_oracle_equivalence() {
  std::mt19937_64 rng(113);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const BranchMachine machine = random_machine(rng);
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    worst = std::max(
        worst, max_abs_diff(bob_reduced_state(machine, basis).matrix(),
                            oracle::bob_reduced_state_brute(machine, basis)));
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> run_verification_suite(FaultInjection fault) {
  SuiteBuilder suite;
  suite.residual_check("eq2-identity", check_eq2_identity(), kEqTol);
  suite.residual_check("basis-completeness", check_basis_completeness(),
                       kEqTol);
  suite.residual_check("pre-machine-marginal", check_premachine_marginal(),
                       kEqTol);
  suite.residual_check("partial-trace-oracle",
                       check_partial_trace_oracle(fault), kEqTol);
  suite.residual_check("tensor-associativity", check_tensor_associativity(),
                       kEqTol);
  suite.residual_check("trace-distance-triangle",
                       check_trace_distance_triangle(), kEqTol);
  suite.residual_check("pauli-roundtrip", check_pauli_roundtrip(), kEqTol);
  suite.residual_check("erasure-universality", check_erasure_universality(),
                       kEqTol);
  suite.residual_check("erasure-swap-oracle", check_erasure_swap_oracle(),
                       kEqTol);
  suite.residual_check("deletion-oracle-agreement",
                       check_deletion_signalling_residual(), kEqTol);
  suite.separation_check("deletion-signalling",
                         deletion_signalling_distance(), 0.1);
  suite.residual_check("eq5-structure", check_eq5_structure(), kEqTol);
  suite.residual_check("cptp-no-signalling", check_cptp_no_signalling(),
                       kEqTol);
  suite.separation_check("cloning-signalling", cloning_signalling_distance(),
                         0.1);
  suite.separation_check("nonlinearity-witness", check_nonlinearity_witness(),
                         0.1);
  suite.residual_check("alice-marginal-invariance", check_alice_marginal(),
                       kEqTol);
  suite.residual_check("oracle-equivalence", check_oracle_equivalence(),
                       kEqTol);
  return suite.results;
}

}  // namespace qdelsim
