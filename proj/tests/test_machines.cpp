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

#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qdelsim/machines.hpp"
#include "qdelsim/oracle.hpp"

using namespace qdelsim;
using qdelsim::testing::random_state;
using qdelsim::testing::uniform_angle;

namespace {

Eigen::VectorXcd kron3(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b,
                       const Eigen::Vector2cd& c) {
  return Eigen::kroneckerProduct(a, Eigen::kroneckerProduct(b, c).eval())
      .eval();
}

Eigen::MatrixXcd swap45_matrix() {
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(8, 8);
  for (int b2 = 0; b2 < 2; ++b2) {
    for (int b4 = 0; b4 < 2; ++b4) {
      for (int b5 = 0; b5 < 2; ++b5) {
        swap((b2 << 2) | (b5 << 1) | b4, (b2 << 2) | (b4 << 1) | b5) = 1.0;
      }
    }
  }
  return swap;
}

}  // namespace

TEST_CASE("deleting machine on identical inputs") {
  const BranchMachine machine = deleting_machine();
  const QubitBasis tilted{std::numbers::pi / 2.0, 0.0};
  const Eigen::Vector2cd psi = basis_psi(tilted);

  const StateVector out = apply_branch(machine, tilted, Branch::kPsiPsi);
  CHECK(out.reg() == make_register({2, 4, 5}));
  // default ancilla rule copies the basis member
  const Eigen::VectorXcd expected = kron3(psi, machine.sigma, psi);
  CHECK((out.amplitudes() - expected).cwiseAbs().maxCoeff() < kEqTol);
}

TEST_CASE("deleting machine bar branch at theta = 0") {
  const BranchMachine machine = deleting_machine();
  const StateVector out =
      apply_branch(machine, QubitBasis{0.0, 0.0}, Branch::kBarBar);
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(8);
  expected(0b101) = 1.0;  // |1>_2 |0>_4 |1>_5
  CHECK(phase_aligned_deviation(out.amplitudes(), expected) < kEqTol);
}

TEST_CASE("deleting machine passthrough off-diagonal branch") {
  const BranchMachine machine = deleting_machine();
  std::mt19937_64 rng(41);
  const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
  const StateVector out = apply_branch(machine, basis, Branch::kPsiBar);
  const Eigen::VectorXcd expected =
      kron3(basis_psi(basis), basis_psi_bar(basis), machine.ancilla_init);
  CHECK((out.amplitudes() - expected).cwiseAbs().maxCoeff() < kEqTol);
}

TEST_CASE("machine factories reject unnormalized configuration") {
  const Eigen::Vector2cd bad(0.5, 0.5);
  CHECK_THROWS_AS(deleting_machine(bad), std::invalid_argument);
  CHECK_THROWS_AS(erasure_machine(bad), std::invalid_argument);
  AncillaRule rule;
  rule.kind = AncillaRule::Kind::kFixed;
  rule.fixed_psi = bad;
  CHECK_THROWS_AS(cloning_machine(rule), std::invalid_argument);
  OffdiagRule offdiag;
  offdiag.kind = OffdiagRule::Kind::kInline;
  offdiag.inline_phi_prime = Eigen::VectorXcd::Zero(8);
  offdiag.inline_phi_double_prime = Eigen::VectorXcd::Zero(8);
  CHECK_THROWS_AS(custom_machine(offdiag), std::invalid_argument);
}

TEST_CASE("erasure machine swaps the deleted slot into the ancilla") {
  const BranchMachine machine = erasure_machine();
  std::mt19937_64 rng(42);
  const QubitBasis basis{uniform_angle(rng), 0.0};
  const Eigen::Vector2cd psi = basis_psi(basis);
  const Eigen::Vector2cd bar = basis_psi_bar(basis);

  const StateVector psibar = apply_branch(machine, basis, Branch::kPsiBar);
  CHECK((psibar.amplitudes() - kron3(psi, machine.sigma, bar))
            .cwiseAbs()
            .maxCoeff() < kEqTol);
  const StateVector barpsi = apply_branch(machine, basis, Branch::kBarPsi);
  CHECK((barpsi.amplitudes() - kron3(bar, machine.sigma, psi))
            .cwiseAbs()
            .maxCoeff() < kEqTol);
  const StateVector barbar = apply_branch(machine, basis, Branch::kBarBar);
  CHECK((barbar.amplitudes() - kron3(bar, machine.sigma, bar))
            .cwiseAbs()
            .maxCoeff() < kEqTol);
}

TEST_CASE("erasure branches equal the explicit swap oracle") {
  const BranchMachine machine = erasure_machine();
  const Eigen::MatrixXcd swap = swap45_matrix();
  std::mt19937_64 rng(43);
  for (int i = 0; i < 20; ++i) {
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
      const Eigen::VectorXcd input = kron3(c.q2, c.q4, machine.sigma);
      const Eigen::VectorXcd swapped = swap * input;
      CHECK((apply_branch(machine, basis, c.branch).amplitudes() - swapped)
                .cwiseAbs()
                .maxCoeff() < kEqTol);
      // swapping twice restores the pre-swap state
      CHECK(((swap * swapped) - input).cwiseAbs().maxCoeff() < kEqTol);
    }
  }
}

TEST_CASE("cloning machine duplicates the basis member") {
  const BranchMachine machine = cloning_machine();
  const StateVector comp =
      apply_branch(machine, QubitBasis{0.0, 0.0}, Branch::kPsiPsi);
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(8);
  expected(0) = 1.0;  // |0>|0>|A_psi = 0>
  CHECK((comp.amplitudes() - expected).cwiseAbs().maxCoeff() < kEqTol);

  const QubitBasis tilted{std::numbers::pi / 2.0, 0.0};
  const StateVector out = apply_branch(machine, tilted, Branch::kPsiPsi);
  const Eigen::Vector2cd psi = basis_psi(tilted);
  const Eigen::VectorXcd two_copies = kron3(psi, psi, psi);
  CHECK(std::abs(std::norm(two_copies.dot(out.amplitudes())) - 1.0) < kEqTol);
}

TEST_CASE("cloning the superposed member differs from the linear extension") {
  const BranchMachine machine = cloning_machine();
  const QubitBasis computational{0.0, 0.0};
  const QubitBasis tilted{std::numbers::pi / 2.0, 0.0};

  // Linear extension of the computational duplication rule maps
  // |x>|Sigma>|A> to |x>|x>|A_x>; on |+>|Sigma>|A> it yields a GHZ-type
  // state, not |+>|+>|+>.
  Eigen::MatrixXcd linear = Eigen::MatrixXcd::Zero(8, 8);
  for (Branch branch : {Branch::kPsiPsi, Branch::kBarBar}) {
    const bool is_psi = branch == Branch::kPsiPsi;
    const Eigen::Vector2cd member = is_psi ? basis_psi(computational)
                                           : basis_psi_bar(computational);
    const Eigen::VectorXcd input =
        kron3(member, machine.sigma, machine.ancilla_init);
    const Eigen::VectorXcd output =
        apply_branch(machine, computational, branch).amplitudes();
    linear += output * input.adjoint();
  }
  const Eigen::VectorXcd tilted_input =
      kron3(basis_psi(tilted), machine.sigma, machine.ancilla_init);
  const Eigen::VectorXcd linear_result = linear * tilted_input;
  const Eigen::VectorXcd machine_result =
      apply_branch(machine, tilted, Branch::kPsiPsi).amplitudes();
  CHECK((linear_result - machine_result).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("custom machine passes an inline GHZ state through") {
  OffdiagRule rule;
  rule.kind = OffdiagRule::Kind::kInline;
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = 1.0;
  ghz(7) = 1.0;  // unnormalized on purpose; the factory normalizes
  rule.inline_phi_prime = ghz;
  rule.inline_phi_double_prime = ghz;
  const BranchMachine machine = custom_machine(rule);
  const StateVector out =
      apply_branch(machine, QubitBasis{0.7, 0.0}, Branch::kPsiBar);
  Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(8);
  expected(0) = expected(7) = 1.0 / std::sqrt(2.0);
  CHECK((out.amplitudes() - expected).cwiseAbs().maxCoeff() < kEqTol);
}

TEST_CASE("every branch image is normalized") {
  std::mt19937_64 rng(44);
  OffdiagRule entangling;
  entangling.kind = OffdiagRule::Kind::kEntangling;
  const BranchMachine machines[4] = {
      deleting_machine(), erasure_machine(), cloning_machine(),
      deleting_machine(Eigen::Vector2cd(1, 0), Eigen::Vector2cd(1, 0),
                       entangling)};
  for (const auto& machine : machines) {
    for (int i = 0; i < 10; ++i) {
      const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
      for (Branch branch : {Branch::kPsiPsi, Branch::kBarBar, Branch::kPsiBar,
                            Branch::kBarPsi}) {
        const StateVector out = apply_branch(machine, basis, branch);
        CHECK(std::abs(out.amplitudes().squaredNorm() - 1.0) < kEqTol);
      }
    }
  }
}

TEST_CASE("apply_branch agrees with the independent branch oracle") {
  std::mt19937_64 rng(45);
  OffdiagRule entangling;
  entangling.kind = OffdiagRule::Kind::kEntangling;
  const BranchMachine machines[4] = {
      deleting_machine(), erasure_machine(), cloning_machine(),
      custom_machine(entangling)};
  for (const auto& machine : machines) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    for (Branch branch : {Branch::kPsiPsi, Branch::kBarBar, Branch::kPsiBar,
                          Branch::kBarPsi}) {
      CHECK((apply_branch(machine, basis, branch).amplitudes() -
             oracle::branch_image_brute(machine, basis, branch))
                .cwiseAbs()
                .maxCoeff() < kEqTol);
    }
  }
}

TEST_CASE("linear channel construction enforces trace preservation") {
  std::vector<Eigen::Matrix4cd> bad = {Eigen::Matrix4cd::Identity() * 0.5};
  CHECK_THROWS_AS(LinearChannel{bad}, std::invalid_argument);
  CHECK_THROWS_AS(LinearChannel{std::vector<Eigen::Matrix4cd>{}},
                  std::invalid_argument);
  CHECK_NOTHROW(identity_channel());
}

TEST_CASE("single-Kraus channels are unitary") {
  const LinearChannel channel = random_cptp_channel(1, 99);
  REQUIRE(channel.num_kraus() == 1);
  const Eigen::Matrix4cd k = channel.kraus()[0];
  CHECK(max_abs_diff(k.adjoint() * k, Eigen::Matrix4cd::Identity()) < kEqTol);
  CHECK(max_abs_diff(k * k.adjoint(), Eigen::Matrix4cd::Identity()) < kEqTol);
}

TEST_CASE("random channels are complete and deterministic per seed") {
  for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
    const LinearChannel a = random_cptp_channel(4, seed);
    const LinearChannel b = random_cptp_channel(4, seed);
    Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) {
      sum += a.kraus()[static_cast<std::size_t>(i)].adjoint() *
             a.kraus()[static_cast<std::size_t>(i)];
      CHECK(max_abs_diff(a.kraus()[static_cast<std::size_t>(i)],
                         b.kraus()[static_cast<std::size_t>(i)]) == 0.0);
    }
    CHECK(max_abs_diff(sum, Eigen::Matrix4cd::Identity()) < kEqTol);
  }
  const LinearChannel c = random_cptp_channel(4, 1);
  const LinearChannel d = random_cptp_channel(4, 2);
  CHECK(max_abs_diff(c.kraus()[0], d.kraus()[0]) > 1e-3);
}

TEST_CASE("channel application basics") {
  std::mt19937_64 rng(46);
  const Register reg = make_register({2, 4});
  const DensityMatrix rho = qdelsim::testing::random_density_matrix(reg, rng);

  const DensityMatrix same = apply_channel(identity_channel(), rho);
  CHECK(max_abs_diff(same.matrix(), rho.matrix()) < kEqTol);

  const DensityMatrix depolarized = apply_channel(depolarizing_channel(), rho);
  CHECK(max_abs_diff(depolarized.matrix(),
                     Eigen::Matrix4cd::Identity() / 4.0) < kEqTol);

  const DensityMatrix mixed = DensityMatrix::maximally_mixed(reg);
  CHECK(max_abs_diff(apply_channel(depolarizing_channel(), mixed).matrix(),
                     mixed.matrix()) < kEqTol);

  CHECK_THROWS_AS(
      apply_channel(identity_channel(),
                    DensityMatrix::maximally_mixed(make_register({1}))),
      std::invalid_argument);
}

TEST_CASE("random channels preserve the trace on random inputs") {
  std::mt19937_64 rng(47);
  const Register reg = make_register({2, 4});
  for (int i = 0; i < 50; ++i) {
    const LinearChannel channel =
        random_cptp_channel(1 + (i % 5), 500 + static_cast<std::uint64_t>(i));
    const DensityMatrix rho = qdelsim::testing::random_density_matrix(reg, rng);
    const DensityMatrix out = apply_channel(channel, rho);
    CHECK(std::abs(out.matrix().trace() - Complex(1.0, 0.0)) < kEqTol);
  }
}

TEST_CASE("entangling and passthrough rules give different machines") {
  OffdiagRule entangling;
  entangling.kind = OffdiagRule::Kind::kEntangling;
  const QubitBasis basis{std::numbers::pi / 3.0, 0.0};
  const Eigen::VectorXcd passthrough_image =
      apply_branch(deleting_machine(), basis, Branch::kPsiBar).amplitudes();
  const Eigen::VectorXcd entangling_image =
      apply_branch(deleting_machine(Eigen::Vector2cd(1, 0),
                                    Eigen::Vector2cd(1, 0), entangling),
                   basis, Branch::kPsiBar)
          .amplitudes();
  CHECK((passthrough_image - entangling_image).cwiseAbs().maxCoeff() > 0.1);
}
