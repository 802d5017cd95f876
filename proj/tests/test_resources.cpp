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
#include "qdelsim/resources.hpp"

using namespace qdelsim;
using qdelsim::testing::uniform_angle;

TEST_CASE("basis pair at theta = 0") {
  const QubitBasis basis{0.0, 0.0};
  const Eigen::Vector2cd psi = basis_psi(basis);
  const Eigen::Vector2cd bar = basis_psi_bar(basis);
  CHECK(std::abs(psi(0) - 1.0) < kEqTol);
  CHECK(std::abs(psi(1)) < kEqTol);
  CHECK(std::abs(bar(0)) < kEqTol);
  CHECK(std::abs(bar(1) + 1.0) < kEqTol);  // |psi_bar> = -|1>
}

TEST_CASE("basis pair at theta = pi") {
  const QubitBasis basis{std::numbers::pi, 0.0};
  const Eigen::Vector2cd psi = basis_psi(basis);
  const Eigen::Vector2cd bar = basis_psi_bar(basis);
  CHECK(std::abs(psi(1) - 1.0) < kEqTol);
  CHECK(std::abs(bar(0) - 1.0) < kEqTol);
}

TEST_CASE("basis pair is orthonormal and complete for all parameters") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    const Eigen::Vector2cd psi = basis_psi(basis);
    const Eigen::Vector2cd bar = basis_psi_bar(basis);
    CHECK(std::abs(psi.squaredNorm() - 1.0) < kEqTol);
    CHECK(std::abs(bar.squaredNorm() - 1.0) < kEqTol);
    CHECK(std::abs(psi.dot(bar)) < kEqTol);
    const Eigen::Matrix2cd completeness =
        psi * psi.adjoint() + bar * bar.adjoint();
    CHECK(max_abs_diff(completeness, identity2()) < kEqTol);
  }
}

TEST_CASE("singlet amplitudes and label validation") {
  const StateVector pair = singlet({1}, {2});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd expected(4);
  expected << 0.0, inv_sqrt2, -inv_sqrt2, 0.0;
  CHECK((pair.amplitudes() - expected).cwiseAbs().maxCoeff() < kEqTol);
  CHECK_THROWS_AS(singlet({2}, {2}), std::invalid_argument);
}

TEST_CASE("singlet marginals are maximally mixed") {
  const DensityMatrix rho = singlet({3}, {4}).projector();
  for (int id : {3, 4}) {
    const DensityMatrix marginal = partial_trace(rho, {{id}});
    CHECK(max_abs_diff(marginal.matrix(),
                       Eigen::Matrix2cd::Identity() / 2.0) < kEqTol);
  }
}

TEST_CASE("singlet is invariant under identical local unitaries") {
  std::mt19937_64 rng(32);
  const Eigen::VectorXcd reference = singlet({1}, {2}).amplitudes();
  for (int i = 0; i < 50; ++i) {
    const Eigen::MatrixXcd u = haar_unitary(2, rng);
    const Eigen::VectorXcd rotated =
        Eigen::kroneckerProduct(u, u) * reference;
    CHECK(phase_aligned_deviation(rotated, reference) < kEqTol);
  }
}

TEST_CASE("two-singlet expansion at theta = 0 is exact") {
  const StateVector expansion = expand_two_singlets(QubitBasis{0.0, 0.0});
  const StateVector product =
      tensor_product(singlet({1}, {2}), singlet({3}, {4}));
  CHECK(expansion.reg() == product.reg());
  CHECK((expansion.amplitudes() - product.amplitudes()).cwiseAbs().maxCoeff() <
        kEqTol);
}

TEST_CASE("two-singlet expansion matches the product at a generic angle") {
  const StateVector expansion = expand_two_singlets(QubitBasis{1.234, 0.0});
  const StateVector product =
      tensor_product(singlet({1}, {2}), singlet({3}, {4}));
  CHECK(phase_aligned_deviation(expansion.amplitudes(),
                                product.amplitudes()) < kEqTol);
}

TEST_CASE("each expansion branch carries squared weight 1/4") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 10; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    const Eigen::VectorXcd state = expand_two_singlets(basis).amplitudes();
    const auto [psi1, bar1] = basis_states(basis, {1});
    const auto [psi2, bar2] = basis_states(basis, {2});
    const auto [psi3, bar3] = basis_states(basis, {3});
    const auto [psi4, bar4] = basis_states(basis, {4});
    auto weight = [&](const StateVector& q1, const StateVector& q2,
                      const StateVector& q3, const StateVector& q4) {
      const Eigen::VectorXcd branch =
          tensor_product(tensor_product(tensor_product(q1, q2), q3), q4)
              .amplitudes();
      return std::norm(branch.dot(state));
    };
    CHECK(weight(psi1, bar2, psi3, bar4) == doctest::Approx(0.25));
    CHECK(weight(bar1, psi2, bar3, psi4) == doctest::Approx(0.25));
    CHECK(weight(bar1, psi2, psi3, bar4) == doctest::Approx(0.25));
    CHECK(weight(psi1, bar2, bar3, psi4) == doctest::Approx(0.25));
  }
}

TEST_CASE("expansion equals the product across the sampled parameter space") {
  std::mt19937_64 rng(34);
  const Eigen::VectorXcd product =
      tensor_product(singlet({1}, {2}), singlet({3}, {4})).amplitudes();
  for (int i = 0; i < 100; ++i) {
    const QubitBasis basis{uniform_angle(rng), 0.0};
    CHECK(phase_aligned_deviation(expand_two_singlets(basis).amplitudes(),
                                  product) < kEqTol);
  }
  for (int i = 0; i < 20; ++i) {
    const QubitBasis basis{uniform_angle(rng), uniform_angle(rng)};
    CHECK(phase_aligned_deviation(expand_two_singlets(basis).amplitudes(),
                                  product) < kEqTol);
  }
}
