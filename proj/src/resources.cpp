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

#include "qdelsim/resources.hpp"

#include <cmath>
#include <stdexcept>

namespace qdelsim {

Eigen::Vector2cd basis_psi(const QubitBasis& b) {
  const double c = std::cos(b.theta / 2.0);
  const double s = std::sin(b.theta / 2.0);
  const Complex phase = std::polar(1.0, b.phi);
  return Eigen::Vector2cd(Complex(c, 0.0), phase * s);
}

Eigen::Vector2cd basis_psi_bar(const QubitBasis& b) {
  const double c = std::cos(b.theta / 2.0);
  const double s = std::sin(b.theta / 2.0);
  const Complex phase = std::polar(1.0, b.phi);
  return Eigen::Vector2cd(Complex(s, 0.0), -phase * c);
}

StateVector make_qubit_state(QubitLabel q, const Eigen::Vector2cd& amplitudes) {
  return StateVector({q}, amplitudes);
}

std::pair<StateVector, StateVector> basis_states(const QubitBasis& b,
                                                 QubitLabel q) {
  return {make_qubit_state(q, basis_psi(b)), make_qubit_state(q, basis_psi_bar(b))};
}

StateVector singlet(QubitLabel q1, QubitLabel q2) {
  if (q1 == q2) {
    throw std::invalid_argument("singlet requires two distinct qubits, got " +
                                std::to_string(q1.id) + " twice");
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd amps(4);
  amps << 0.0, inv_sqrt2, -inv_sqrt2, 0.0;
  return StateVector({q1, q2}, std::move(amps));
}

StateVector expand_two_singlets(const QubitBasis& b) {
  const auto [psi1, bar1] = basis_states(b, {1});
  const auto [psi2, bar2] = basis_states(b, {2});
  const auto [psi3, bar3] = basis_states(b, {3});
  const auto [psi4, bar4] = basis_states(b, {4});

  auto term = [](const StateVector& q1, const StateVector& q2,
                 const StateVector& q3, const StateVector& q4) {
    return tensor_product(tensor_product(tensor_product(q1, q2), q3), q4)
        .amplitudes();
  };

  // Branches ordered by Alice's (1,3) outcome: (psi,psi), (bar,bar),
  // (bar,psi), (psi,bar); the latter two enter with a minus sign.
  Eigen::VectorXcd amps = 0.5 * (term(psi1, bar2, psi3, bar4) +
                                 term(bar1, psi2, bar3, psi4) -
                                 term(bar1, psi2, psi3, bar4) -
                                 term(psi1, bar2, bar3, psi4));
  return StateVector(make_register({1, 2, 3, 4}), std::move(amps));
}

}  // namespace qdelsim
