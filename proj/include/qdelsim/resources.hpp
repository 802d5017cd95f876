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

#include <utility>

#include "qdelsim/core.hpp"

namespace qdelsim {

/// Measurement basis {|psi>, |psi_bar>} parameterized by a polar angle
/// theta and an azimuthal phase phi (phi = 0 gives the real-valued family
///   |psi>     = cos(theta/2)|0> + sin(theta/2)|1>
///   |psi_bar> = sin(theta/2)|0> - cos(theta/2)|1>).
struct QubitBasis {
  double theta{};
  double phi{};
};

/// Raw single-qubit amplitudes of the basis pair.
Eigen::Vector2cd basis_psi(const QubitBasis& b);
Eigen::Vector2cd basis_psi_bar(const QubitBasis& b);

/// The pair (|psi>, |psi_bar>) as labeled single-qubit states.
std::pair<StateVector, StateVector> basis_states(const QubitBasis& b,
                                                 QubitLabel q = {1});

StateVector make_qubit_state(QubitLabel q, const Eigen::Vector2cd& amplitudes);

/// (|01> - |10>)/sqrt(2) on the ordered register (q1, q2).
StateVector singlet(QubitLabel q1, QubitLabel q2);

/// The two shared singlets |Psi->_12 |Psi->_34 assembled from the four
/// branches of the tilted-basis expansion, on register (1,2,3,4). Equals
/// singlet(1,2) x singlet(3,4) up to a global phase for every basis.
StateVector expand_two_singlets(const QubitBasis& b);

}  // namespace qdelsim
