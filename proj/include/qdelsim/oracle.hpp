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

#include <vector>

#include "qdelsim/machines.hpp"
#include "qdelsim/resources.hpp"

// Brute-force reference implementations, written with explicit index
// arithmetic and kept independent of the label-based operations they are
// used to check. The main route assembles the full five-qubit
// post-machine state coherently and traces with index sums, whereas the
// protocol module averages post-measurement branches; agreement of the
// two routes is itself one of the checked identities.
namespace qdelsim::oracle {

/// Index-sum partial trace over the given 0-based qubit positions
/// (position 0 is the most significant bit). Plain double loop.
Eigen::MatrixXcd partial_trace_brute(const Eigen::MatrixXcd& matrix,
                                     int num_qubits,
                                     const std::vector<int>& discard_positions);

/// Branch image on (2,4,5) recomputed from the machine definition with
/// raw component loops; shares no code with apply_branch.
Eigen::VectorXcd branch_image_brute(const BranchMachine& machine,
                                    const QubitBasis& basis, Branch branch);

/// The full 32-dim post-machine state: the four-branch expansion of the
/// two singlets with each Bob-side branch replaced by its machine image,
/// assembled amplitude by amplitude on register order (1,2,3,4,5).
Eigen::VectorXcd output_state_brute(const BranchMachine& machine,
                                    const QubitBasis& basis);

/// Bob's (2,4) reduced state via the coherent route: full 32x32 projector
/// of output_state_brute, index-sum trace over qubits 1, 3 and 5.
Eigen::MatrixXcd bob_reduced_state_brute(const BranchMachine& machine,
                                         const QubitBasis& basis);

/// tr_5 |phi><phi| of the off-diagonal branch images, via index sums.
Eigen::MatrixXcd offdiag_reduced_brute(const BranchMachine& machine,
                                       const QubitBasis& basis, Branch branch);

}  // namespace qdelsim::oracle
