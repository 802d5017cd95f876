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

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace qdelsim {

using Complex = std::complex<double>;

/// Equality tolerance used throughout (states, matrices, identities).
inline constexpr double kEqTol = 1e-12;
/// Eigenvalue floor for positive-semidefiniteness checks.
inline constexpr double kPsdTol = 1e-10;
/// Largest register handled by this library.
inline constexpr int kMaxQubits = 5;

/// A particle label. Valid ids are 1..5; registers are ordered lists of
/// distinct labels, and all cross-register operations align by label,
/// never by implicit position.
struct QubitLabel {
  int id{};
  friend constexpr bool operator==(QubitLabel, QubitLabel) = default;
  friend constexpr auto operator<=>(QubitLabel, QubitLabel) = default;
};

using Register = std::vector<QubitLabel>;

Register make_register(std::initializer_list<int> ids);
std::string register_to_string(const Register& reg);

/// Throws std::invalid_argument on out-of-range ids, duplicates, or more
/// than kMaxQubits labels.
void validate_register(const Register& reg, bool allow_empty = false);

class DensityMatrix;

/// Pure state over an ordered register. Amplitudes are indexed with the
/// first register label as the most significant bit. Immutable; the
/// constructor rejects unnormalized data.
class StateVector {
 public:
  StateVector(Register reg, Eigen::VectorXcd amplitudes);

  const Register& reg() const noexcept { return reg_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  int num_qubits() const noexcept { return static_cast<int>(reg_.size()); }
  Eigen::Index dim() const noexcept { return amps_.size(); }

  DensityMatrix projector() const;

 private:
  Register reg_;
  Eigen::VectorXcd amps_;
};

/// Mixed state over an ordered register. The constructor enforces
/// Hermiticity and unit trace to 1e-12 and an eigenvalue floor of -1e-10,
/// so every DensityMatrix in the program is a physical state. An empty
/// register (the result of tracing everything out) is the 1x1 matrix [1].
class DensityMatrix {
 public:
  DensityMatrix(Register reg, Eigen::MatrixXcd matrix);

  const Register& reg() const noexcept { return reg_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return mat_; }
  int num_qubits() const noexcept { return static_cast<int>(reg_.size()); }
  Eigen::Index dim() const noexcept { return mat_.rows(); }

  static DensityMatrix maximally_mixed(Register reg);

 private:
  Register reg_;
  Eigen::MatrixXcd mat_;
};

/// Kronecker product; the first factor occupies the most significant index
/// block. Registers must be disjoint.
StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out the labels in `discard`, keeping the remaining labels in
/// their original order. Discarding every qubit yields the 1x1 matrix [1].
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitLabel>& discard);

/// D(rho, sigma) = (1/2) sum |eigenvalues(rho - sigma)|, in [0, 1].
/// Both inputs must live on the same register.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();
const Eigen::Matrix2cd& identity2();
/// pauli(0) = X, pauli(1) = Y, pauli(2) = Z.
const Eigen::Matrix2cd& pauli(int axis);

/// Two-qubit Pauli expansion rho = (1/4)(I + m.sigma x I + I x n.sigma
/// + sum_ij C_ij sigma_i x sigma_j).
struct PauliDecomposition {
  Eigen::Vector3d m;
  Eigen::Vector3d n;
  Eigen::Matrix3d correlation;
};

PauliDecomposition pauli_decompose(const DensityMatrix& rho);
DensityMatrix pauli_reconstruct(const PauliDecomposition& d,
                                Register reg = {{1}, {2}});

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Rotates v by the conjugate phase of its largest-magnitude entry, making
/// that entry real and nonnegative. Ties break on the lowest index.
Eigen::VectorXcd align_global_phase(const Eigen::VectorXcd& v);

/// Max entrywise deviation between a and b after aligning both global
/// phases. Zero (to tolerance) iff the vectors agree up to a U(1) factor.
double phase_aligned_deviation(const Eigen::VectorXcd& a,
                               const Eigen::VectorXcd& b);

}  // namespace qdelsim
