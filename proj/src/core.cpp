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

#include "qdelsim/core.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qdelsim {

namespace {

Register merged_register(const Register& a, const Register& b) {
  std::set<int> seen;
  for (const auto& q : a) seen.insert(q.id);
  for (const auto& q : b) {
    if (seen.contains(q.id)) {
      throw std::invalid_argument("tensor_product: label collision on qubit " +
                                  std::to_string(q.id) + " between registers " +
                                  register_to_string(a) + " and " +
                                  register_to_string(b));
    }
  }
  Register merged = a;
  merged.insert(merged.end(), b.begin(), b.end());
  validate_register(merged);
  return merged;
}

}  // namespace

Register make_register(std::initializer_list<int> ids) {
  Register reg;
  reg.reserve(ids.size());
  for (int id : ids) reg.push_back(QubitLabel{id});
  validate_register(reg, /*allow_empty=*/true);
  return reg;
}

std::string register_to_string(const Register& reg) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (i > 0) out << ',';
    out << reg[i].id;
  }
  out << ')';
  return out.str();
}

void validate_register(const Register& reg, bool allow_empty) {
  if (reg.empty() && !allow_empty) {
    throw std::invalid_argument("register must contain at least one qubit");
  }
  if (reg.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("register " + register_to_string(reg) +
                                " exceeds the maximum of " +
                                std::to_string(kMaxQubits) + " qubits");
  }
  std::set<int> seen;
  for (const auto& q : reg) {
    if (q.id < 1 || q.id > kMaxQubits) {
      throw std::invalid_argument("qubit label " + std::to_string(q.id) +
                                  " outside the valid range 1.." +
                                  std::to_string(kMaxQubits));
    }
    if (!seen.insert(q.id).second) {
      throw std::invalid_argument("duplicate qubit label " +
                                  std::to_string(q.id) + " in register " +
                                  register_to_string(reg));
    }
  }
}

StateVector::StateVector(Register reg, Eigen::VectorXcd amplitudes)
    : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
  validate_register(reg_);
  const Eigen::Index expected = Eigen::Index{1} << reg_.size();
  if (amps_.size() != expected) {
    throw std::invalid_argument(
        "state on register " + register_to_string(reg_) + " needs " +
        std::to_string(expected) + " amplitudes, got " +
        std::to_string(amps_.size()));
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kEqTol) {
    throw std::invalid_argument("state on register " +
                                register_to_string(reg_) +
                                " is not normalized: |norm^2 - 1| = " +
                                std::to_string(std::abs(norm2 - 1.0)));
  }
}

DensityMatrix StateVector::projector() const {
  return DensityMatrix(reg_, amps_ * amps_.adjoint());
}

DensityMatrix::DensityMatrix(Register reg, Eigen::MatrixXcd matrix)
    : reg_(std::move(reg)), mat_(std::move(matrix)) {
  validate_register(reg_, /*allow_empty=*/true);
  const Eigen::Index expected = Eigen::Index{1} << reg_.size();
  if (mat_.rows() != expected || mat_.cols() != expected) {
    throw std::invalid_argument(
        "density matrix on register " + register_to_string(reg_) +
        " must be " + std::to_string(expected) + "x" +
        std::to_string(expected));
  }
  const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kEqTol) {
    throw std::invalid_argument("matrix is not Hermitian: residual " +
                                std::to_string(herm));
  }
  const double trace_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (trace_err > kEqTol) {
    throw std::invalid_argument("matrix trace differs from 1 by " +
                                std::to_string(trace_err));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      mat_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol) {
    throw std::invalid_argument("matrix has negative eigenvalue " +
                                std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Register reg) {
  validate_register(reg);
  const Eigen::Index dim = Eigen::Index{1} << reg.size();
  return DensityMatrix(
      std::move(reg),
      Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  Register merged = merged_register(a.reg(), b.reg());
  Eigen::VectorXcd amps =
      Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
  return StateVector(std::move(merged), std::move(amps));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Register merged = merged_register(a.reg(), b.reg());
  Eigen::MatrixXcd mat = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return DensityMatrix(std::move(merged), std::move(mat));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitLabel>& discard) {
  const Register& reg = rho.reg();
  const int n = rho.num_qubits();

  std::set<int> discard_ids;
  for (const auto& q : discard) {
    if (!discard_ids.insert(q.id).second) {
      throw std::invalid_argument("partial_trace: duplicate label " +
                                  std::to_string(q.id) + " in discard set");
    }
    if (std::find(reg.begin(), reg.end(), q) == reg.end()) {
      throw std::invalid_argument("partial_trace: label " +
                                  std::to_string(q.id) +
                                  " not in register " + register_to_string(reg));
    }
  }

  Register kept;
  std::vector<int> kept_pos, disc_pos;
  for (int p = 0; p < n; ++p) {
    if (discard_ids.contains(reg[p].id)) {
      disc_pos.push_back(p);
    } else {
      kept.push_back(reg[p]);
      kept_pos.push_back(p);
    }
  }

  const int k = static_cast<int>(kept_pos.size());
  const int d = static_cast<int>(disc_pos.size());
  const Eigen::Index out_dim = Eigen::Index{1} << k;

  auto full_index = [&](Eigen::Index kept_bits, Eigen::Index disc_bits) {
    Eigen::Index idx = 0;
    for (int i = 0; i < k; ++i) {
      if ((kept_bits >> (k - 1 - i)) & 1) idx |= Eigen::Index{1}
                                                 << (n - 1 - kept_pos[i]);
    }
    for (int i = 0; i < d; ++i) {
      if ((disc_bits >> (d - 1 - i)) & 1) idx |= Eigen::Index{1}
                                                 << (n - 1 - disc_pos[i]);
    }
    return idx;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  const Eigen::Index disc_dim = Eigen::Index{1} << d;
  for (Eigen::Index r = 0; r < out_dim; ++r) {
    for (Eigen::Index c = 0; c < out_dim; ++c) {
      Complex sum = 0.0;
      for (Eigen::Index e = 0; e < disc_dim; ++e) {
        sum += rho.matrix()(full_index(r, e), full_index(c, e));
      }
      out(r, c) = sum;
    }
  }
  return DensityMatrix(std::move(kept), std::move(out));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.reg() != sigma.reg()) {
    throw std::invalid_argument("trace_distance: register mismatch " +
                                register_to_string(rho.reg()) + " vs " +
                                register_to_string(sigma.reg()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      rho.matrix() - sigma.matrix(), Eigen::EigenvaluesOnly);
  const double distance = 0.5 * solver.eigenvalues().cwiseAbs().sum();
  return std::clamp(distance, 0.0, 1.0);
}

const Eigen::Matrix2cd& pauli_x() {
  static const Eigen::Matrix2cd m =
      (Eigen::Matrix2cd() << 0.0, 1.0, 1.0, 0.0).finished();
  return m;
}

const Eigen::Matrix2cd& pauli_y() {
  static const Eigen::Matrix2cd m =
      (Eigen::Matrix2cd() << Complex(0, 0), Complex(0, -1), Complex(0, 1),
       Complex(0, 0))
          .finished();
  return m;
}

const Eigen::Matrix2cd& pauli_z() {
  static const Eigen::Matrix2cd m =
      (Eigen::Matrix2cd() << 1.0, 0.0, 0.0, -1.0).finished();
  return m;
}

const Eigen::Matrix2cd& identity2() {
  static const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  return m;
}

const Eigen::Matrix2cd& pauli(int axis) {
  switch (axis) {
    case 0:
      return pauli_x();
    case 1:
      return pauli_y();
    case 2:
      return pauli_z();
    default:
      throw std::invalid_argument("pauli axis must be 0, 1 or 2");
  }
}

PauliDecomposition pauli_decompose(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) {
    throw std::invalid_argument(
        "pauli_decompose requires a two-qubit state, got register " +
        register_to_string(rho.reg()));
  }
  auto real_trace = [&](const Eigen::Matrix4cd& op) {
    const Complex t = (rho.matrix() * op).trace();
    if (std::abs(t.imag()) >= kEqTol) {
      throw std::logic_error("pauli_decompose: non-real expectation value " +
                             std::to_string(t.imag()));
    }
    return t.real();
  };

  PauliDecomposition d;
  for (int i = 0; i < 3; ++i) {
    d.m(i) = real_trace(Eigen::kroneckerProduct(pauli(i), identity2()));
    d.n(i) = real_trace(Eigen::kroneckerProduct(identity2(), pauli(i)));
    for (int j = 0; j < 3; ++j) {
      d.correlation(i, j) =
          real_trace(Eigen::kroneckerProduct(pauli(i), pauli(j)));
    }
  }
  return d;
}

DensityMatrix pauli_reconstruct(const PauliDecomposition& d, Register reg) {
  if (reg.size() != 2) {
    throw std::invalid_argument(
        "pauli_reconstruct requires a two-qubit register");
  }
  Eigen::Matrix4cd mat = Eigen::Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    mat += d.m(i) * Eigen::kroneckerProduct(pauli(i), identity2());
    mat += d.n(i) * Eigen::kroneckerProduct(identity2(), pauli(i));
    for (int j = 0; j < 3; ++j) {
      mat += d.correlation(i, j) * Eigen::kroneckerProduct(pauli(i), pauli(j));
    }
  }
  return DensityMatrix(std::move(reg), 0.25 * mat);
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd align_global_phase(const Eigen::VectorXcd& v) {
  Eigen::Index argmax = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best + kEqTol) {
      best = mag;
      argmax = i;
    }
  }
  if (best <= 0.0) return v;
  const Complex phase = v(argmax) / std::abs(v(argmax));
  return v * std::conj(phase);
}

double phase_aligned_deviation(const Eigen::VectorXcd& a,
                               const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("phase_aligned_deviation: size mismatch");
  }
  return (align_global_phase(a) - align_global_phase(b)).cwiseAbs().maxCoeff();
}

}  // namespace qdelsim
