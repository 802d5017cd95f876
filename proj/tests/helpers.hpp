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

#include <random>

#include "qdelsim/core.hpp"

namespace qdelsim::testing {

inline Eigen::VectorXcd random_state(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = Complex(gauss(rng), gauss(rng));
  }
  return v / v.norm();
}

// Random mixed state via V V^dag with trace normalization.
inline DensityMatrix random_density_matrix(const Register& reg,
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

inline double uniform_angle(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(
      0.0, 2.0 * 3.14159265358979323846)(rng);
}

}  // namespace qdelsim::testing
