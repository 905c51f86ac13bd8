// Copyright 2026 The oneway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oneway/random.hpp"

#include <Eigen/QR>

namespace oneway::rnd {

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

PureState haar_state(int n_qubits, Engine& rng) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return PureState(n_qubits, ginibre(d, 1, rng).col(0), true);
}

Operator haar_unitary(int n_qubits, Engine& rng) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
  }
  return Operator(n_qubits, std::move(q), true);
}

DensityMatrix wishart_density(int n_qubits, Engine& rng) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  const Matrix g = ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n_qubits, std::move(rho));
}

PureState haar_product_state(int n_qubits, Engine& rng) {
  PureState out = haar_state(1, rng);
  for (int q = 1; q < n_qubits; ++q) out = tensor(out, haar_state(1, rng));
  return out;
}

}  // namespace oneway::rnd
