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

#include "oneway/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "oneway/cluster.hpp"

namespace oneway {

namespace {

void require_qubits(const DensityMatrix& rho, int n, const char* what) {
  if (rho.n_qubits() != n) {
    throw DimensionError(std::string(what) + " needs a " + std::to_string(n) + "-qubit state, got " +
                         std::to_string(rho.n_qubits()));
  }
}

}  // namespace

double tangle(const DensityMatrix& rho) {
  require_qubits(rho, 2, "tangle");
  const Eigen::Matrix2cd sy = pauli(2);
  Matrix s(4, 4);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) s.block(2 * r, 2 * c, 2, 2) = sy(r, c) * sy;
  }
  // sqrt(eig(rho S rho* S)) are the singular values of W^T S W with
  // rho = W W^dagger. Working with W avoids taking square roots of
  // eigenvalues that are zero up to rounding, which costs half the digits.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const double floor = 1e-14 * std::max(1.0, es.eigenvalues().maxCoeff());
  Matrix w(4, 0);
  for (int i = 0; i < 4; ++i) {
    const double v = es.eigenvalues()[i];
    if (v > floor) {
      w.conservativeResize(Eigen::NoChange, w.cols() + 1);
      w.col(w.cols() - 1) = std::sqrt(v) * es.eigenvectors().col(i);
    }
  }
  std::vector<double> l(4, 0.0);
  if (w.cols() > 0) {
    const Matrix t = w.transpose() * s * w;
    Eigen::JacobiSVD<Matrix> svd(t);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) l[i] = svd.singularValues()[i];
  }
  std::sort(l.begin(), l.end(), std::greater<>());
  const double c = std::max(0.0, l[0] - l[1] - l[2] - l[3]);
  return std::clamp(c * c, 0.0, 1.0);
}

Matrix witness_operator() {
  const double r = 0.70710678118654752440;
  Vector phi_p = Vector::Zero(4), phi_m = Vector::Zero(4);
  phi_p << r, 0, 0, r;
  phi_m << r, 0, 0, -r;
  Matrix w = 0.25 * Matrix::Identity(8, 8);
  w.block(0, 0, 4, 4) -= 0.5 * phi_p * phi_p.adjoint();
  w.block(4, 4, 4, 4) -= 0.5 * phi_m * phi_m.adjoint();
  return w;
}

double witness_value(const DensityMatrix& rho) {
  require_qubits(rho, 3, "witness_value");
  return (witness_operator() * rho.matrix()).trace().real();
}

std::vector<double> ppt_eigenvalues(const DensityMatrix& rho) {
  require_qubits(rho, 2, "ppt_eigenvalues");
  Matrix pt(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

double chsh_max(const DensityMatrix& rho) {
  require_qubits(rho, 2, "chsh_max");
  Eigen::Matrix3d t;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      Matrix pij(4, 4);
      const Eigen::Matrix2cd a = pauli(i), b = pauli(j);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) pij.block(2 * r, 2 * c, 2, 2) = a(r, c) * b;
      }
      t(i - 1, j - 1) = (rho.matrix() * pij).trace().real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  const auto& m = es.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, m[2] + m[1]));
}

FidelityReport fidelity_report(const DensityMatrix& rho, const PureState& target) {
  FidelityReport r{fidelity_pure(rho, target), std::nullopt, std::nullopt};
  if (target.n_qubits() == 4) r.exceeds_biseparable = r.fidelity > kBiseparableBound;
  if (target.n_qubits() == 3) r.exceeds_ghz_local_realism = r.fidelity > kGhzLocalRealismBound;
  return r;
}

PureState projected_cluster_ghz_target() {
  Vector v = Vector::Zero(8);
  v[0b000] = 0.5;
  v[0b011] = 0.5;
  v[0b100] = 0.5;
  v[0b111] = -0.5;
  return PureState(3, std::move(v));
}

double ghz_fidelity(const DensityMatrix& rho) {
  require_qubits(rho, 3, "ghz_fidelity");
  return fidelity_pure(rho, projected_cluster_ghz_target());
}

MetricReport analyze(const DensityMatrix& rho) {
  MetricReport r;
  r.n_qubits = rho.n_qubits();
  auto pair_metrics = [&r](const DensityMatrix& two) {
    r.tangle = tangle(two);
    r.ppt = ppt_eigenvalues(two);
    r.chsh = chsh_max(two);
  };
  switch (rho.n_qubits()) {
    case 4:
      r.fidelity = fidelity_report(rho, lab_cluster_state());
      r.witness = witness_value(partial_trace(rho, {2, 3, 4}));
      r.witness_qubits = "2 3 4";
      pair_metrics(partial_trace(rho, {3, 4}));
      r.pair_qubits = "3 4";
      break;
    case 3: {
      r.witness = witness_value(rho);
      r.witness_qubits = "1 2 3";
      r.ghz_fidelity = ghz_fidelity(rho);
      r.fidelity = fidelity_report(rho, projected_cluster_ghz_target());
      pair_metrics(partial_trace(rho, {2, 3}));
      r.pair_qubits = "2 3";
      break;
    }
    case 2:
      pair_metrics(rho);
      r.pair_qubits = "1 2";
      break;
    default:
      throw DimensionError("analyze supports 2, 3 or 4 qubits");
  }
  return r;
}

}  // namespace oneway
