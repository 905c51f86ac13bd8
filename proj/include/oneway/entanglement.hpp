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

#pragma once

#include <optional>
#include <vector>

#include "oneway/qcore.hpp"

namespace oneway {

inline constexpr double kBiseparableBound = 0.5;
inline constexpr double kGhzLocalRealismBound = 0.56;

/// Squared concurrence [max(0, l1 - l2 - l3 - l4)]^2 where l_i are the square
/// roots of the eigenvalues of rho S rho* S, S = sigma_y x sigma_y, taken in
/// decreasing order. Since rho is Hermitian, rho* equals rho^T, so this is
/// also the transpose form. Clamped to [0, 1].
double tangle(const DensityMatrix& rho);

/// The three-qubit witness
/// W = I/4 - (|H><H| x |Phi+><Phi+| + |V><V| x |Phi-><Phi-|)/2
/// on qubits ordered (2, 3, 4).
Matrix witness_operator();
double witness_value(const DensityMatrix& rho);

/// Eigenvalues of the partial transpose on the second qubit, descending.
std::vector<double> ppt_eigenvalues(const DensityMatrix& rho);

/// Maximal CHSH value 2 sqrt(m1 + m2) over the two largest eigenvalues of
/// T^T T, T_ij = Tr(rho sigma_i x sigma_j).
double chsh_max(const DensityMatrix& rho);

struct FidelityReport {
  double fidelity;
  /// Set for 4-qubit targets.
  std::optional<bool> exceeds_biseparable;
  /// Set for 3-qubit targets.
  std::optional<bool> exceeds_ghz_local_realism;
};

FidelityReport fidelity_report(const DensityMatrix& rho, const PureState& target);

/// (|HHH> + |HVV> + |VHH> - |VVV>)/2: what projecting photon 1 of the
/// source state onto |+> leaves behind. Local-unitarily a GHZ state.
PureState projected_cluster_ghz_target();
double ghz_fidelity(const DensityMatrix& rho);

struct MetricReport {
  int n_qubits;
  std::optional<FidelityReport> fidelity;
  std::optional<double> tangle;
  std::optional<double> witness;
  std::optional<std::vector<double>> ppt;
  std::optional<double> chsh;
  std::optional<double> ghz_fidelity;
  /// Which qubits each quantity refers to, space-separated.
  std::string witness_qubits;
  std::string pair_qubits;
};

/// Every metric that applies to rho's size. Four qubits: fidelity to the
/// source state, witness on the reduction to (2,3,4) and two-qubit metrics
/// on (3,4). Three qubits: witness, GHZ fidelity and two-qubit metrics on
/// the last two. Two qubits: tangle, PPT and CHSH.
MetricReport analyze(const DensityMatrix& rho);

}  // namespace oneway
