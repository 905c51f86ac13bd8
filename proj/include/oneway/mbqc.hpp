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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oneway/cluster.hpp"
#include "oneway/qcore.hpp"

namespace oneway {

/// B(alpha) = {(|0> + e^{i alpha}|1>)/sqrt2, (|0> - e^{i alpha}|1>)/sqrt2}, or
/// the computational basis {|0>, |1>}. Outcome 0 is the first vector.
struct MeasurementBasis {
  enum class Kind { Equatorial, Computational };
  Kind kind = Kind::Equatorial;
  double angle = 0.0;

  static MeasurementBasis equatorial(double alpha) { return {Kind::Equatorial, alpha}; }
  static MeasurementBasis computational() { return {Kind::Computational, 0.0}; }

  /// Basis vector for outcome s (0 or 1), measured with angle `theta`
  /// in place of the nominal one.
  PureState vector(int s, double theta) const;
  PureState vector(int s) const { return vector(s, angle); }
};

struct MeasurementStep {
  Qubit qubit;
  MeasurementBasis basis;
};

enum class OutcomePolicy { PostSelectZeros, EnumerateAll, Feedforward };

std::string_view to_string(OutcomePolicy p);
OutcomePolicy parse_policy(std::string_view name);

/// Chain patterns walk a 1D cluster in order and leave the output on the
/// final qubit; only they admit byproduct correction.
enum class PatternTopology { Chain, General };

class MeasurementPattern {
 public:
  /// Throws InvalidArgument if a qubit appears twice.
  MeasurementPattern(std::vector<MeasurementStep> steps, OutcomePolicy policy,
                     PatternTopology topology = PatternTopology::General);

  const std::vector<MeasurementStep>& steps() const { return steps_; }
  OutcomePolicy policy() const { return policy_; }
  PatternTopology topology() const { return topology_; }

 private:
  std::vector<MeasurementStep> steps_;
  OutcomePolicy policy_;
  PatternTopology topology_;
};

struct OutcomeRecord {
  std::map<Qubit, int> bits;
  double probability = 0.0;
  /// State on the unmeasured qubits; empty if the branch has zero
  /// probability or nothing is left.
  std::optional<PureState> residual;
  std::vector<Qubit> residual_qubits;
  /// Angle actually used at each step (differs from nominal when adapted).
  std::vector<double> angles_used;
};

/// PostSelectZeros: the all-zeros branch (throws InvalidArgument if it has
/// zero probability). EnumerateAll: all 2^k branches, non-adaptive, in
/// lexicographic order of the bits taken in step order. Feedforward: one
/// record whose residual is the byproduct-corrected output; its probability
/// is the total over branches and its bits are all zero.
std::vector<OutcomeRecord> run_pattern(const PureState& state, const MeasurementPattern& pattern);

/// Every branch of a chain pattern with angles adapted on the fly:
/// theta_j = (-1)^x alpha_j where x is the running X byproduct.
std::vector<OutcomeRecord> enumerate_adaptive(const PureState& state, const MeasurementPattern& pattern);

/// Removes the Pauli byproduct Z^z X^x accumulated along a chain. A branch
/// whose recorded angles do not follow the adaptation rule cannot be
/// corrected by a Pauli and is rejected with InvalidArgument; non-chain
/// patterns raise Unsupported.
PureState apply_byproducts(const OutcomeRecord& branch, const MeasurementPattern& pattern);

/// Which frame the measurement angles refer to. The lin4 experiment sets its
/// analyser angles on the photons directly, whereas the rotation formula is
/// written for the linear-cluster frame; the two differ by H on qubit 1.
enum class SettingsFrame { Cluster, Lab };

/// Named circuit request, as read from a pattern document.
struct PatternSpec {
  std::string cluster;  // lin3, lin4, box or horseshoe
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> gamma;  // lin4 only
  OutcomePolicy policy = OutcomePolicy::PostSelectZeros;
  SettingsFrame settings = SettingsFrame::Cluster;  // lin4 only
};

struct PreparedPattern {
  PureState state;  // resource state expressed in `frame`
  MeasurementPattern pattern;
  Frame frame;
};

/// Resource state, measurement steps and frame for a named circuit. lin3 and
/// cluster-frame lin4 are chains; lab-frame lin4, box and horseshoe are
/// general patterns. Throws InvalidArgument on an unknown name or a missing
/// gamma for lin4.
PreparedPattern prepare_pattern(const PatternSpec& spec);

struct CircuitOutput {
  PureState cluster_output;          // in the frame the angles refer to
  std::vector<Qubit> cluster_qubits;
  PureState lab_output;
  std::vector<Qubit> lab_qubits;
  FrameTag frame;
  double probability;                // of the post-selected all-zeros branch
};

/// 3-qubit chain: cluster qubit 1 removed by a Z measurement (outcome 0, the
/// lab |+>), then B_2(alpha), B_3(beta). Output on qubit 4.
CircuitOutput circuit_lin3(double alpha, double beta);
/// B_1(alpha), B_2(beta), B_3(gamma) with the output on qubit 4.
CircuitOutput circuit_lin4(double alpha, double beta, double gamma,
                           SettingsFrame settings = SettingsFrame::Cluster);
/// Box frame: B_1(alpha), B_4(beta); output on box qubits 2, 3.
CircuitOutput circuit_box(double alpha, double beta);
/// Linear-cluster frame: B_2(alpha), B_3(beta); output on qubits 1, 4.
CircuitOutput circuit_horseshoe(double alpha, double beta);

/// Circuit-model references.
PureState oracle_lin3(double alpha, double beta);                // Rx(-b) Rz(-a) |+>
PureState oracle_lin4(double alpha, double beta, double gamma);  // H Rz(-g) Rx(-b) Rz(-a) |+>
/// Lab-frame output of lin4 when the angles are set on the photons:
/// Rz(-g) H Rz(-(a + b)) |+>. Qubit 1 then acts as a Z-type rather than an
/// X-type step, so alpha and beta add.
PureState oracle_lin4_lab_settings(double alpha, double beta, double gamma);
PureState oracle_box(double alpha, double beta);                 // CZ (H x H)(Rz(-a) x Rz(-b)) CZ |++>
PureState oracle_horseshoe(double alpha, double beta);           // (H x H)(Rz(-a) x Rz(-b)) CZ |++>

}  // namespace oneway
