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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oneway/qcore.hpp"

namespace oneway {

/// Which of the four two-qubit basis states |b1 b2> the black box marks.
struct BlackBoxLabel {
  int b1 = 0;
  int b2 = 0;

  /// Parses "00", "01", "10" or "11".
  static BlackBoxLabel parse(std::string_view s);
  std::string str() const;
  int index() const { return 2 * b1 + b2; }
  bool operator==(const BlackBoxLabel&) const = default;
};

/// Black-box settings for B_1(alpha), B_4(beta). The phase oracle
/// CZ (Rz(-alpha) x Rz(-beta)) marks |b1 b2> when alpha = pi(1 - b2) and
/// beta = pi(1 - b1): 00 -> (pi,pi), 01 -> (0,pi), 10 -> (pi,0), 11 -> (0,0).
std::pair<double, double> label_to_angles(BlackBoxLabel label);

struct GroverBranch {
  std::array<int, 4> s;  // s1..s4
  double probability;
  BlackBoxLabel decoded;  // (s2 ^ s4, s3 ^ s1)
};

struct GroverResult {
  BlackBoxLabel label;
  double alpha;
  double beta;
  double noise;
  std::vector<GroverBranch> branches;  // 16 rows, s1 s2 s3 s4 lexicographic
  std::array<double, 4> decoded;       // indexed by decoded label
  double success;
  /// Joint probability that both black-box outcomes are 0.
  double no_ff_probability;
  /// Success rate within that subset when the readout is used without
  /// feedforward.
  double no_ff_success;
};

/// Box-frame cluster, independent depolarizing channels of strength p on
/// every qubit, then B_1(alpha), B_4(beta) and readout B_2(pi), B_3(pi).
/// Throws InvalidArgument unless 0 <= p <= 1.
GroverResult run_grover(BlackBoxLabel label, std::optional<double> noise = std::nullopt);

std::vector<std::pair<double, double>> success_curve(BlackBoxLabel label, const std::vector<double>& p_list);

/// rho -> (1 - p) rho + p Tr_q(rho) x I/2 on qubit q.
DensityMatrix depolarize(const DensityMatrix& rho, Qubit q, double p);

}  // namespace oneway
