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

#include "oneway/grover.hpp"

#include <algorithm>
#include <numbers>

#include "oneway/cluster.hpp"
#include "oneway/mbqc.hpp"

namespace oneway {

BlackBoxLabel BlackBoxLabel::parse(std::string_view s) {
  if (s.size() != 2 || (s[0] != '0' && s[0] != '1') || (s[1] != '0' && s[1] != '1')) {
    throw InvalidArgument("black-box label must be one of 00, 01, 10, 11 (got '" + std::string(s) + "')");
  }
  return {s[0] - '0', s[1] - '0'};
}

std::string BlackBoxLabel::str() const { return std::string{static_cast<char>('0' + b1), static_cast<char>('0' + b2)}; }

std::pair<double, double> label_to_angles(BlackBoxLabel label) {
  const double pi = std::numbers::pi;
  return {pi * (1 - label.b2), pi * (1 - label.b1)};
}

DensityMatrix depolarize(const DensityMatrix& rho, Qubit q, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("depolarizing probability must lie in [0,1]");
  if (p == 0.0) return rho;
  // (1 - p) rho + p/4 sum_P P rho P over the four Paulis equals the
  // replacement of qubit q by I/2 with probability p.
  const int n = rho.n_qubits();
  const std::array<Qubit, 1> t{q};
  Matrix acc = (1.0 - p) * rho.matrix();
  for (int k = 0; k < 4; ++k) {
    const Matrix pk = embed(Operator(1, pauli(k), true), t, n);
    acc += (p / 4.0) * pk * rho.matrix() * pk.adjoint();
  }
  return DensityMatrix(n, std::move(acc));
}

GroverResult run_grover(BlackBoxLabel label, std::optional<double> noise) {
  const double p = noise.value_or(0.0);
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("noise must lie in [0,1]");
  const auto [alpha, beta] = label_to_angles(label);
  const double pi = std::numbers::pi;

  const PureState box = to_frame(lab_cluster_state(), Frame::make(FrameTag::Lab), Frame::make(FrameTag::Box));
  DensityMatrix rho = DensityMatrix::from_pure(box);
  for (Qubit q = 1; q <= 4; ++q) rho = depolarize(rho, q, p);

  const std::array<MeasurementBasis, 4> bases = {
      MeasurementBasis::equatorial(alpha), MeasurementBasis::equatorial(pi),
      MeasurementBasis::equatorial(pi), MeasurementBasis::equatorial(beta)};

  GroverResult r{label, alpha, beta, p, {}, {0, 0, 0, 0}, 0.0, 0.0, 0.0};
  double no_ff_correct = 0.0;
  for (int code = 0; code < 16; ++code) {
    std::array<int, 4> s{(code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1};
    std::vector<PureState> f;
    for (int j = 0; j < 4; ++j) f.push_back(bases[j].vector(s[j]));
    const double prob = branch_probability(rho, PureState::product(f));
    const BlackBoxLabel dec{s[1] ^ s[3], s[2] ^ s[0]};
    r.branches.push_back({s, prob, dec});
    r.decoded[dec.index()] += prob;
    if (dec == label) r.success += prob;
    if (s[0] == 0 && s[3] == 0) {
      r.no_ff_probability += prob;
      if (BlackBoxLabel{s[1], s[2]} == label) no_ff_correct += prob;
    }
  }
  r.success = std::min(r.success, 1.0);  // summation rounding
  r.no_ff_success = r.no_ff_probability > 0 ? std::min(1.0, no_ff_correct / r.no_ff_probability) : 0.0;
  return r;
}

std::vector<std::pair<double, double>> success_curve(BlackBoxLabel label, const std::vector<double>& p_list) {
  std::vector<std::pair<double, double>> out;
  out.reserve(p_list.size());
  for (double p : p_list) out.emplace_back(p, run_grover(label, p).success);
  return out;
}

}  // namespace oneway
