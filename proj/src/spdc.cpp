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

#include "oneway/spdc.hpp"

#include <cmath>
#include <numbers>

#include "oneway/cluster.hpp"

namespace oneway::spdc {

void SourceConfig::validate() const {
  if (!(forward_rate > 0 && std::isfinite(forward_rate)) || !(backward_rate > 0 && std::isfinite(backward_rate))) {
    throw InvalidArgument("pair rates must be positive");
  }
  if (!std::isfinite(plate)) throw InvalidArgument("plate angle must be finite");
}

Operator bell_rotation_operator(double phi) {
  Matrix r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return tensor(Operator(1, std::move(r), true), make_gate(GateKind::I));
}

PureState hwp_bell_rotation(double phi) {
  const double h = 0.70710678118654752440;
  Vector phi_m = Vector::Zero(4);
  phi_m << h, 0, 0, -h;
  return apply(PureState(2, std::move(phi_m)), bell_rotation_operator(phi), {1, 2});
}

double double_emission_sign(double plate) { return -std::cos(4.0 * plate); }

FourFoldAmplitudes four_fold_state(const SourceConfig& cfg) {
  cfg.validate();
  const double k = std::sqrt(cfg.forward_rate * cfg.backward_rate);
  const double c = std::cos(2.0 * cfg.plate);
  FourFoldAmplitudes a{k * c, cfg.forward_rate * double_emission_sign(cfg.plate), cfg.backward_rate, -k * c,
                       PureState::basis("0000")};
  Vector v = Vector::Zero(16);
  v[0b0000] = a.hhhh;
  v[0b0011] = a.hhvv;
  v[0b1100] = a.vvhh;
  v[0b1111] = a.vvvv;
  a.state = PureState(4, std::move(v), true);
  return a;
}

double cluster_fidelity(const SourceConfig& cfg) {
  const double o = overlap(four_fold_state(cfg).state, lab_cluster_state());
  return o * o;
}

HwpOptimum optimal_hwp(double forward_rate, double backward_rate, const std::vector<double>& plate_grid) {
  if (plate_grid.empty()) throw InvalidArgument("optimal_hwp: empty angle grid");
  const double lo = std::numbers::pi / 8, hi = std::numbers::pi / 2;
  HwpOptimum best{0.0, -1.0, {}};
  best.curve.reserve(plate_grid.size());
  for (double t : plate_grid) {
    if (!(t > lo && t < hi)) throw InvalidArgument("optimal_hwp: grid point outside (22.5, 90) degrees");
    const double f = cluster_fidelity({t, forward_rate, backward_rate});
    best.curve.push_back({t, f});
    if (f > best.fidelity) {
      best.fidelity = f;
      best.plate = t;
    }
  }
  return best;
}

std::vector<double> default_plate_grid(double step_deg) {
  if (!(step_deg > 0)) throw InvalidArgument("grid step must be positive");
  std::vector<double> g;
  const double deg = std::numbers::pi / 180.0;
  for (long i = 1;; ++i) {
    const double d = 22.5 + i * step_deg;
    if (d >= 45.0 - 1e-12) break;
    g.push_back(d * deg);
  }
  return g;
}

}  // namespace oneway::spdc
