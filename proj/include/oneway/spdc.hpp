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
#include <vector>

#include "oneway/qcore.hpp"

/// Four-photon source model. Forward and backward pairs in |Phi->_{a,b} and
/// |Phi+>_{c,d} meet at polarizing beam splitters; a half-wave plate in mode
/// a fixes the sign of the HHVV term.
///
/// Angles: `plate` is the physical HWP fast-axis angle. A plate at theta
/// rotates linear polarization by phi = 2 theta, and phi is what enters the
/// pair amplitudes. The double-emission term picks up -cos(2 phi), which
/// changes sign when the plate passes 22.5 degrees.
namespace oneway::spdc {

struct SourceConfig {
  double plate;           // radians
  double forward_rate;    // pair coincidences per second, r_f
  double backward_rate;   // r_b

  /// Throws InvalidArgument unless both rates are positive and finite.
  void validate() const;
};

struct FourFoldAmplitudes {
  // Unnormalized, on HHHH, HHVV, VVHH, VVVV.
  Complex hhhh, hhvv, vvhh, vvvv;
  PureState state;
};

/// cos(phi)|Phi-> + sin(phi)|Psi+>, i.e. the polarization rotation R(phi) on
/// photon a applied to |Phi->. `phi` is the rotation angle.
PureState hwp_bell_rotation(double phi);
/// R(phi) x I, the two-photon operator behind hwp_bell_rotation.
Operator bell_rotation_operator(double phi);

/// -cos(4 theta) for plate angle theta: the sign carried by the HHVV
/// double-emission term. Zero at 22.5 degrees.
double double_emission_sign(double plate);

/// A(HHHH) = k cos 2t, A(VVVV) = -k cos 2t with k = sqrt(r_f r_b),
/// A(HHVV) = r_f * double_emission_sign(t), A(VVHH) = +r_b.
FourFoldAmplitudes four_fold_state(const SourceConfig& cfg);

/// |<cluster|psi>|^2 of the normalized four-fold state.
double cluster_fidelity(const SourceConfig& cfg);

struct CurvePoint {
  double plate;
  double fidelity;
};

struct HwpOptimum {
  double plate;
  double fidelity;
  std::vector<CurvePoint> curve;
};

/// Grid maximizer over plate angles in (pi/8, pi/2). Throws InvalidArgument
/// on an empty grid or a point outside that interval.
HwpOptimum optimal_hwp(double forward_rate, double backward_rate, const std::vector<double>& plate_grid);

/// Plate angles from 22.5 to 45 degrees (both excluded) in steps of `step_deg`.
std::vector<double> default_plate_grid(double step_deg = 0.01);

}  // namespace oneway::spdc
