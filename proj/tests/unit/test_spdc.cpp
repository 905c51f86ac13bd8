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

#include <gtest/gtest.h>

#include "oneway/cluster.hpp"
#include "oneway/spdc.hpp"
#include "testutil.hpp"

namespace oneway {
namespace {

using testing::pi;
constexpr double kDeg = pi / 180.0;

// Overlap with (HHHH + HHVV + VVHH - VVVV)/2 written out by hand.
double fidelity_closed_form(double plate, double rf, double rb) {
  const double k = std::sqrt(rf * rb), c = std::cos(2 * plate), s = -std::cos(4 * plate);
  const double num = (k * c + rf * s + rb + k * c) / 2;
  const double norm2 = 2 * k * k * c * c + rf * rf * s * s + rb * rb;
  return num * num / norm2;
}

TEST(Spdc, DoubleEmissionSign) {
  EXPECT_NEAR(spdc::double_emission_sign(22.5 * kDeg), 0.0, 1e-12);
  EXPECT_LT(spdc::double_emission_sign(10 * kDeg), 0.0);
  EXPECT_GT(spdc::double_emission_sign(30 * kDeg), 0.0);
  EXPECT_NEAR(spdc::double_emission_sign(45 * kDeg), 1.0, 1e-12);
}

TEST(Spdc, SupportIsTheFourClusterTerms) {
  for (double deg = 0; deg <= 90; deg += 1.5) {
    const auto a = spdc::four_fold_state({deg * kDeg, 28000, 18000});
    for (Eigen::Index i = 0; i < 16; ++i) {
      if (i != 0 && i != 3 && i != 12 && i != 15) EXPECT_EQ(a.state[i], Complex(0.0));
    }
    EXPECT_NEAR(a.hhhh.real(), -a.vvvv.real(), 1e-12);
  }
}

TEST(Spdc, FidelityMatchesClosedForm) {
  for (double deg = 23; deg < 45; deg += 0.7) {
    EXPECT_NEAR(spdc::cluster_fidelity({deg * kDeg, 28000, 18000}), fidelity_closed_form(deg * kDeg, 28000, 18000),
                1e-12);
  }
  // Equal rates. At 45 degrees only HHVV + VVHH survive; at 0 the
  // double-emission term has the wrong sign.
  EXPECT_NEAR(spdc::cluster_fidelity({45 * kDeg, 1, 1}), 0.5, 1e-12);
  EXPECT_NEAR(spdc::cluster_fidelity({0.0, 1, 1}), 0.25, 1e-12);
}

TEST(Spdc, OptimumForReferenceRates) {
  const auto opt = spdc::optimal_hwp(28000, 18000, spdc::default_plate_grid());
  EXPECT_GT(opt.plate, 22.5 * kDeg);
  EXPECT_LT(opt.plate, 45 * kDeg);
  for (const auto& p : opt.curve) EXPECT_LE(p.fidelity, opt.fidelity);
  EXPECT_THROW(spdc::optimal_hwp(1, 1, {}), InvalidArgument);
  EXPECT_THROW(spdc::optimal_hwp(1, 1, {10 * kDeg}), InvalidArgument);
  EXPECT_THROW(spdc::default_plate_grid(0), InvalidArgument);
}

TEST(Spdc, BellRotation) {
  const PureState phi_minus(2, testing::vec({1, 0, 0, -1}), true);
  EXPECT_NEAR(overlap(spdc::hwp_bell_rotation(0), phi_minus), 1.0, 1e-12);
  // A quarter turn sends |Phi-> to |Psi+>.
  const PureState psi_plus(2, testing::vec({0, 1, 1, 0}), true);
  EXPECT_NEAR(overlap(spdc::hwp_bell_rotation(pi / 2), psi_plus), 1.0, 1e-12);
}

TEST(Spdc, ConfigValidation) {
  EXPECT_THROW(spdc::four_fold_state({0.1, 0, 1}), InvalidArgument);
  EXPECT_THROW(spdc::four_fold_state({0.1, 1, -1}), InvalidArgument);
  EXPECT_THROW(spdc::four_fold_state({NAN, 1, 1}), InvalidArgument);
}

}  // namespace
}  // namespace oneway
