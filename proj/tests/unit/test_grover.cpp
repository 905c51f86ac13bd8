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

#include "oneway/grover.hpp"
#include "oneway/random.hpp"
#include "testutil.hpp"

namespace oneway {
namespace {

using testing::kron;
using testing::pi;

const BlackBoxLabel kLabels[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

Matrix rz(double a) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(Complex(0, -a / 2));
  m(1, 1) = std::exp(Complex(0, a / 2));
  return m;
}

// Each decoded bit is the parity of two outcomes; depolarizing flips a
// qubit's outcome with probability p/2, independently.
double success_closed_form(double p) {
  const double bit = (1 + (1 - p) * (1 - p)) / 2;
  return bit * bit;
}

TEST(BlackBoxLabel, ParseAndPrint) {
  EXPECT_EQ(BlackBoxLabel::parse("10"), (BlackBoxLabel{1, 0}));
  EXPECT_EQ((BlackBoxLabel{0, 1}).str(), "01");
  EXPECT_EQ((BlackBoxLabel{1, 1}).index(), 3);
  EXPECT_THROW(BlackBoxLabel::parse("2"), InvalidArgument);
  EXPECT_THROW(BlackBoxLabel::parse("012"), InvalidArgument);
}

TEST(BlackBoxLabel, OracleMarksTheLabelledState) {
  for (const auto& l : kLabels) {
    const auto [a, b] = label_to_angles(l);
    const Matrix u = testing::CZ() * kron(rz(-a), rz(-b));
    // Diagonal, with the marked entry's phase opposite to the other three.
    const Complex ref = u(l.index() == 0 ? 1 : 0, l.index() == 0 ? 1 : 0);
    for (int k = 0; k < 4; ++k) {
      const Complex rel = u(k, k) / ref;
      EXPECT_NEAR(std::abs(rel - (k == l.index() ? -1.0 : 1.0)), 0, 1e-12) << l.str() << " entry " << k;
    }
  }
}

TEST(Grover, NoiselessDecodesEveryLabel) {
  for (const auto& l : kLabels) {
    const GroverResult g = run_grover(l);
    ASSERT_EQ(g.branches.size(), 16u);
    double total = 0;
    for (const auto& b : g.branches) {
      total += b.probability;
      EXPECT_EQ(b.decoded, (BlackBoxLabel{b.s[1] ^ b.s[3], b.s[2] ^ b.s[0]}));
      if (b.probability > 1e-12) EXPECT_EQ(b.decoded, l);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(g.success, 1.0, 1e-9);
    EXPECT_NEAR(g.no_ff_probability, 0.25, 1e-9);
    EXPECT_NEAR(g.no_ff_success, 1.0, 1e-9);
  }
}

TEST(Grover, DepolarizingSweepMatchesClosedForm) {
  std::vector<double> ps;
  for (int i = 0; i <= 20; ++i) ps.push_back(i / 20.0);
  for (const auto& l : kLabels) {
    const auto curve = success_curve(l, ps);
    ASSERT_EQ(curve.size(), ps.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_NEAR(curve[i].second, success_closed_form(ps[i]), 1e-12);
      if (i) EXPECT_LE(curve[i].second, curve[i - 1].second + 1e-12);
    }
    EXPECT_NEAR(curve.back().second, 0.25, 1e-6);
  }
  EXPECT_THROW(run_grover({0, 0}, 1.5), InvalidArgument);
}

TEST(Depolarize, FullStrengthMixesTheQubit) {
  rnd::Engine rng(1);
  const DensityMatrix rho = rnd::wishart_density(3, rng);
  const DensityMatrix out = depolarize(rho, 2, 1.0);
  const DensityMatrix q2 = partial_trace(out, {2});
  EXPECT_LT((q2.matrix() - Matrix::Identity(2, 2) / 2.0).norm(), 1e-12);
  EXPECT_LT((partial_trace(out, {1, 3}).matrix() - partial_trace(rho, {1, 3}).matrix()).norm(), 1e-12);
  EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_LT((depolarize(rho, 1, 0.0).matrix() - rho.matrix()).norm(), 1e-15);
  EXPECT_THROW(depolarize(rho, 1, -0.1), InvalidArgument);
}

}  // namespace
}  // namespace oneway
