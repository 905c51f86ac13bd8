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

#include <random>

#include "oneway/qcore.hpp"
#include "oneway/random.hpp"
#include "testutil.hpp"

namespace oneway {
namespace {

using testing::kron;
using testing::pi;

TEST(PureState, BasisOrderingPutsQubitOneFirst) {
  const PureState s = PureState::basis("100");
  EXPECT_EQ(s.dim(), 8);
  EXPECT_EQ(s[4], Complex(1.0));
  EXPECT_EQ(PureState::basis("HVH")[2], Complex(1.0));
}

TEST(PureState, RejectsBadInput) {
  EXPECT_THROW(PureState(2, Vector::Ones(3)), DimensionError);
  EXPECT_THROW(PureState(1, Vector::Ones(2)), InvalidArgument);
  EXPECT_THROW(PureState(1, Vector::Zero(2), true), InvalidArgument);
  EXPECT_THROW(PureState(0, Vector::Ones(1)), DimensionError);
  EXPECT_THROW(PureState(kMaxQubits + 1, Vector::Zero(1 << (kMaxQubits + 1))), DimensionError);
  EXPECT_THROW(PureState::basis("01x"), InvalidArgument);
  EXPECT_NO_THROW(PureState(1, Vector::Ones(2), true));
}

TEST(PureState, ProductMatchesKron) {
  const PureState p = PureState::product(std::vector{ket::plus(), ket::right(), ket::one()});
  const Vector want = kron({ket::plus().amplitudes(), ket::right().amplitudes(), ket::one().amplitudes()});
  EXPECT_LT((p.amplitudes() - want).norm(), kExactTol);
}

TEST(Kets, LabConventions) {
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT((ket::right().amplitudes() - testing::vec({r, Complex(0, -r)})).norm(), kExactTol);
  EXPECT_LT((ket::left().amplitudes() - testing::vec({r, Complex(0, r)})).norm(), kExactTol);
  EXPECT_LT((ket::plus_alpha(0).amplitudes() - ket::plus().amplitudes()).norm(), kExactTol);
  EXPECT_LT((ket::minus_alpha(pi / 2).amplitudes() - ket::right().amplitudes()).norm(), kExactTol);
  EXPECT_NEAR(overlap(ket::plus_alpha(0.7), ket::minus_alpha(0.7)), 0.0, kExactTol);
}

TEST(Gates, MatchClosedForms) {
  const double a = 0.37;
  const Matrix rz = make_gate(GateKind::Rz, a).matrix();
  EXPECT_NEAR(std::abs(rz(0, 0) - std::exp(Complex(0, -a / 2))), 0, kExactTol);
  EXPECT_NEAR(std::abs(rz(1, 1) - std::exp(Complex(0, a / 2))), 0, kExactTol);
  const Matrix rx = make_gate("Rx", a).matrix();
  EXPECT_NEAR(std::abs(rx(0, 1) - Complex(0, -std::sin(a / 2))), 0, kExactTol);
  const Matrix hwp = make_gate(GateKind::HWP, pi / 8).matrix();
  EXPECT_LT((hwp - testing::H2()).norm(), kExactTol);
  EXPECT_LT((make_gate(GateKind::CPhase).matrix() - testing::CZ()).norm(), kExactTol);
  EXPECT_THROW(parse_gate_kind("T"), InvalidArgument);
  EXPECT_EQ(parse_gate_kind("CPhase"), GateKind::CPhase);
}

TEST(Apply, AgreesWithKroneckerEmbedding) {
  rnd::Engine rng(3);
  const PureState psi = rnd::haar_state(3, rng);
  const Operator u = rnd::haar_unitary(1, rng);
  const PureState out = apply(psi, u, {2});
  const Vector want = kron({testing::I2(), u.matrix(), testing::I2()}) * psi.amplitudes();
  EXPECT_LT((out.amplitudes() - want).norm(), 1e-12);
}

TEST(Apply, TargetOrderMatters) {
  // CNOT with control on qubit 2 and target on qubit 1.
  Matrix cx = Matrix::Zero(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
  const Operator g(2, cx, true);
  const PureState out = apply(PureState::basis("01"), g, {2, 1});
  EXPECT_NEAR(std::abs(out[3]), 1.0, kExactTol);
  EXPECT_THROW(apply(PureState::basis("01"), g, {1, 1}), InvalidArgument);
  EXPECT_THROW(apply(PureState::basis("01"), g, {1, 3}), InvalidArgument);
  EXPECT_THROW(apply(PureState::basis("01"), g, {1}), DimensionError);
}

TEST(Apply, DensityMatrixEvolutionMatchesPure) {
  rnd::Engine rng(4);
  const PureState psi = rnd::haar_state(3, rng);
  const Operator u = rnd::haar_unitary(2, rng);
  const std::vector<Qubit> t{3, 1};
  const DensityMatrix a = apply(DensityMatrix::from_pure(psi), u, t);
  const DensityMatrix b = DensityMatrix::from_pure(apply(psi, u, t));
  EXPECT_LT((a.matrix() - b.matrix()).norm(), 1e-12);
}

TEST(Permutation, MovesQubits) {
  const Qubit perm[] = {2, 3, 1};  // lab 1 -> 2, lab 2 -> 3, lab 3 -> 1
  const PureState out = apply(PureState::basis("100"), permutation(perm), {1, 2, 3});
  EXPECT_NEAR(std::abs(out[2]), 1.0, kExactTol);  // |010>
  const Qubit bad[] = {1, 1, 2};
  EXPECT_THROW(permutation(bad), InvalidArgument);
}

TEST(PartialTrace, MatchesIndexLoop) {
  rnd::Engine rng(5);
  const DensityMatrix rho = rnd::wishart_density(3, rng);
  const DensityMatrix red = partial_trace(rho, {1, 3});
  Matrix want = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 2; ++b) want(2 * a + c, 2 * a2 + c2) += rho(4 * a + 2 * b + c, 4 * a2 + 2 * b + c2);
  EXPECT_LT((red.matrix() - want).norm(), 1e-12);
  EXPECT_THROW(partial_trace(rho, std::vector<Qubit>{}), InvalidArgument);
  EXPECT_THROW(partial_trace(rho, {4}), InvalidArgument);
}

TEST(PartialTrace, KeepOrderIsAscending) {
  const DensityMatrix rho = DensityMatrix::from_pure(PureState::basis("10"));
  EXPECT_LT((partial_trace(rho, {2, 1}).matrix() - rho.matrix()).norm(), kExactTol);
}

TEST(Project, ProbabilityAndResidual) {
  const PureState bell(2, testing::vec({1, 0, 0, 1}), true);
  const Projection p = project(bell, 1, ket::plus());
  EXPECT_NEAR(p.probability, 0.5, kExactTol);
  ASSERT_TRUE(p.residual.has_value());
  EXPECT_TRUE(states_equal_up_to_global_phase(*p.residual, ket::plus()));
  const Projection z = project(PureState::basis("01"), 1, ket::one());
  EXPECT_NEAR(z.probability, 0.0, kExactTol);
  EXPECT_FALSE(z.residual.has_value());
  EXPECT_THROW(project(ket::plus(), 1, ket::plus()), DimensionError);
  EXPECT_THROW(project(bell, 3, ket::plus()), InvalidArgument);
}

TEST(Project, BranchesSumToOne) {
  rnd::Engine rng(6);
  for (int i = 0; i < 50; ++i) {
    const PureState psi = rnd::haar_state(3, rng);
    const PureState b = rnd::haar_state(1, rng);
    Vector perp(2);
    perp << -std::conj(b[1]), std::conj(b[0]);
    const double total = project(psi, 1 + i % 3, b).probability + project(psi, 1 + i % 3, PureState(1, perp)).probability;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(DensityMatrix, Validates) {
  Matrix m = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix(1, m), InvalidArgument);  // trace 2
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix(1, neg), InvalidArgument);
  Matrix nh(2, 2);
  nh << 0.5, 0.3, 0.0, 0.5;
  EXPECT_THROW(DensityMatrix(1, nh), InvalidArgument);
  EXPECT_THROW(DensityMatrix(2, m / 2.0), DimensionError);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(mixed.eigenvalues()[0], 0.25, kExactTol);
}

TEST(Fidelity, PureAndBranchProbability) {
  const DensityMatrix rho = DensityMatrix::from_pure(ket::plus());
  EXPECT_NEAR(fidelity_pure(rho, ket::plus()), 1.0, kExactTol);
  EXPECT_NEAR(fidelity_pure(rho, ket::zero()), 0.5, kExactTol);
  EXPECT_NEAR(branch_probability(DensityMatrix::from_pure(PureState::basis("01")), PureState::basis("01")), 1.0,
              kExactTol);
}

TEST(Fidelity, GlobalPhaseIgnored) {
  const PureState a = ket::right();
  const PureState b(1, a.amplitudes() * std::exp(Complex(0, 1.3)));
  EXPECT_TRUE(states_equal_up_to_global_phase(a, b));
  EXPECT_FALSE(states_equal_up_to_global_phase(a, ket::left()));
}

TEST(Pauli, Algebra) {
  const Matrix x = pauli(1), y = pauli(2), z = pauli(3);
  EXPECT_LT((x * y - Complex(0, 1) * z).norm(), kExactTol);
  EXPECT_THROW(pauli(4), InvalidArgument);
}

TEST(Random, HaarUnitaryIsUnitaryAndWishartIsPhysical) {
  rnd::Engine rng(7);
  for (int n = 1; n <= 3; ++n) {
    const Matrix u = rnd::haar_unitary(n, rng).matrix();
    EXPECT_LT((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm(), 1e-12);
    const DensityMatrix w = rnd::wishart_density(n, rng);
    EXPECT_GE(w.eigenvalues().minCoeff(), -1e-12);
  }
}

}  // namespace
}  // namespace oneway
