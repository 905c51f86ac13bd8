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
#include "oneway/random.hpp"
#include "oneway/tomo.hpp"
#include "testutil.hpp"

namespace oneway {
namespace {

using tomo::CountTable;
using tomo::Setting;

// Iterative (extended R rho R) maximum-likelihood fixed point with a free
// count scale. Slow but entirely different from the library's optimizer.
DensityMatrix rrr_reconstruct(const CountTable& t, int max_iter = 200000) {
  const auto settings = tomo::all_settings(t.n_qubits);
  const int d = 1 << t.n_qubits;
  std::vector<Vector> v;
  std::vector<double> n;
  Matrix g = Matrix::Zero(d, d);
  for (const auto& s : settings) {
    v.push_back(s.vector().amplitudes());
    n.push_back(static_cast<double>(t.at(s.str())));
    g += v.back() * v.back().adjoint();
  }
  const Matrix gi = g.inverse();
  Matrix rho = Matrix::Identity(d, d) / double(d);
  for (int it = 0; it < max_iter; ++it) {
    std::vector<double> q(v.size());
    double qs = 0, ns = 0;
    for (std::size_t s = 0; s < v.size(); ++s) {
      q[s] = std::max(1e-300, (v[s].adjoint() * rho * v[s])(0, 0).real());
      qs += q[s];
      ns += n[s];
    }
    const double scale = ns / qs;
    Matrix r = Matrix::Zero(d, d);
    for (std::size_t s = 0; s < v.size(); ++s) r += (n[s] / (scale * q[s])) * v[s] * v[s].adjoint();
    Matrix next = gi * r * rho * r * gi;
    next = (next + next.adjoint()) / 2.0;
    next /= next.trace().real();
    const double change = (next - rho).cwiseAbs().maxCoeff();
    rho = next;
    if (change < 1e-13) break;
  }
  return DensityMatrix(t.n_qubits, rho);
}

DensityMatrix cluster_rho() { return DensityMatrix::from_pure(lab_cluster_state()); }

TEST(Setting, VectorsAndIndex) {
  EXPECT_TRUE(states_equal_up_to_global_phase(Setting("P").vector(), ket::plus()));
  EXPECT_TRUE(states_equal_up_to_global_phase(Setting("R").vector(), ket::right()));
  EXPECT_TRUE(states_equal_up_to_global_phase(Setting("HV").vector(), PureState::basis("01")));
  EXPECT_EQ(Setting("HHHH").index(), 0u);
  EXPECT_EQ(Setting("RRRR").index(), 255u);
  EXPECT_EQ(Setting("VP").index(), 6u);
  EXPECT_THROW(Setting("HX"), InvalidArgument);
  EXPECT_THROW(Setting(""), InvalidArgument);
}

TEST(Setting, AllSettingsOrderedAndComplete) {
  const auto s = tomo::all_settings(4);
  ASSERT_EQ(s.size(), 256u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i].index(), i);
  EXPECT_EQ(s[1].str(), "HHHV");
  EXPECT_EQ(tomo::gram_rank(1), 4);
  EXPECT_EQ(tomo::gram_rank(4), 256);
  EXPECT_THROW(tomo::all_settings(5), DimensionError);
}

TEST(Counts, ExpectedMaximumAtHHVVScale) {
  const CountTable t = tomo::expected_counts(cluster_rho(), 508);
  EXPECT_EQ(t.at("HHVV"), 127);
  EXPECT_EQ(t.at("HVHH"), 0);
  EXPECT_TRUE(t.complete());
  EXPECT_THROW(t.at("HH"), InvalidArgument);
}

TEST(Counts, SimulationIsSeededAndPoisson) {
  const CountTable a = tomo::simulate_counts(cluster_rho(), 508, 42);
  const CountTable b = tomo::simulate_counts(cluster_rho(), 508, 42);
  const CountTable c = tomo::simulate_counts(cluster_rho(), 508, 43);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  EXPECT_EQ(a.at("HVHH"), 0);  // zero probability means zero counts
  EXPECT_EQ(*a.seed, 42u);
  // Sample mean over many settings of one probability class.
  const CountTable big = tomo::simulate_counts(DensityMatrix::maximally_mixed(4), 1600, 7);
  double mean = 0;
  for (const auto& [k, v] : big.counts) mean += static_cast<double>(v);
  mean /= static_cast<double>(big.counts.size());
  // Every probability is below 1/16 (with equality on HV settings); the
  // expectation is known exactly.
  double want = 0;
  for (const auto& s : tomo::all_settings(4)) want += 1600 * tomo::expected_probability(DensityMatrix::maximally_mixed(4), s);
  want /= 256;
  EXPECT_NEAR(mean, want, 4 * std::sqrt(want / 256));
  EXPECT_THROW(tomo::simulate_counts(cluster_rho(), 0, 1), InvalidArgument);
}

TEST(LinearInversion, RecoversStateFromExactCounts) {
  rnd::Engine rng(31);
  for (int n = 1; n <= 3; ++n) {
    const DensityMatrix rho = rnd::wishart_density(n, rng);
    const Matrix est = tomo::linear_inversion(tomo::expected_counts(rho, 1e10));
    EXPECT_LT((est - rho.matrix()).norm(), 1e-8) << n << " qubits";
  }
}

TEST(ProjectToPhysical, ClipsNegativeEigenvalues) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  const DensityMatrix p = tomo::project_to_physical(m);
  EXPECT_NEAR(p(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(p(1, 1).real(), 0.0, 1e-12);
  rnd::Engine rng(32);
  const DensityMatrix rho = rnd::wishart_density(2, rng);
  EXPECT_LT((tomo::project_to_physical(rho.matrix()).matrix() - rho.matrix()).norm(), 1e-12);
}

TEST(Objective, GradientMatchesFiniteDifferences) {
  rnd::Engine rng(33);
  const CountTable t = tomo::simulate_counts(rnd::wishart_density(2, rng), 800, 5);
  const tomo::detail::PoissonObjective f(t);
  std::normal_distribution<double> g;
  Eigen::VectorXd x(f.n_params());
  for (auto& e : x) e = g(rng);
  Eigen::VectorXd grad;
  f.value(x, &grad);
  const double h = 1e-6;
  for (int i = 0; i < f.n_params(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double fd = (f.value(xp, nullptr) - f.value(xm, nullptr)) / (2 * h);
    EXPECT_NEAR(grad[i], fd, 1e-5 * std::max(1.0, std::abs(fd))) << "parameter " << i;
  }
}

TEST(Objective, PackUnpackRoundTrip) {
  rnd::Engine rng(34);
  const CountTable t = tomo::expected_counts(cluster_rho(), 508);
  const tomo::detail::PoissonObjective f(t);
  const Matrix lower = tomo::detail::PoissonObjective::factor(rnd::wishart_density(4, rng).matrix());
  const Matrix back = f.unpack(f.pack(lower));
  EXPECT_LT((back - lower).norm(), 1e-12);
}

TEST(Mle, NoiselessCountsGiveTheTrueState) {
  const auto r = tomo::mle_reconstruct(tomo::expected_counts(cluster_rho(), 1e6));
  EXPECT_TRUE(r.converged);
  EXPECT_GE(fidelity_pure(r.rho_mle, lab_cluster_state()), 0.999);
  EXPECT_NEAR(r.scale, 1e6, 1e3);
}

TEST(Mle, AgreesWithIterativeFixedPoint) {
  rnd::Engine rng(35);
  for (int n = 2; n <= 3; ++n) {
    const CountTable t = tomo::simulate_counts(rnd::wishart_density(n, rng), 500, 100 + n);
    const auto r = tomo::mle_reconstruct(t);
    const DensityMatrix oracle = rrr_reconstruct(t);
    const double ll_mle = tomo::profile_log_likelihood(t, r.rho_mle);
    const double ll_rrr = tomo::profile_log_likelihood(t, oracle);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(ll_mle, ll_rrr - 1e-6 * std::abs(ll_rrr)) << n << " qubits";
    EXPECT_NEAR(ll_mle, ll_rrr, 1e-5 * std::abs(ll_rrr)) << n << " qubits";
    EXPECT_LT((r.rho_mle.matrix() - oracle.matrix()).norm(), 2e-3) << n << " qubits";
  }
}

TEST(Mle, LikelihoodDominatesOtherPhysicalEstimates) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const CountTable t = tomo::simulate_counts(cluster_rho(), 508, seed);
    const auto r = tomo::mle_reconstruct(t);
    const double ll = tomo::profile_log_likelihood(t, r.rho_mle);
    EXPECT_NEAR(ll, r.log_likelihood, 1e-6 * std::abs(ll));
    EXPECT_GE(ll, tomo::profile_log_likelihood(t, tomo::project_to_physical(r.rho_linear)));
    EXPECT_GE(ll, tomo::profile_log_likelihood(t, DensityMatrix::maximally_mixed(4)));
    EXPECT_GE(r.rho_mle.eigenvalues().minCoeff(), -1e-9);
    EXPECT_NEAR(r.rho_mle.matrix().trace().real(), 1.0, 1e-9);
  }
}

TEST(Mle, OptionValidation) {
  const CountTable t = tomo::expected_counts(cluster_rho(), 508);
  EXPECT_THROW(tomo::mle_reconstruct(t, {0.0, 10}), InvalidArgument);
  EXPECT_THROW(tomo::mle_reconstruct(t, {1e-8, 0}), InvalidArgument);
  CountTable zero = t;
  for (auto& [k, v] : zero.counts) v = 0;
  EXPECT_THROW(tomo::mle_reconstruct(zero), InvalidArgument);
  const auto capped = tomo::mle_reconstruct(tomo::simulate_counts(cluster_rho(), 508, 1), {1e-14, 2});
  EXPECT_FALSE(capped.converged);
  EXPECT_LE(capped.iterations, 2);
}

TEST(Condition, ProjectionGivesGhzClassState) {
  const CountTable t = tomo::expected_counts(cluster_rho(), 1e6);
  const CountTable c = tomo::conditioned_table(t, 1, tomo::Condition::project('P'));
  EXPECT_EQ(c.n_qubits, 3);
  EXPECT_EQ(c.counts.size(), 64u);
  EXPECT_EQ(c.at("HVV"), t.at("PHVV"));
  const auto r = tomo::conditioned_reduction(t, 1, tomo::Condition::project('P'));
  // Projecting qubit 1 on |+> leaves the four-term GHZ-class state on 2,3,4.
  Vector want = Vector::Zero(8);
  want << 0.5, 0, 0, 0.5, 0.5, 0, 0, -0.5;
  EXPECT_GE(fidelity_pure(r.rho_mle, PureState(3, want, true)), 0.999);
}

TEST(Condition, TraceOutMatchesPartialTrace) {
  const CountTable t = tomo::expected_counts(cluster_rho(), 1e6);
  const auto r = tomo::conditioned_reduction(t, 1, tomo::Condition::trace_out());
  const DensityMatrix want = partial_trace(cluster_rho(), {2, 3, 4});
  EXPECT_LT((r.rho_mle.matrix() - want.matrix()).norm(), 5e-3);
  EXPECT_THROW(tomo::conditioned_table(t, 5, tomo::Condition::trace_out()), InvalidArgument);
  EXPECT_THROW(tomo::conditioned_table(t, 1, tomo::Condition::project('X')), InvalidArgument);
}

}  // namespace
}  // namespace oneway
