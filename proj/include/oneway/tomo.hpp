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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oneway/qcore.hpp"

/// Polarization tomography over the projector alphabet {H, V, P, R}, where
/// P = (H + V)/sqrt2 and R = (H - iV)/sqrt2. Everything is written for n
/// qubits; the four-photon experiment uses n = 4 (256 settings) and the
/// conditioned three-photon reductions use n = 3 (64 settings).
namespace oneway::tomo {

inline constexpr std::string_view kAlphabet = "HVPR";

/// One projective setting, one letter per qubit (qubit 1 first).
class Setting {
 public:
  /// Throws InvalidArgument on an empty string or letters outside HVPR.
  explicit Setting(std::string labels);

  const std::string& str() const { return labels_; }
  int n_qubits() const { return static_cast<int>(labels_.size()); }
  /// The product state |v_s> whose projector is measured.
  PureState vector() const;
  /// Position in all_settings(n).
  std::size_t index() const;

  auto operator<=>(const Setting&) const = default;

 private:
  std::string labels_;
};

/// {H,V,P,R}^n, lexicographic in the alphabet order H < V < P < R, so the
/// first entry is all H.
std::vector<Setting> all_settings(int n_qubits = 4);

/// Numerical rank of the Gram matrix Tr(Pi_s Pi_t) over all_settings(n).
int gram_rank(int n_qubits = 4, double threshold = 1e-8);

/// Tr(rho Pi_s).
double expected_probability(const DensityMatrix& rho, const Setting& s);

struct CountTable {
  int n_qubits = 4;
  std::map<std::string, std::int64_t> counts;
  std::optional<double> duration_s;
  std::optional<std::uint64_t> seed;
  std::optional<double> n0;

  bool complete() const;
  /// Throws InvalidArgument when the setting is missing.
  std::int64_t at(const std::string& setting) const;
  /// Counts in all_settings(n) order; throws InvalidArgument if incomplete.
  std::vector<double> ordered() const;
};

/// Poisson(n0 * Tr(rho Pi_s)) per setting using a mt19937_64 seeded with
/// `seed`. Bit-identical for identical arguments.
CountTable simulate_counts(const DensityMatrix& rho, double n0, std::uint64_t seed, double duration_s = 600.0);

/// n0 * Tr(rho Pi_s) rounded to the nearest integer; with large n0 this is
/// the noiseless limit.
CountTable expected_counts(const DensityMatrix& rho, double n0);

/// Solves Tr(rho Pi_s) = n_s / N for a Hermitian rho expanded in Paulis. N is
/// the sum over the 2^n settings drawn from {H, V}^n, whose projectors add to
/// the identity, so the estimate has unit trace. May fail to be PSD. Throws
/// InvalidArgument on an incomplete table or when N = 0.
Matrix linear_inversion(const CountTable& counts);

/// Closest unit-trace PSD matrix in Frobenius norm (eigenvalue clipping with
/// redistribution of the removed weight).
DensityMatrix project_to_physical(const Matrix& hermitian);

/// sum_s n_s log mu_s - mu_s with mu_s = scale * Tr(rho Pi_s).
double log_likelihood(const CountTable& counts, const DensityMatrix& rho, double scale);
/// The same with the scale at its maximizer sum(n) / sum(Tr(rho Pi_s)).
double profile_log_likelihood(const CountTable& counts, const DensityMatrix& rho);

struct MleOptions {
  double tol = 1e-10;
  int max_iter = 5000;
};

struct ReconstructionReport {
  DensityMatrix rho_mle;
  Matrix rho_linear;
  double log_likelihood;
  double scale;  // fitted N
  int iterations;
  bool converged;
};

/// Maximizes the Poisson likelihood over M = T^dagger T, T lower triangular
/// with real diagonal (d^2 real parameters). M carries both the state and
/// the scale: rho = M / Tr M and N = Tr M. Starts from the physical
/// projection of the linear estimate and runs L-BFGS with a Wolfe line
/// search. Stops once the relative likelihood gain of an iteration falls
/// below `tol` (converged) or after `max_iter` iterations (not converged;
/// the best iterate is returned).
ReconstructionReport mle_reconstruct(const CountTable& counts, const MleOptions& opts = {});

enum class ConditionKind { Project, TraceOut };

struct Condition {
  ConditionKind kind;
  char label = 'P';  // for Project: which projector qubit `q` was found in

  static Condition project(char label) { return {ConditionKind::Project, label}; }
  static Condition trace_out() { return {ConditionKind::TraceOut, 'H'}; }
};

/// Builds the 4^(n-1)-setting table for the other qubits, either by keeping
/// the settings where `qubit` shows `label` or by adding the H and V
/// subsets, then reconstructs it with mle_reconstruct. Throws
/// InvalidArgument if a needed setting is absent.
CountTable conditioned_table(const CountTable& counts, Qubit qubit, const Condition& condition);
ReconstructionReport conditioned_reduction(const CountTable& counts, Qubit qubit, const Condition& condition,
                                           const MleOptions& opts = {});

namespace detail {

/// Negative Poisson log-likelihood over the packed parameters of T, with its
/// gradient. Exposed for gradient checks.
class PoissonObjective {
 public:
  explicit PoissonObjective(const CountTable& counts);

  int dim() const { return d_; }
  int n_params() const { return d_ * d_; }
  /// Returns +infinity where some mu_s = 0 but n_s > 0.
  double value(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const;

  Matrix unpack(const Eigen::VectorXd& x) const;
  Eigen::VectorXd pack(const Matrix& lower) const;
  /// Lower-triangular T with T^dagger T = m (m positive definite).
  static Matrix factor(const Matrix& m);
  /// sum n log mu - mu recovered from an objective value.
  double log_likelihood_of(double value) const { return -value - constant_; }

 private:
  int d_;
  Matrix v_;                 // column s is |v_s>
  Eigen::VectorXd n_;        // counts
  double constant_ = 0.0;    // sum n log n - n, makes the optimum near 0
};

}  // namespace detail

}  // namespace oneway::tomo
