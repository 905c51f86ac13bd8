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

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

/// Dense state-vector and density-matrix primitives for up to five qubits.
///
/// Qubits are labelled 1..n. Qubit 1 is the most significant bit of the
/// amplitude index, so |q1 q2 ... qn> reads left to right like the usual
/// ket notation. The lab basis identifies |H> with |0> and |V> with |1>.
namespace oneway {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Qubit = int;

inline constexpr int kMaxQubits = 5;
/// Tolerance for exact algebraic identities.
inline constexpr double kExactTol = 1e-12;
/// Tolerance for accumulated numerics.
inline constexpr double kNumericTol = 1e-9;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together (wrong qubit count, wrong matrix size).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed file or document; carries the offending location in the message.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A request outside what the implementation supports by construction.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Normalized pure state on n qubits.
class PureState {
 public:
  /// Throws InvalidArgument if the vector length is not 2^n or its norm is
  /// off by more than kNumericTol. With `normalize`, any nonzero vector is
  /// rescaled first.
  PureState(int n_qubits, Vector amplitudes, bool normalize = false);

  /// |b1 b2 ... bn> from a bit string such as "0110" (also accepts H/V).
  static PureState basis(std::string_view bits);
  /// Kronecker product of single-qubit states (first factor is qubit 1).
  static PureState product(std::span<const PureState> factors);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  int n_qubits_;
  Vector amplitudes_;
};

/// Common single-qubit kets.
namespace ket {
PureState zero();
PureState one();
inline PureState horizontal() { return zero(); }
inline PureState vertical() { return one(); }
/// (|0> + |1>)/sqrt2
PureState plus();
/// (|0> - |1>)/sqrt2
PureState minus();
/// (|H> - i|V>)/sqrt2
PureState right();
/// (|H> + i|V>)/sqrt2
PureState left();
/// (|0> + e^{i alpha}|1>)/sqrt2
PureState plus_alpha(double alpha);
/// (|0> - e^{i alpha}|1>)/sqrt2
PureState minus_alpha(double alpha);
}  // namespace ket

/// Hermitian, positive-semidefinite, unit-trace matrix on n qubits.
class DensityMatrix {
 public:
  /// Validates hermiticity and trace within kNumericTol and a minimum
  /// eigenvalue of at least -1e-8.
  DensityMatrix(int n_qubits, Matrix matrix);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return matrix_(r, c); }

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;

 private:
  int n_qubits_;
  Matrix matrix_;
};

/// A 2^k x 2^k operator on k qubits.
class Operator {
 public:
  /// If `unitary` is set, U^dagger U = I is checked within kNumericTol.
  Operator(int n_qubits, Matrix matrix, bool unitary);

  int n_qubits() const { return n_qubits_; }
  const Matrix& matrix() const { return matrix_; }
  bool is_unitary() const { return unitary_; }
  Operator adjoint() const;

 private:
  int n_qubits_;
  Matrix matrix_;
  bool unitary_;
};

enum class GateKind { I, X, Y, Z, H, Rz, Rx, CPhase, HWP };

/// Parses "I", "X", "Y", "Z", "H", "Rz", "Rx", "CPhase", "HWP".
GateKind parse_gate_kind(std::string_view name);

/// Exact gate matrices. Rz(a) = exp(-i a Z/2), Rx(a) = exp(-i a X/2),
/// CPhase = diag(1,1,1,-1). HWP(theta) is the half-wave-plate Jones matrix
/// with fast axis at plate angle theta: [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
/// `angle` is ignored for the fixed gates.
Operator make_gate(GateKind kind, double angle = 0.0);
Operator make_gate(std::string_view name, double angle = 0.0);

/// Embeds `gate` on `targets` (gate qubit j acts on targets[j]) and applies it.
PureState apply(const PureState& state, const Operator& gate, std::span<const Qubit> targets);
PureState apply(const PureState& state, const Operator& gate, std::initializer_list<Qubit> targets);
/// rho -> U rho U^dagger with the same embedding rule.
DensityMatrix apply(const DensityMatrix& rho, const Operator& gate, std::span<const Qubit> targets);

/// Full 2^n x 2^n matrix of `gate` embedded on `targets`.
Matrix embed(const Operator& gate, std::span<const Qubit> targets, int n_qubits);

/// Qubit permutation operator: lab qubit j moves to position perm[j-1].
Operator permutation(std::span<const Qubit> perm);

PureState tensor(const PureState& a, const PureState& b);
Operator tensor(const Operator& a, const Operator& b);

/// Reduced density matrix on `keep`, in ascending qubit order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Qubit> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<Qubit> keep);

struct Projection {
  double probability;
  /// Renormalized state on the remaining qubits (original order). Empty when
  /// the branch probability is below 1e-12.
  std::optional<PureState> residual;
};

/// Projects `qubit` onto the single-qubit state `bra` (the bra is <bra|).
/// Requires a state with at least two qubits and a normalized `bra`.
Projection project(const PureState& state, Qubit qubit, const PureState& bra);

/// Unnormalized |<u|psi>|^2 for a full product bra, used when every qubit is
/// measured.
double branch_probability(const DensityMatrix& rho, const PureState& product_bra);

/// <psi|rho|psi>
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

/// |<a|b>|
double overlap(const PureState& a, const PureState& b);

/// True iff |<a|b>| >= 1 - tol.
bool states_equal_up_to_global_phase(const PureState& a, const PureState& b, double tol = kNumericTol);

/// Pauli matrices as 2x2 complex matrices, index 0..3 = I, X, Y, Z.
Eigen::Matrix2cd pauli(int index);

}  // namespace oneway
