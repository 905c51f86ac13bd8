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

#include "oneway/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace oneway {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Eigen::Index dim_of(int n) { return Eigen::Index{1} << n; }

void check_n(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw DimensionError("qubit count " + std::to_string(n) + " outside 1.." +
                         std::to_string(kMaxQubits));
  }
}

int bit(Eigen::Index index, int qubit, int n) { return static_cast<int>((index >> (n - qubit)) & 1); }

void check_targets(std::span<const Qubit> targets, int n) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 1 || targets[i] > n) {
      throw InvalidArgument("qubit " + std::to_string(targets[i]) + " out of range 1.." +
                            std::to_string(n));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw InvalidArgument("repeated target qubit " + std::to_string(targets[i]));
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(int n_qubits, Vector amplitudes, bool normalize)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_n(n_qubits_);
  if (amplitudes_.size() != dim_of(n_qubits_)) {
    throw DimensionError("state vector of length " + std::to_string(amplitudes_.size()) +
                         " for " + std::to_string(n_qubits_) + " qubits");
  }
  double nrm = amplitudes_.squaredNorm();
  if (normalize) {
    if (nrm < 1e-300) throw InvalidArgument("cannot normalize the zero vector");
    amplitudes_ /= std::sqrt(nrm);
    nrm = 1.0;
  }
  if (std::abs(nrm - 1.0) > kNumericTol) {
    throw InvalidArgument("state is not normalized (squared norm " + std::to_string(nrm) + ")");
  }
}

PureState PureState::basis(std::string_view bits) {
  const int n = static_cast<int>(bits.size());
  check_n(n);
  Eigen::Index index = 0;
  for (char c : bits) {
    index <<= 1;
    if (c == '1' || c == 'V') {
      index |= 1;
    } else if (c != '0' && c != 'H') {
      throw InvalidArgument(std::string("bad basis label character '") + c + "'");
    }
  }
  Vector v = Vector::Zero(dim_of(n));
  v[index] = 1.0;
  return PureState(n, std::move(v));
}

PureState PureState::product(std::span<const PureState> factors) {
  if (factors.empty()) throw InvalidArgument("empty product");
  PureState out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

namespace ket {

namespace {
PureState two(Complex a, Complex b) {
  Vector v(2);
  v << a, b;
  return PureState(1, std::move(v));
}
}  // namespace

PureState zero() { return two(1.0, 0.0); }
PureState one() { return two(0.0, 1.0); }
PureState plus() { return two(kInvSqrt2, kInvSqrt2); }
PureState minus() { return two(kInvSqrt2, -kInvSqrt2); }
PureState right() { return two(kInvSqrt2, Complex(0.0, -kInvSqrt2)); }
PureState left() { return two(kInvSqrt2, Complex(0.0, kInvSqrt2)); }
PureState plus_alpha(double alpha) { return two(kInvSqrt2, kInvSqrt2 * std::polar(1.0, alpha)); }
PureState minus_alpha(double alpha) { return two(kInvSqrt2, -kInvSqrt2 * std::polar(1.0, alpha)); }

}  // namespace ket

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(int n_qubits, Matrix matrix) : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_n(n_qubits_);
  const Eigen::Index d = dim_of(n_qubits_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("density matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " + std::to_string(d));
  }
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kNumericTol) {
    throw InvalidArgument("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  // Symmetrize away sub-tolerance asymmetry so later eigensolves see an
  // exactly Hermitian matrix.
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kNumericTol) {
    throw InvalidArgument("density matrix trace is " + std::to_string(tr.real()));
  }
  const double min_eig = eigenvalues().minCoeff();
  if (min_eig < -1e-8) {
    throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  check_n(n_qubits);
  const Eigen::Index d = dim_of(n_qubits);
  return DensityMatrix(n_qubits, Matrix::Identity(d, d) / static_cast<double>(d));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// ----------------------------------------------------------------- Operator

Operator::Operator(int n_qubits, Matrix matrix, bool unitary)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)), unitary_(unitary) {
  check_n(n_qubits_);
  const Eigen::Index d = dim_of(n_qubits_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("operator is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " + std::to_string(d));
  }
  if (unitary_) {
    const double dev = (matrix_.adjoint() * matrix_ - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kNumericTol) throw InvalidArgument("operator flagged unitary is not unitary");
  }
}

Operator Operator::adjoint() const { return Operator(n_qubits_, matrix_.adjoint(), unitary_); }

// -------------------------------------------------------------------- gates

GateKind parse_gate_kind(std::string_view name) {
  static constexpr std::pair<std::string_view, GateKind> kNames[] = {
      {"I", GateKind::I},   {"X", GateKind::X},   {"Y", GateKind::Y},
      {"Z", GateKind::Z},   {"H", GateKind::H},   {"Rz", GateKind::Rz},
      {"Rx", GateKind::Rx}, {"CPhase", GateKind::CPhase}, {"HWP", GateKind::HWP},
  };
  for (const auto& [s, k] : kNames) {
    if (s == name) return k;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

Operator make_gate(GateKind kind, double angle) {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  switch (kind) {
    case GateKind::I:
      m << 1, 0, 0, 1;
      break;
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::Y:
      m << 0, -i, i, 0;
      break;
    case GateKind::Z:
      m << 1, 0, 0, -1;
      break;
    case GateKind::H:
      m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
      break;
    case GateKind::Rz:
      m << std::polar(1.0, -angle / 2), 0, 0, std::polar(1.0, angle / 2);
      break;
    case GateKind::Rx: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -i * s, -i * s, c;
      break;
    }
    case GateKind::HWP: {
      const double c = std::cos(2 * angle), s = std::sin(2 * angle);
      m << c, s, s, -c;
      break;
    }
    case GateKind::CPhase: {
      Matrix cz = Matrix::Identity(4, 4);
      cz(3, 3) = -1.0;
      return Operator(2, std::move(cz), true);
    }
  }
  return Operator(1, std::move(m), true);
}

Operator make_gate(std::string_view name, double angle) { return make_gate(parse_gate_kind(name), angle); }

Eigen::Matrix2cd pauli(int index) {
  static constexpr GateKind kKinds[] = {GateKind::I, GateKind::X, GateKind::Y, GateKind::Z};
  if (index < 0 || index > 3) throw InvalidArgument("Pauli index must be 0..3");
  return make_gate(kKinds[index]).matrix();
}

// -------------------------------------------------------------- embeddings

Matrix embed(const Operator& gate, std::span<const Qubit> targets, int n_qubits) {
  check_n(n_qubits);
  const int k = gate.n_qubits();
  if (static_cast<int>(targets.size()) != k) {
    throw DimensionError("gate acts on " + std::to_string(k) + " qubits but " +
                         std::to_string(targets.size()) + " targets given");
  }
  check_targets(targets, n_qubits);
  const Eigen::Index d = dim_of(n_qubits);
  const Eigen::Index dk = dim_of(k);
  Eigen::Index mask = 0;
  for (Qubit q : targets) mask |= Eigen::Index{1} << (n_qubits - q);

  auto with_sub = [&](Eigen::Index base, Eigen::Index sub) {
    Eigen::Index idx = base & ~mask;
    for (int j = 0; j < k; ++j) {
      if ((sub >> (k - 1 - j)) & 1) idx |= Eigen::Index{1} << (n_qubits - targets[j]);
    }
    return idx;
  };

  Matrix full = Matrix::Zero(d, d);
  const Matrix& g = gate.matrix();
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::Index sub_c = 0;
    for (int j = 0; j < k; ++j) sub_c = (sub_c << 1) | bit(col, targets[j], n_qubits);
    for (Eigen::Index sub_r = 0; sub_r < dk; ++sub_r) {
      full(with_sub(col, sub_r), col) += g(sub_r, sub_c);
    }
  }
  return full;
}

PureState apply(const PureState& state, const Operator& gate, std::span<const Qubit> targets) {
  const Matrix u = embed(gate, targets, state.n_qubits());
  return PureState(state.n_qubits(), u * state.amplitudes(), !gate.is_unitary());
}

PureState apply(const PureState& state, const Operator& gate, std::initializer_list<Qubit> targets) {
  return apply(state, gate, std::span<const Qubit>(targets.begin(), targets.size()));
}

DensityMatrix apply(const DensityMatrix& rho, const Operator& gate, std::span<const Qubit> targets) {
  if (!gate.is_unitary()) throw InvalidArgument("density-matrix evolution requires a unitary");
  const Matrix u = embed(gate, targets, rho.n_qubits());
  return DensityMatrix(rho.n_qubits(), u * rho.matrix() * u.adjoint());
}

Operator permutation(std::span<const Qubit> perm) {
  const int n = static_cast<int>(perm.size());
  check_n(n);
  std::vector<bool> seen(n + 1, false);
  for (Qubit p : perm) {
    if (p < 1 || p > n || seen[p]) throw InvalidArgument("not a permutation of 1..n");
    seen[p] = true;
  }
  const Eigen::Index d = dim_of(n);
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index in = 0; in < d; ++in) {
    Eigen::Index out = 0;
    for (int j = 1; j <= n; ++j) {
      if (bit(in, j, n)) out |= Eigen::Index{1} << (n - perm[j - 1]);
    }
    m(out, in) = 1.0;
  }
  return Operator(n, std::move(m), true);
}

PureState tensor(const PureState& a, const PureState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_n(n);
  Vector v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  return PureState(n, std::move(v), true);
}

Operator tensor(const Operator& a, const Operator& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_n(n);
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  Matrix m(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index r = 0; r < ma.rows(); ++r) {
    for (Eigen::Index c = 0; c < ma.cols(); ++c) {
      m.block(r * mb.rows(), c * mb.cols(), mb.rows(), mb.cols()) = ma(r, c) * mb;
    }
  }
  return Operator(n, std::move(m), a.is_unitary() && b.is_unitary());
}

// ---------------------------------------------------------- partial trace

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const Qubit> keep_in) {
  const int n = rho.n_qubits();
  if (keep_in.empty()) throw InvalidArgument("partial_trace: keep list is empty");
  check_targets(keep_in, n);
  std::vector<Qubit> keep(keep_in.begin(), keep_in.end());
  std::sort(keep.begin(), keep.end());
  std::vector<Qubit> traced;
  for (Qubit q = 1; q <= n; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);
  }
  const int k = static_cast<int>(keep.size());
  const int t = static_cast<int>(traced.size());
  auto compose = [&](Eigen::Index kept, Eigen::Index env) {
    Eigen::Index idx = 0;
    for (int j = 0; j < k; ++j) {
      if ((kept >> (k - 1 - j)) & 1) idx |= Eigen::Index{1} << (n - keep[j]);
    }
    for (int j = 0; j < t; ++j) {
      if ((env >> (t - 1 - j)) & 1) idx |= Eigen::Index{1} << (n - traced[j]);
    }
    return idx;
  };
  const Eigen::Index dk = dim_of(k);
  const Eigen::Index dt = Eigen::Index{1} << t;
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (Eigen::Index e = 0; e < dt; ++e) acc += rho(compose(r, e), compose(c, e));
      out(r, c) = acc;
    }
  }
  return DensityMatrix(k, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<Qubit> keep) {
  return partial_trace(rho, std::span<const Qubit>(keep.begin(), keep.size()));
}

// ------------------------------------------------------------ measurements

Projection project(const PureState& state, Qubit qubit, const PureState& bra) {
  const int n = state.n_qubits();
  if (n < 2) throw DimensionError("project needs at least two qubits; use branch_probability");
  if (bra.n_qubits() != 1) throw DimensionError("projection bra must be a single-qubit state");
  if (qubit < 1 || qubit > n) throw InvalidArgument("qubit " + std::to_string(qubit) + " out of range");
  // PureState construction already enforces normalization of `bra`.
  const Complex b0 = std::conj(bra[0]);
  const Complex b1 = std::conj(bra[1]);
  const Eigen::Index dr = dim_of(n - 1);
  const int shift = n - qubit;
  const Eigen::Index low_mask = (Eigen::Index{1} << shift) - 1;
  Vector out(dr);
  for (Eigen::Index r = 0; r < dr; ++r) {
    const Eigen::Index hi = (r & ~low_mask) << 1;
    const Eigen::Index lo = r & low_mask;
    const Eigen::Index i0 = hi | lo;
    const Eigen::Index i1 = i0 | (Eigen::Index{1} << shift);
    out[r] = b0 * state[i0] + b1 * state[i1];
  }
  const double p = out.squaredNorm();
  Projection result{p, std::nullopt};
  if (p >= 1e-12) result.residual = PureState(n - 1, out / std::sqrt(p));
  return result;
}

double branch_probability(const DensityMatrix& rho, const PureState& product_bra) {
  return fidelity_pure(rho, product_bra);
}

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.n_qubits() != psi.n_qubits()) {
    throw DimensionError("fidelity: " + std::to_string(rho.n_qubits()) + "-qubit state vs " +
                         std::to_string(psi.n_qubits()) + "-qubit target");
  }
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double overlap(const PureState& a, const PureState& b) {
  if (a.n_qubits() != b.n_qubits()) throw DimensionError("overlap of states with different qubit counts");
  return std::abs(a.amplitudes().dot(b.amplitudes()));
}

bool states_equal_up_to_global_phase(const PureState& a, const PureState& b, double tol) {
  return overlap(a, b) >= 1.0 - tol;
}

}  // namespace oneway
