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

#include "oneway/cluster.hpp"

#include <algorithm>
#include <numeric>

namespace oneway {

ClusterGraph::ClusterGraph(int n_vertices, std::vector<std::pair<int, int>> edges) : n_(n_vertices) {
  if (n_ < 1 || n_ > kMaxQubits) throw InvalidArgument("graph must have 1.." + std::to_string(kMaxQubits) + " vertices");
  for (auto [a, b] : edges) {
    if (a < 1 || a > n_ || b < 1 || b > n_) {
      throw InvalidArgument("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    }
    if (a == b) throw InvalidArgument("self-loop on vertex " + std::to_string(a));
    std::pair<int, int> e{std::min(a, b), std::max(a, b)};
    if (std::find(edges_.begin(), edges_.end(), e) != edges_.end()) {
      throw InvalidArgument("duplicate edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")");
    }
    edges_.push_back(e);
  }
}

ClusterGraph ClusterGraph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  return ClusterGraph(n, std::move(e));
}

ClusterGraph ClusterGraph::cycle(int n) {
  if (n < 3) throw InvalidArgument("a cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(1, n);
  return ClusterGraph(n, std::move(e));
}

bool ClusterGraph::connected() const {
  std::vector<int> parent(n_ + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : edges_) parent[find(a)] = find(b);
  for (int v = 2; v <= n_; ++v) {
    if (find(v) != find(1)) return false;
  }
  return true;
}

PureState build_cluster(const ClusterGraph& g) {
  std::vector<PureState> plus(g.n_vertices(), ket::plus());
  PureState s = PureState::product(plus);
  const Operator cz = make_gate(GateKind::CPhase);
  for (auto [a, b] : g.edges()) s = apply(s, cz, {a, b});
  return s;
}

PureState lab_cluster_state() {
  Vector v = Vector::Zero(16);
  v[0b0000] = 0.5;
  v[0b0011] = 0.5;
  v[0b1100] = 0.5;
  v[0b1111] = -0.5;
  return PureState(4, std::move(v));
}

std::string_view to_string(FrameTag tag) {
  switch (tag) {
    case FrameTag::Lab:
      return "lab";
    case FrameTag::LinearCluster:
      return "linear-cluster";
    case FrameTag::Box:
      return "box";
  }
  return "?";
}

FrameTag parse_frame_tag(std::string_view name) {
  if (name == "lab") return FrameTag::Lab;
  if (name == "linear-cluster" || name == "cluster" || name == "lin4") return FrameTag::LinearCluster;
  if (name == "box") return FrameTag::Box;
  throw InvalidArgument("unknown frame '" + std::string(name) + "'");
}

namespace {

Frame build_frame(FrameTag tag, std::vector<Eigen::Matrix2cd> local, std::vector<Qubit> perm) {
  Operator t = permutation(perm);
  Operator l(1, local[0], true);
  for (std::size_t q = 1; q < local.size(); ++q) l = tensor(l, Operator(1, local[q], true));
  Operator full(4, l.matrix() * t.matrix(), true);
  return Frame{tag, std::move(local), std::move(perm), std::move(full)};
}

}  // namespace

Frame Frame::make(FrameTag tag) {
  const Eigen::Matrix2cd h = make_gate(GateKind::H).matrix();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  switch (tag) {
    case FrameTag::Lab:
      return build_frame(tag, {id, id, id, id}, {1, 2, 3, 4});
    case FrameTag::LinearCluster:
      return build_frame(tag, {h, id, id, h}, {1, 2, 3, 4});
    case FrameTag::Box:
      return build_frame(tag, {h, h, h, h}, {1, 3, 2, 4});
  }
  throw InvalidArgument("unknown frame tag");
}

Qubit Frame::lab_qubit(Qubit frame_qubit) const {
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] == frame_qubit) return static_cast<Qubit>(j + 1);
  }
  throw InvalidArgument("frame qubit " + std::to_string(frame_qubit) + " out of range");
}

PureState to_frame(const PureState& state, const Frame& from, const Frame& to) {
  if (state.n_qubits() != from.transform.n_qubits() || state.n_qubits() != to.transform.n_qubits()) {
    throw DimensionError("frame transforms act on " + std::to_string(to.transform.n_qubits()) +
                         " qubits; state has " + std::to_string(state.n_qubits()));
  }
  return PureState(state.n_qubits(),
                   to.transform.matrix() * (from.transform.matrix().adjoint() * state.amplitudes()));
}

LabelledState residual_to_lab(const PureState& residual, std::span<const Qubit> frame_qubits,
                              const Frame& frame) {
  const int k = residual.n_qubits();
  if (static_cast<int>(frame_qubits.size()) != k) {
    throw DimensionError("residual has " + std::to_string(k) + " qubits but " +
                         std::to_string(frame_qubits.size()) + " labels");
  }
  // Undo the local unitaries in place.
  PureState s = residual;
  for (int j = 0; j < k; ++j) {
    const Operator ld(1, frame.local[frame_qubits[j] - 1].adjoint(), true);
    s = apply(s, ld, {j + 1});
  }
  // Reorder so that lab labels are ascending.
  std::vector<Qubit> lab(k);
  for (int j = 0; j < k; ++j) lab[j] = frame.lab_qubit(frame_qubits[j]);
  std::vector<Qubit> sorted = lab;
  std::sort(sorted.begin(), sorted.end());
  if (sorted == lab) return {s, sorted};
  std::vector<Qubit> perm(k);
  for (int j = 0; j < k; ++j) {
    perm[j] = static_cast<Qubit>(std::find(sorted.begin(), sorted.end(), lab[j]) - sorted.begin() + 1);
  }
  const Operator p = permutation(perm);
  return {PureState(k, p.matrix() * s.amplitudes()), sorted};
}

ZMeasurement remove_qubit_by_Z_measurement(const PureState& state, Qubit qubit, int outcome) {
  if (outcome != 0 && outcome != 1) throw InvalidArgument("Z outcome must be 0 or 1");
  const Projection pr = project(state, qubit, outcome == 0 ? ket::zero() : ket::one());
  if (!pr.residual) {
    throw InvalidArgument("Z measurement of qubit " + std::to_string(qubit) + " has zero probability for outcome " +
                          std::to_string(outcome));
  }
  return {pr.probability, *pr.residual};
}

}  // namespace oneway
