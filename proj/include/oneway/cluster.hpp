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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oneway/qcore.hpp"

namespace oneway {

/// Undirected simple graph on vertices 1..n. Each edge is one CPhase bond.
class ClusterGraph {
 public:
  /// Edges are stored as (min, max) pairs in the order given. Throws
  /// InvalidArgument on self-loops, out-of-range vertices or duplicates.
  ClusterGraph(int n_vertices, std::vector<std::pair<int, int>> edges);

  static ClusterGraph path(int n);
  static ClusterGraph cycle(int n);

  int n_vertices() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool connected() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

/// |+>^n followed by one CPhase per edge.
PureState build_cluster(const ClusterGraph& g);

/// The four-photon state produced by the source:
/// (|HHHH> + |HHVV> + |VVHH> - |VVVV>)/2.
PureState lab_cluster_state();

enum class FrameTag { Lab, LinearCluster, Box };

std::string_view to_string(FrameTag tag);
FrameTag parse_frame_tag(std::string_view name);

/// A basis frame reached from the lab frame by a qubit permutation followed
/// by single-qubit unitaries: |frame> = (L_1 x ... x L_4) P |lab>.
///
/// LinearCluster: L = H, I, I, H and no permutation; the lab state becomes
/// the path graph 1-2-3-4. Box: every L is H and P swaps qubits 2 and 3; the
/// lab state becomes the ring 1-2-3-4-1.
struct Frame {
  FrameTag tag;
  std::vector<Eigen::Matrix2cd> local;  // local[q-1] acts on frame qubit q
  std::vector<Qubit> perm;              // lab qubit j sits at frame position perm[j-1]
  Operator transform;

  static Frame make(FrameTag tag);

  /// Lab qubit carried by frame qubit q.
  Qubit lab_qubit(Qubit frame_qubit) const;
};

/// Applies to.transform * from.transform^dagger.
PureState to_frame(const PureState& state, const Frame& from, const Frame& to);

struct LabelledState {
  PureState state;
  std::vector<Qubit> qubits;  // labels of the state's qubits, in order
};

/// Converts a residual living on `frame_qubits` (ascending frame labels) into
/// the lab frame. The result is ordered by ascending lab label. Valid because
/// frame maps are local up to relabelling, so they commute with measurements
/// on the other qubits.
LabelledState residual_to_lab(const PureState& residual, std::span<const Qubit> frame_qubits,
                              const Frame& frame);

struct ZMeasurement {
  double probability;
  PureState residual;
};

/// Measures `qubit` in {|0>, |1>} and keeps `outcome`. Throws InvalidArgument
/// on a zero-probability branch.
ZMeasurement remove_qubit_by_Z_measurement(const PureState& state, Qubit qubit, int outcome);

}  // namespace oneway
