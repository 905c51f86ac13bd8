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
#include <random>

#include "oneway/qcore.hpp"

/// Seeded samplers for property tests and count simulation.
namespace oneway::rnd {

using Engine = std::mt19937_64;

/// Haar-random n-qubit pure state.
PureState haar_state(int n_qubits, Engine& rng);

/// Haar-random unitary on n qubits (QR of a Ginibre matrix, phases fixed so
/// the distribution is exactly Haar).
Operator haar_unitary(int n_qubits, Engine& rng);

/// Normalized Wishart density matrix G G^dagger / Tr, G square Ginibre.
DensityMatrix wishart_density(int n_qubits, Engine& rng);

/// Product of n independent Haar single-qubit states.
PureState haar_product_state(int n_qubits, Engine& rng);

}  // namespace oneway::rnd
