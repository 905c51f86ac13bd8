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

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "oneway/cluster.hpp"
#include "oneway/mbqc.hpp"
#include "oneway/qcore.hpp"
#include "oneway/tomo.hpp"

/// File formats. Every parse error is a FormatError naming the line, row or
/// JSON field at fault.
namespace oneway::io {

/// CSV with the header `setting,count` and one row per setting, e.g.
/// `HHVV,127`. Lines starting with '#' before the header carry metadata as
/// `# key=value` (seed, duration_s, n0); other '#' lines are ignored.
tomo::CountTable read_counts_csv(std::istream& in);
void write_counts_csv(std::ostream& out, const tomo::CountTable& table);

/// {"n_qubits": n, "ordering": "qubit1-most-significant", "re": [[...]], "im": [[...]]}
nlohmann::json density_to_json(const Matrix& rho, int n_qubits);
DensityMatrix density_from_json(const nlohmann::json& j);

/// {"n": 4, "edges": [[1,2],[2,3],[3,4]]}
ClusterGraph graph_from_json(const nlohmann::json& j);

/// {"cluster": "lin4", "angles": {"alpha": .., "beta": .., "gamma": ..},
///  "policy": "postselect"}; optional "settings": "cluster" | "lab" for lin4
/// and "units": "rad" | "deg".
PatternSpec pattern_from_json(const nlohmann::json& j);

/// {"re": [...], "im": [...]}
nlohmann::json state_to_json(const PureState& s);

/// Parses a whole stream as JSON, mapping syntax errors to FormatError.
nlohmann::json read_json(std::istream& in, const std::string& what);

}  // namespace oneway::io
