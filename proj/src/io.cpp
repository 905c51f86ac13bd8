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

#include "oneway/io.hpp"

#include <charconv>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace oneway::io {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw FormatError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

tomo::CountTable read_counts_csv(std::istream& in) {
  tomo::CountTable t;
  t.n_qubits = 0;
  std::string raw;
  int line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (header) continue;
      const std::string body = trim(s.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(body.substr(0, eq));
      const std::string val = trim(body.substr(eq + 1));
      try {
        if (key == "seed") t.seed = std::stoull(val);
        if (key == "duration_s") t.duration_s = std::stod(val);
        if (key == "n0") t.n0 = std::stod(val);
      } catch (const std::exception&) {
        fail_line(line, "metadata field '" + key + "' has unparseable value '" + val + "'");
      }
      continue;
    }
    if (!header) {
      if (s != "setting,count") fail_line(line, "expected header 'setting,count', found '" + s + "'");
      header = true;
      continue;
    }
    const auto comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos) {
      fail_line(line, "row must have exactly two fields (setting,count)");
    }
    const std::string setting = trim(s.substr(0, comma));
    const std::string count = trim(s.substr(comma + 1));
    try {
      tomo::Setting parsed(setting);
      (void)parsed;
    } catch (const InvalidArgument& e) {
      fail_line(line, std::string("field 'setting': ") + e.what());
    }
    if (t.n_qubits == 0) t.n_qubits = static_cast<int>(setting.size());
    if (static_cast<int>(setting.size()) != t.n_qubits) {
      fail_line(line, "field 'setting': '" + setting + "' has " + std::to_string(setting.size()) +
                          " letters, earlier rows have " + std::to_string(t.n_qubits));
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), value);
    if (ec != std::errc() || ptr != count.data() + count.size() || count.empty()) {
      fail_line(line, "field 'count': '" + count + "' is not an integer");
    }
    if (value < 0) fail_line(line, "field 'count': negative count " + count);
    if (!t.counts.emplace(setting, value).second) fail_line(line, "field 'setting': duplicate setting " + setting);
  }
  if (!header) throw FormatError("line " + std::to_string(line) + ": missing header 'setting,count'");
  if (t.counts.empty()) throw FormatError("count table has no rows");
  if (t.n_qubits > 4) throw FormatError("settings with more than 4 letters are not supported");
  return t;
}

void write_counts_csv(std::ostream& out, const tomo::CountTable& table) {
  if (table.seed) out << "# seed=" << *table.seed << '\n';
  if (table.duration_s) out << "# duration_s=" << *table.duration_s << '\n';
  if (table.n0) out << "# n0=" << *table.n0 << '\n';
  out << "setting,count\n";
  for (const tomo::Setting& s : tomo::all_settings(table.n_qubits)) {
    auto it = table.counts.find(s.str());
    if (it != table.counts.end()) out << s.str() << ',' << it->second << '\n';
  }
}

nlohmann::json density_to_json(const Matrix& rho, int n_qubits) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ii = nlohmann::json::array();
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      rr.push_back(rho(r, c).real());
      ii.push_back(rho(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"n_qubits", n_qubits}, {"ordering", "qubit1-most-significant"}, {"re", re}, {"im", im}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("density matrix document must be a JSON object");
  for (const char* k : {"n_qubits", "ordering", "re", "im"}) {
    if (!j.contains(k)) throw FormatError(std::string("density matrix: missing field '") + k + "'");
  }
  if (!j["n_qubits"].is_number_integer()) throw FormatError("density matrix: field 'n_qubits' must be an integer");
  const int n = j["n_qubits"].get<int>();
  if (n < 1 || n > kMaxQubits) throw FormatError("density matrix: field 'n_qubits' out of range");
  if (j["ordering"] != "qubit1-most-significant") {
    throw FormatError("density matrix: field 'ordering' must be \"qubit1-most-significant\"");
  }
  const Eigen::Index d = Eigen::Index{1} << n;
  Matrix m(d, d);
  for (const char* part : {"re", "im"}) {
    const auto& rows = j[part];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
      throw FormatError(std::string("density matrix: field '") + part + "' must have " + std::to_string(d) + " rows");
    }
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        throw FormatError(std::string("density matrix: field '") + part + "' row " + std::to_string(r) +
                          " must have " + std::to_string(d) + " entries");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        const auto& v = row[static_cast<std::size_t>(c)];
        if (!v.is_number()) {
          throw FormatError(std::string("density matrix: field '") + part + "' entry [" + std::to_string(r) + "][" +
                            std::to_string(c) + "] is not a number");
        }
        if (part[0] == 'r') {
          m(r, c) = Complex(v.get<double>(), 0.0);
        } else {
          m(r, c) += Complex(0.0, v.get<double>());
        }
      }
    }
  }
  try {
    return DensityMatrix(n, std::move(m));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("density matrix: ") + e.what());
  }
}

ClusterGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw FormatError("graph: expected an object with fields 'n' and 'edges'");
  }
  if (!j["n"].is_number_integer()) throw FormatError("graph: field 'n' must be an integer");
  if (!j["edges"].is_array()) throw FormatError("graph: field 'edges' must be an array");
  std::vector<std::pair<int, int>> edges;
  std::size_t i = 0;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw FormatError("graph: field 'edges' entry " + std::to_string(i) + " must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    ++i;
  }
  try {
    return ClusterGraph(j["n"].get<int>(), std::move(edges));
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("graph: ") + e.what());
  }
}

PatternSpec pattern_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("pattern: document must be a JSON object");
  if (!j.contains("cluster") || !j["cluster"].is_string()) throw FormatError("pattern: field 'cluster' must be a string");
  if (!j.contains("angles") || !j["angles"].is_object()) throw FormatError("pattern: field 'angles' must be an object");
  PatternSpec p;
  p.cluster = j["cluster"].get<std::string>();
  // "units" may sit next to the angles or at the top level.
  double unit = 1.0;
  for (const nlohmann::json* holder : {&j, &j["angles"]}) {
    if (!holder->contains("units")) continue;
    const auto& u = (*holder)["units"];
    if (u == "deg") {
      unit = std::numbers::pi / 180.0;
    } else if (u != "rad") {
      throw FormatError("pattern: field 'units' must be \"rad\" or \"deg\"");
    }
  }
  auto angle = [&](const char* name) -> std::optional<double> {
    const auto& a = j["angles"];
    if (!a.contains(name)) return std::nullopt;
    if (!a[name].is_number()) throw FormatError(std::string("pattern: field 'angles.") + name + "' must be a number");
    return a[name].get<double>() * unit;
  };
  const auto alpha = angle("alpha"), beta = angle("beta");
  if (!alpha) throw FormatError("pattern: field 'angles.alpha' is missing");
  if (!beta) throw FormatError("pattern: field 'angles.beta' is missing");
  p.alpha = *alpha;
  p.beta = *beta;
  p.gamma = angle("gamma");
  if (j.contains("policy")) {
    if (!j["policy"].is_string()) throw FormatError("pattern: field 'policy' must be a string");
    try {
      p.policy = parse_policy(j["policy"].get<std::string>());
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("pattern: field 'policy': ") + e.what());
    }
  }
  if (j.contains("settings")) {
    if (j["settings"] == "lab") {
      p.settings = SettingsFrame::Lab;
    } else if (j["settings"] == "cluster") {
      p.settings = SettingsFrame::Cluster;
    } else {
      throw FormatError("pattern: field 'settings' must be \"cluster\" or \"lab\"");
    }
  }
  return p;
}

nlohmann::json state_to_json(const PureState& s) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    re.push_back(s[i].real());
    im.push_back(s[i].imag());
  }
  return {{"re", re}, {"im", im}};
}

nlohmann::json read_json(std::istream& in, const std::string& what) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(what + ": " + e.what());
  }
}

}  // namespace oneway::io
