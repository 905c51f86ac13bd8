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

#include <sstream>

#include "oneway/cluster.hpp"
#include "oneway/io.hpp"
#include "oneway/random.hpp"
#include "testutil.hpp"

namespace oneway {
namespace {

using nlohmann::json;

std::string expect_format_error(const std::string& text) {
  std::istringstream in(text);
  try {
    io::read_counts_csv(in);
  } catch (const FormatError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no FormatError for:\n" << text;
  return {};
}

TEST(CountsCsv, RoundTripKeepsCountsAndMetadata) {
  const tomo::CountTable t = tomo::simulate_counts(DensityMatrix::from_pure(lab_cluster_state()), 508, 9);
  std::stringstream ss;
  io::write_counts_csv(ss, t);
  const tomo::CountTable back = io::read_counts_csv(ss);
  EXPECT_EQ(back.counts, t.counts);
  EXPECT_EQ(back.n_qubits, 4);
  EXPECT_EQ(*back.seed, 9u);
  EXPECT_DOUBLE_EQ(*back.n0, 508);
  EXPECT_DOUBLE_EQ(*back.duration_s, 600);
}

TEST(CountsCsv, CanonicalOrder) {
  tomo::CountTable t;
  t.n_qubits = 1;
  t.counts = {{"R", 4}, {"H", 1}, {"P", 3}, {"V", 2}};
  std::ostringstream out;
  io::write_counts_csv(out, t);
  EXPECT_EQ(out.str(), "setting,count\nH,1\nV,2\nP,3\nR,4\n");
}

TEST(CountsCsv, ToleratesWhitespaceAndBlankLines) {
  std::istringstream in("# comment without key\n\nsetting,count\n H , 3 \n\nV,0\r\n");
  const tomo::CountTable t = io::read_counts_csv(in);
  EXPECT_EQ(t.at("H"), 3);
  EXPECT_EQ(t.at("V"), 0);
}

TEST(CountsCsv, ErrorsNameLineAndField) {
  EXPECT_NE(expect_format_error("setting,count\nHH,1\nHV,x\n").find("line 3: field 'count'"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\nHX,1\n").find("line 2: field 'setting'"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\nHH,1\nH,1\n").find("line 3"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\nHH,-1\n").find("negative"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\nHH,1\nHH,2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\nHH,1,2\n").find("two fields"), std::string::npos);
  EXPECT_NE(expect_format_error("HH,1\n").find("line 1: expected header"), std::string::npos);
  EXPECT_NE(expect_format_error("").find("missing header"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\n").find("no rows"), std::string::npos);
  EXPECT_NE(expect_format_error("# seed=abc\nsetting,count\nH,1\n").find("line 1"), std::string::npos);
  EXPECT_NE(expect_format_error("setting,count\nHHHHH,1\n").find("4 letters"), std::string::npos);
}

TEST(DensityJson, RoundTrip) {
  rnd::Engine rng(41);
  const DensityMatrix rho = rnd::wishart_density(3, rng);
  const json j = io::density_to_json(rho.matrix(), 3);
  EXPECT_EQ(j["ordering"], "qubit1-most-significant");
  const DensityMatrix back = io::density_from_json(json::parse(j.dump()));
  EXPECT_LT((back.matrix() - rho.matrix()).norm(), 1e-14);
}

TEST(DensityJson, IgnoresExtraFieldsAndValidates) {
  json j = io::density_to_json(DensityMatrix::maximally_mixed(1).matrix(), 1);
  j["command"] = "tomo reconstruct";
  EXPECT_NO_THROW(io::density_from_json(j));
  json missing = j;
  missing.erase("im");
  EXPECT_THROW(io::density_from_json(missing), FormatError);
  json wrong_rows = j;
  wrong_rows["re"].push_back(json::array({0, 0}));
  EXPECT_THROW(io::density_from_json(wrong_rows), FormatError);
  json not_number = j;
  not_number["re"][0][0] = "half";
  EXPECT_THROW(io::density_from_json(not_number), FormatError);
  json bad_order = j;
  bad_order["ordering"] = "qubit1-least-significant";
  EXPECT_THROW(io::density_from_json(bad_order), FormatError);
  json unphysical = j;
  unphysical["re"][0][0] = 2.0;
  EXPECT_THROW(io::density_from_json(unphysical), FormatError);
  EXPECT_THROW(io::density_from_json(json::array()), FormatError);
}

TEST(GraphJson, ParsesAndValidates) {
  const ClusterGraph g = io::graph_from_json(json::parse(R"({"n": 4, "edges": [[1,2],[2,3],[3,4],[4,1]]})"));
  EXPECT_EQ(g.n_vertices(), 4);
  EXPECT_EQ(g.edges().size(), 4u);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 4})")), FormatError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 4, "edges": [[1]]})")), FormatError);
  EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[1,5]]})")), FormatError);
}

TEST(PatternJson, UnitsPolicyAndSettings) {
  const PatternSpec p = io::pattern_from_json(json::parse(
      R"({"cluster": "lin4", "angles": {"alpha": 90, "beta": 0, "gamma": -90, "units": "deg"},
          "policy": "enumerate", "settings": "lab"})"));
  EXPECT_EQ(p.cluster, "lin4");
  EXPECT_NEAR(p.alpha, testing::pi / 2, 1e-15);
  EXPECT_NEAR(*p.gamma, -testing::pi / 2, 1e-15);
  EXPECT_EQ(p.policy, OutcomePolicy::EnumerateAll);
  EXPECT_EQ(p.settings, SettingsFrame::Lab);
  const PatternSpec q = io::pattern_from_json(json::parse(R"({"cluster": "box", "angles": {"alpha": 1, "beta": 2}})"));
  EXPECT_FALSE(q.gamma.has_value());
  EXPECT_EQ(q.policy, OutcomePolicy::PostSelectZeros);
  EXPECT_THROW(io::pattern_from_json(json::parse(R"({"cluster": "box", "angles": {"alpha": 1}})")), FormatError);
  EXPECT_THROW(io::pattern_from_json(json::parse(R"({"cluster": "box", "angles": {"alpha": 1, "beta": 1, "units": "grad"}})")),
               FormatError);
  EXPECT_THROW(io::pattern_from_json(json::parse(R"({"cluster": "box", "angles": {"alpha": 1, "beta": 1}, "policy": "maybe"})")),
               FormatError);
}

TEST(ReadJson, MalformedDocument) {
  std::istringstream in("{\"n\": 4,");
  EXPECT_THROW(io::read_json(in, "graph"), FormatError);
}

TEST(StateJson, Shape) {
  const json j = io::state_to_json(ket::right());
  ASSERT_EQ(j["re"].size(), 2u);
  EXPECT_NEAR(j["im"][1].get<double>(), -1 / std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace oneway
