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

#include "oneway/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "oneway/cluster.hpp"
#include "oneway/entanglement.hpp"
#include "oneway/grover.hpp"
#include "oneway/io.hpp"
#include "oneway/mbqc.hpp"
#include "oneway/spdc.hpp"
#include "oneway/tomo.hpp"

namespace oneway::cli {

namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

class UsageError : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  NotConverged(std::string msg, json report) : Error(std::move(msg)), report(std::move(report)) {}
  json report;
};

json angle_json(double rad) { return {{"rad", rad}, {"deg", rad / kDeg}}; }

std::string basis_label(Eigen::Index i, int n, bool lab) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q) {
    const bool one = (i >> (n - 1 - q)) & 1;
    s[q] = lab ? (one ? 'V' : 'H') : (one ? '1' : '0');
  }
  return s;
}

// Removes the global phase so that the largest amplitude is real and
// positive; makes printed states comparable by eye.
PureState canonical_phase(const PureState& s) {
  Eigen::Index k = 0;
  s.amplitudes().cwiseAbs().maxCoeff(&k);
  const Complex ph = std::abs(s[k]) > 0 ? std::conj(s[k]) / std::abs(s[k]) : Complex(1.0);
  return PureState(s.n_qubits(), s.amplitudes() * ph, true);
}

json state_json(const PureState& raw, const std::vector<Qubit>& qubits, std::string_view frame) {
  const PureState s = canonical_phase(raw);
  const bool lab = frame == "lab";
  json terms = json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    if (std::abs(s[i]) > 1e-12) {
      terms.push_back({{"ket", basis_label(i, s.n_qubits(), lab)}, {"re", s[i].real()}, {"im", s[i].imag()}});
    }
  }
  return {{"frame", frame}, {"qubits", qubits}, {"amplitudes", io::state_to_json(s)}, {"terms", terms}};
}

std::vector<Qubit> iota_qubits(int n) {
  std::vector<Qubit> q;
  for (int i = 1; i <= n; ++i) q.push_back(i);
  return q;
}

json base_report(const std::string& command) { return {{"command", command}, {"version", kVersion}}; }

std::istream& open_input(const std::string& path, std::istream& in, std::ifstream& file) {
  if (path == "-") return in;
  file.open(path);
  if (!file) throw UsageError("cannot open input file '" + path + "'");
  return file;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << content;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

double fid(const PureState& a, const PureState& b) {
  const double o = overlap(a, b);
  return std::min(1.0, o * o);
}

// ------------------------------------------------------------------ cluster

struct ClusterArgs {
  std::string shape;
  std::string frame;
  std::string graph;
};

json cmd_cluster(const ClusterArgs& a, std::istream& in) {
  json r = base_report("cluster");
  if (!a.graph.empty()) {
    if (!a.shape.empty() || !a.frame.empty()) throw UsageError("--graph cannot be combined with --shape or --frame");
    std::ifstream f;
    const ClusterGraph g = io::graph_from_json(io::read_json(open_input(a.graph, in, f), "graph"));
    r["inputs"] = {{"graph", a.graph}};
    r["graph"] = {{"n", g.n_vertices()}, {"edges", g.edges()}};
    r["state"] = state_json(build_cluster(g), iota_qubits(g.n_vertices()), "graph");
    return r;
  }
  if (a.shape.empty()) throw UsageError("cluster needs --shape or --graph");
  const Frame lab = Frame::make(FrameTag::Lab);
  std::optional<FrameTag> want;
  if (!a.frame.empty()) {
    try {
      want = parse_frame_tag(a.frame);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  r["inputs"] = {{"shape", a.shape}, {"frame", a.frame.empty() ? json(nullptr) : json(a.frame)}};

  if (a.shape == "lin3") {
    const Frame lc = Frame::make(FrameTag::LinearCluster);
    const ZMeasurement z = remove_qubit_by_Z_measurement(to_frame(lab_cluster_state(), lab, lc), 1, 0);
    const std::vector<Qubit> q{2, 3, 4};
    if (!want || *want == FrameTag::LinearCluster) {
      r["state"] = state_json(z.residual, q, to_string(FrameTag::LinearCluster));
    } else if (*want == FrameTag::Lab) {
      const LabelledState ls = residual_to_lab(z.residual, q, lc);
      r["state"] = state_json(ls.state, ls.qubits, "lab");
    } else {
      throw UsageError("lin3 is defined in the linear-cluster frame; use --frame lab or linear-cluster");
    }
    r["graph"] = {{"n", 3}, {"edges", {{2, 3}, {3, 4}}}};
    r["preparation"] = {{"z_measured_qubit", 1}, {"outcome", 0}, {"probability", z.probability}};
    return r;
  }

  PureState s = lab_cluster_state();
  FrameTag native = FrameTag::Lab;
  std::optional<ClusterGraph> g;
  if (a.shape == "lab") {
    native = FrameTag::Lab;
  } else if (a.shape == "lin4" || a.shape == "horseshoe") {
    g = ClusterGraph::path(4);
    native = FrameTag::LinearCluster;
  } else if (a.shape == "box") {
    g = ClusterGraph::cycle(4);
    native = FrameTag::Box;
  } else {
    throw UsageError("unknown shape '" + a.shape + "' (expected lab, lin3, lin4, horseshoe or box)");
  }
  if (g) s = build_cluster(*g);
  const FrameTag target = want.value_or(native);
  s = to_frame(s, Frame::make(native), Frame::make(target));
  r["state"] = state_json(s, iota_qubits(4), to_string(target));
  if (g) r["graph"] = {{"n", 4}, {"edges", g->edges()}};
  return r;
}

// ------------------------------------------------------------ rotate/2q

struct CircuitArgs {
  std::string shape;
  std::optional<double> alpha, beta, gamma;
  bool deg = false;
  std::string settings = "lab";
  std::string policy = "postselect";
  std::string pattern;
};

PatternSpec spec_from_args(const CircuitArgs& a, std::istream& in) {
  if (!a.pattern.empty()) {
    std::ifstream f;
    return io::pattern_from_json(io::read_json(open_input(a.pattern, in, f), "pattern"));
  }
  if (a.shape.empty()) throw UsageError("--shape or --pattern is required");
  if (!a.alpha || !a.beta) throw UsageError("--alpha and --beta are required");
  const double u = a.deg ? kDeg : 1.0;
  PatternSpec p;
  p.cluster = a.shape;
  p.alpha = *a.alpha * u;
  p.beta = *a.beta * u;
  if (a.gamma) p.gamma = *a.gamma * u;
  try {
    p.policy = parse_policy(a.policy);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (a.settings == "lab") {
    p.settings = SettingsFrame::Lab;
  } else if (a.settings == "cluster") {
    p.settings = SettingsFrame::Cluster;
  } else {
    throw UsageError("--settings must be lab or cluster");
  }
  return p;
}

json bits_json(const std::map<Qubit, int>& bits) {
  json j = json::object();
  for (const auto& [q, s] : bits) j["s" + std::to_string(q)] = s;
  return j;
}

// Oracle in the same frame as `frame_output` of the pattern.
PureState oracle_for(const PatternSpec& p) {
  if (p.cluster == "lin3") return oracle_lin3(p.alpha, p.beta);
  if (p.cluster == "lin4") {
    return p.settings == SettingsFrame::Lab ? oracle_lin4_lab_settings(p.alpha, p.beta, *p.gamma)
                                            : oracle_lin4(p.alpha, p.beta, *p.gamma);
  }
  if (p.cluster == "box") return oracle_box(p.alpha, p.beta);
  return oracle_horseshoe(p.alpha, p.beta);
}

std::string_view oracle_name(const PatternSpec& p) {
  if (p.cluster == "lin3") return "Rx(-beta) Rz(-alpha) |+>";
  if (p.cluster == "lin4") {
    return p.settings == SettingsFrame::Lab ? "Rz(-gamma) H Rz(-(alpha+beta)) |+>" : "H Rz(-gamma) Rx(-beta) Rz(-alpha) |+>";
  }
  if (p.cluster == "box") return "CZ (H x H)(Rz(-alpha) x Rz(-beta)) CZ |++>";
  return "(H x H)(Rz(-alpha) x Rz(-beta)) CZ |++>";
}

json two_qubit_metrics(const PureState& s) {
  const DensityMatrix rho = DensityMatrix::from_pure(s);
  return {{"tangle", tangle(rho)}, {"chsh_max", chsh_max(rho)}, {"ppt_eigenvalues", ppt_eigenvalues(rho)}};
}

json cmd_circuit(const std::string& command, const CircuitArgs& a, std::istream& in) {
  const PatternSpec p = spec_from_args(a, in);
  const bool rotation = command == "rotate";
  if (rotation && p.cluster != "lin3" && p.cluster != "lin4") throw UsageError("rotate supports lin3 and lin4");
  if (!rotation && p.cluster != "box" && p.cluster != "horseshoe") throw UsageError("twoqubit supports box and horseshoe");
  if (p.cluster == "lin4" && !p.gamma) throw UsageError("lin4 needs --gamma");
  if (p.cluster != "lin4" && p.gamma) throw UsageError("--gamma applies to lin4 only");

  json r = base_report(command);
  json angles = {{"alpha", angle_json(p.alpha)}, {"beta", angle_json(p.beta)}};
  if (p.gamma) angles["gamma"] = angle_json(*p.gamma);
  r["inputs"] = {{"shape", p.cluster}, {"angles", angles}, {"policy", to_string(p.policy)}};
  if (p.cluster == "lin4") r["inputs"]["settings"] = p.settings == SettingsFrame::Lab ? "lab" : "cluster";

  PreparedPattern pp = [&] {
    try {
      return prepare_pattern(p);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }();
  std::vector<OutcomeRecord> records;
  try {
    records = run_pattern(pp.state, pp.pattern);
  } catch (const Unsupported& e) {
    throw UsageError(e.what());
  }
  const PureState oracle = oracle_for(p);
  r["oracle"] = oracle_name(p);
  const std::string frame(to_string(pp.frame.tag));

  auto describe = [&](const OutcomeRecord& rec) {
    json b = {{"bits", bits_json(rec.bits)}, {"probability", rec.probability}};
    if (!rec.residual) {
      b["output"] = nullptr;
      return b;
    }
    const LabelledState ls = residual_to_lab(*rec.residual, rec.residual_qubits, pp.frame);
    b["output_frame"] = state_json(*rec.residual, rec.residual_qubits, frame);
    b["output_lab"] = state_json(ls.state, ls.qubits, "lab");
    b["fidelity_to_oracle"] = fid(*rec.residual, oracle);
    if (!rotation) b["metrics"] = two_qubit_metrics(ls.state);
    return b;
  };

  if (p.policy == OutcomePolicy::EnumerateAll) {
    json branches = json::array();
    double total = 0.0;
    for (const auto& rec : records) {
      branches.push_back(describe(rec));
      total += rec.probability;
    }
    r["branches"] = branches;
    r["probability_sum"] = total;
    return r;
  }
  json res = describe(records.front());
  r["output"] = res;
  r["fidelity_to_oracle"] = res["fidelity_to_oracle"];
  r["frames"] = {{"angles", frame}, {"report", "lab"}};
  return r;
}

// ------------------------------------------------------------------ grover

struct GroverArgs {
  std::string label;
  std::optional<double> noise;
  int sweep = 0;
};

json cmd_grover(const GroverArgs& a) {
  BlackBoxLabel label;
  try {
    label = BlackBoxLabel::parse(a.label);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (a.noise && !(*a.noise >= 0.0 && *a.noise <= 1.0)) throw UsageError("--noise must lie in [0,1]");
  const GroverResult g = run_grover(label, a.noise);
  json r = base_report("grover");
  r["inputs"] = {{"label", label.str()}, {"noise", g.noise}};
  r["angles"] = {{"alpha", angle_json(g.alpha)}, {"beta", angle_json(g.beta)}};
  r["frame"] = "box";
  r["decode"] = "(s2 xor s4, s3 xor s1)";
  json rows = json::array();
  for (const auto& b : g.branches) {
    rows.push_back({{"s1", b.s[0]}, {"s2", b.s[1]}, {"s3", b.s[2]}, {"s4", b.s[3]},
                    {"probability", b.probability}, {"decoded", b.decoded.str()}});
  }
  r["branches"] = rows;
  json dist = json::object();
  for (int k = 0; k < 4; ++k) dist[BlackBoxLabel{k >> 1, k & 1}.str()] = g.decoded[k];
  r["decoded_distribution"] = dist;
  r["success_probability"] = g.success;
  r["no_feedforward"] = {{"subset_probability", g.no_ff_probability}, {"success_within_subset", g.no_ff_success}};
  if (a.sweep > 0) {
    if (a.sweep < 2) throw UsageError("--sweep needs at least 2 points");
    std::vector<double> ps;
    for (int i = 0; i < a.sweep; ++i) ps.push_back(static_cast<double>(i) / (a.sweep - 1));
    json curve = json::array();
    for (auto [p, s] : success_curve(label, ps)) curve.push_back({{"p", p}, {"success_probability", s}});
    r["success_curve"] = curve;
  }
  return r;
}

// -------------------------------------------------------------------- tomo

struct SimulateArgs {
  std::string state = "cluster";
  std::string rho;
  double n0 = 508.0;
  std::optional<std::uint64_t> seed;
  double duration = 600.0;
  std::string out;
};

DensityMatrix named_state(const std::string& name) {
  if (name == "cluster") return DensityMatrix::from_pure(lab_cluster_state());
  if (name == "mixed") return DensityMatrix::maximally_mixed(4);
  throw UsageError("unknown --state '" + name + "' (expected cluster or mixed; use --rho for a file)");
}

int cmd_simulate(const SimulateArgs& a, std::istream& in, std::ostream& out) {
  if (!a.seed) throw UsageError("tomo simulate requires --seed");
  if (!(a.n0 > 0)) throw UsageError("--n0 must be positive");
  DensityMatrix rho = DensityMatrix::maximally_mixed(1);
  if (!a.rho.empty()) {
    std::ifstream f;
    rho = io::density_from_json(io::read_json(open_input(a.rho, in, f), "density matrix"));
  } else {
    rho = named_state(a.state);
  }
  const tomo::CountTable t = tomo::simulate_counts(rho, a.n0, *a.seed, a.duration);
  std::ostringstream csv;
  io::write_counts_csv(csv, t);
  if (a.out.empty()) {
    out << csv.str();
    return kOk;
  }
  write_file(a.out, csv.str());
  json r = base_report("tomo simulate");
  r["inputs"] = {{"state", a.rho.empty() ? a.state : a.rho}, {"n0", a.n0}, {"duration_s", a.duration}};
  r["seed"] = *a.seed;
  std::int64_t total = 0, max_count = -1;
  std::string max_setting;
  for (const tomo::Setting& s : tomo::all_settings(t.n_qubits)) {
    const auto c = t.at(s.str());
    total += c;
    if (c > max_count) {
      max_count = c;
      max_setting = s.str();
    }
  }
  r["settings"] = t.counts.size();
  r["total_counts"] = total;
  r["max_count"] = {{"setting", max_setting}, {"count", max_count}};
  r["written"] = a.out;
  out << r.dump(2) << '\n';
  return kOk;
}

struct ReconstructArgs {
  std::string input = "-";
  double tol = 1e-10;
  int max_iter = 5000;
  int condition_qubit = 0;
  std::string condition = "P";
  std::string out;
};

json cmd_reconstruct(const ReconstructArgs& a, std::istream& in) {
  std::ifstream f;
  const tomo::CountTable t = io::read_counts_csv(open_input(a.input, in, f));
  if (!t.complete()) {
    throw FormatError("count table has " + std::to_string(t.counts.size()) + " rows, expected " +
                      std::to_string(std::size_t{1} << (2 * t.n_qubits)));
  }
  const tomo::MleOptions opts{a.tol, a.max_iter};
  json r = base_report("tomo reconstruct");
  r["inputs"] = {{"input", a.input}, {"tol", a.tol}, {"max_iter", a.max_iter}};
  if (t.seed) r["seed"] = *t.seed;
  tomo::ReconstructionReport rep = [&] {
    if (a.condition_qubit == 0) return tomo::mle_reconstruct(t, opts);
    tomo::Condition c = a.condition == "trace" ? tomo::Condition::trace_out()
                                               : tomo::Condition::project(a.condition.size() == 1 ? a.condition[0] : '?');
    r["inputs"]["condition"] = {{"qubit", a.condition_qubit}, {"kind", a.condition == "trace" ? "trace-out" : "project"}};
    if (a.condition != "trace") r["inputs"]["condition"]["label"] = a.condition;
    try {
      return tomo::conditioned_reduction(t, a.condition_qubit, c, opts);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }();
  const int n = rep.rho_mle.n_qubits();
  const json dm = io::density_to_json(rep.rho_mle.matrix(), n);
  for (auto it = dm.begin(); it != dm.end(); ++it) r[it.key()] = it.value();
  Eigen::SelfAdjointEigenSolver<Matrix> lin(rep.rho_linear, Eigen::EigenvaluesOnly);
  r["mle"] = {{"converged", rep.converged}, {"iterations", rep.iterations}, {"log_likelihood", rep.log_likelihood},
              {"scale", rep.scale}};
  r["linear_inversion"] = {{"min_eigenvalue", lin.eigenvalues().minCoeff()},
                           {"physical", lin.eigenvalues().minCoeff() >= -1e-8}};
  if (n == 4) {
    const FidelityReport fr = fidelity_report(rep.rho_mle, lab_cluster_state());
    r["metrics"] = {{"fidelity", fr.fidelity}, {"target", "cluster"}, {"exceeds_biseparable_bound", *fr.exceeds_biseparable}};
  } else if (n == 3) {
    const FidelityReport fr = fidelity_report(rep.rho_mle, projected_cluster_ghz_target());
    r["metrics"] = {{"fidelity", fr.fidelity}, {"target", "projected-cluster-ghz"},
                    {"exceeds_ghz_local_realism_bound", *fr.exceeds_ghz_local_realism}};
  }
  if (!a.out.empty()) {
    write_file(a.out, dm.dump(2) + "\n");
    r["written"] = a.out;
  }
  if (!rep.converged) throw NotConverged("maximum-likelihood reconstruction did not converge", r);
  return r;
}

// ----------------------------------------------------------------- analyze

std::vector<int> qubit_list(const std::string& spaced) {
  std::istringstream is(spaced);
  std::vector<int> q;
  for (int v; is >> v;) q.push_back(v);
  return q;
}

json cmd_analyze(const std::string& input, std::istream& in) {
  std::ifstream f;
  const DensityMatrix rho = io::density_from_json(io::read_json(open_input(input, in, f), "density matrix"));
  const MetricReport m = analyze(rho);
  json r = base_report("analyze");
  r["inputs"] = {{"input", input}};
  r["n_qubits"] = m.n_qubits;
  if (m.fidelity) {
    json fj = {{"value", m.fidelity->fidelity}, {"target", m.n_qubits == 4 ? "cluster" : "projected-cluster-ghz"}};
    if (m.fidelity->exceeds_biseparable) fj["exceeds_biseparable_bound"] = *m.fidelity->exceeds_biseparable;
    if (m.fidelity->exceeds_ghz_local_realism) {
      fj["exceeds_ghz_local_realism_bound"] = *m.fidelity->exceeds_ghz_local_realism;
    }
    r["fidelity"] = fj;
  }
  if (m.witness) r["witness"] = {{"value", *m.witness}, {"qubits", qubit_list(m.witness_qubits)}, {"entangled", *m.witness < 0}};
  if (m.ghz_fidelity) r["ghz_fidelity"] = *m.ghz_fidelity;
  if (m.tangle) {
    const bool separable = m.ppt->back() >= -1e-9;
    r["pair"] = {{"qubits", qubit_list(m.pair_qubits)},
                 {"tangle", *m.tangle},
                 {"ppt_eigenvalues", *m.ppt},
                 {"ppt_separable", separable},
                 {"chsh_max", *m.chsh},
                 {"violates_local_realism", *m.chsh > 2.0}};
  }
  return r;
}

// -------------------------------------------------------------------- spdc

struct SpdcArgs {
  double plate_deg = 27.5;
  double rf = 28000.0;
  double rb = 18000.0;
  double grid_step = 0.01;
  bool curve = false;
};

json cmd_spdc(const SpdcArgs& a) {
  if (!(a.rf > 0) || !(a.rb > 0)) throw UsageError("--rf and --rb must be positive");
  const spdc::SourceConfig cfg{a.plate_deg * kDeg, a.rf, a.rb};
  const spdc::FourFoldAmplitudes amp = spdc::four_fold_state(cfg);
  json r = base_report("spdc");
  r["inputs"] = {{"plate_angle", angle_json(cfg.plate)},
                 {"polarization_rotation", angle_json(2 * cfg.plate)},
                 {"forward_rate", a.rf},
                 {"backward_rate", a.rb}};
  auto c = [](Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; };
  r["amplitudes"] = {{"HHHH", c(amp.hhhh)}, {"HHVV", c(amp.hhvv)}, {"VVHH", c(amp.vvhh)}, {"VVVV", c(amp.vvvv)}};
  r["state"] = state_json(amp.state, iota_qubits(4), "lab");
  r["double_emission_sign"] = spdc::double_emission_sign(cfg.plate);
  r["fidelity_to_cluster"] = spdc::cluster_fidelity(cfg);
  const spdc::HwpOptimum opt = spdc::optimal_hwp(a.rf, a.rb, spdc::default_plate_grid(a.grid_step));
  r["optimum"] = {{"plate_angle", angle_json(opt.plate)},
                  {"fidelity", opt.fidelity},
                  {"reference_deg", 27.5},
                  {"difference_deg", opt.plate / kDeg - 27.5},
                  {"within_5_deg", std::abs(opt.plate / kDeg - 27.5) <= 5.0},
                  {"note", "informational: the rate-to-amplitude scaling is a model choice"}};
  if (a.curve) {
    json cv = json::array();
    for (const auto& p : opt.curve) cv.push_back({{"plate_deg", p.plate / kDeg}, {"fidelity", p.fidelity}});
    r["curve"] = cv;
  }
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and analysis tools for measurement-based quantum computing on four-qubit cluster states",
               "oneway"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);

  ClusterArgs cl;
  auto* c_cluster = app.add_subcommand("cluster", "Print a cluster state in a chosen frame");
  c_cluster->add_option("--shape", cl.shape, "lab, lin3, lin4, horseshoe or box");
  c_cluster->add_option("--frame", cl.frame, "lab, linear-cluster or box (defaults to the shape's own frame)");
  c_cluster->add_option("--graph", cl.graph, "Graph JSON file ({\"n\":..,\"edges\":[[a,b],..]}) or - for stdin");

  auto add_circuit = [&](CLI::App* c, CircuitArgs& a, bool rotation) {
    c->add_option("--shape", a.shape, rotation ? "lin3 or lin4" : "box or horseshoe");
    c->add_option("--alpha", a.alpha, "First measurement angle");
    c->add_option("--beta", a.beta, "Second measurement angle");
    if (rotation) {
      c->add_option("--gamma", a.gamma, "Third measurement angle (lin4)");
      c->add_option("--settings", a.settings, "Frame of the lin4 angles: lab (photon analysers) or cluster")
          ->capture_default_str();
    }
    c->add_flag("--deg", a.deg, "Angles are in degrees (default radians)");
    c->add_option("--policy", a.policy, "postselect, enumerate or feedforward")->capture_default_str();
    c->add_option("--pattern", a.pattern, "Pattern JSON file instead of the flags above");
  };
  CircuitArgs rot, two;
  auto* c_rotate = app.add_subcommand("rotate", "Single-qubit rotation on a linear cluster");
  add_circuit(c_rotate, rot, true);
  auto* c_two = app.add_subcommand("twoqubit", "Two-qubit gate on the box or horseshoe cluster");
  add_circuit(c_two, two, false);

  GroverArgs gr;
  auto* c_grover = app.add_subcommand("grover", "Two-qubit Grover search on the box cluster");
  c_grover->add_option("--label", gr.label, "Marked element: 00, 01, 10 or 11")->required();
  c_grover->add_option("--noise", gr.noise, "Depolarizing probability per qubit");
  c_grover->add_option("--sweep", gr.sweep, "Also report the success curve on this many points of [0,1]");

  SimulateArgs sim;
  ReconstructArgs rec;
  auto* c_tomo = app.add_subcommand("tomo", "State tomography");
  c_tomo->require_subcommand(1, 1);
  auto* c_sim = c_tomo->add_subcommand("simulate", "Simulate Poisson counts; CSV on stdout unless --out is given");
  c_sim->add_option("--state", sim.state, "cluster or mixed")->capture_default_str();
  c_sim->add_option("--rho", sim.rho, "Density-matrix JSON file to sample from");
  c_sim->add_option("--n0", sim.n0, "Count scale: expected count = n0 * probability")->capture_default_str();
  c_sim->add_option("--seed", sim.seed, "Random seed (required)");
  c_sim->add_option("--duration", sim.duration, "Acquisition time per setting, metadata only")->capture_default_str();
  c_sim->add_option("--out", sim.out, "Write the CSV here and print a JSON report");
  auto* c_rec = c_tomo->add_subcommand("reconstruct", "Maximum-likelihood reconstruction from a count CSV");
  c_rec->add_option("--input", rec.input, "Count CSV file or - for stdin")->capture_default_str();
  c_rec->add_option("--tol", rec.tol, "Relative log-likelihood tolerance")->capture_default_str();
  c_rec->add_option("--max-iter", rec.max_iter, "Iteration limit")->capture_default_str();
  c_rec->add_option("--condition-qubit", rec.condition_qubit, "Reconstruct the other qubits conditioned on this one");
  c_rec->add_option("--condition", rec.condition, "H, V, P or R (project) or trace")->capture_default_str();
  c_rec->add_option("--out", rec.out, "Also write the density-matrix JSON here");

  std::string analyze_input = "-";
  auto* c_an = app.add_subcommand("analyze", "Entanglement metrics of a density matrix");
  c_an->add_option("--input", analyze_input, "Density-matrix JSON file or - for stdin")->capture_default_str();
  std::string analyze_out;
  c_an->add_option("--out", analyze_out, "Also write the report here");

  SpdcArgs sp;
  auto* c_spdc = app.add_subcommand("spdc", "Four-photon source model and half-wave-plate tuning");
  c_spdc->add_option("--phi-deg", sp.plate_deg, "Half-wave-plate angle in degrees")->capture_default_str();
  c_spdc->add_option("--rf", sp.rf, "Forward pair rate (1/s)")->capture_default_str();
  c_spdc->add_option("--rb", sp.rb, "Backward pair rate (1/s)")->capture_default_str();
  c_spdc->add_option("--grid-step", sp.grid_step, "Optimum search step in degrees")->capture_default_str();
  c_spdc->add_flag("--curve", sp.curve, "Include the fidelity curve");

  std::string out_path;
  for (CLI::App* c : {c_cluster, c_rotate, c_two, c_grover, c_spdc}) c->add_option("--out", out_path, "Also write the report here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto emit = [&](const json& r, const std::string& path) {
    const std::string text = r.dump(2) + "\n";
    out << text;
    if (!path.empty()) write_file(path, text);
  };

  try {
    if (*c_cluster) {
      emit(cmd_cluster(cl, in), out_path);
    } else if (*c_rotate) {
      emit(cmd_circuit("rotate", rot, in), out_path);
    } else if (*c_two) {
      emit(cmd_circuit("twoqubit", two, in), out_path);
    } else if (*c_grover) {
      emit(cmd_grover(gr), out_path);
    } else if (*c_sim) {
      return cmd_simulate(sim, in, out);
    } else if (*c_rec) {
      emit(cmd_reconstruct(rec, in), "");
    } else if (*c_an) {
      emit(cmd_analyze(analyze_input, in), analyze_out);
    } else if (*c_spdc) {
      emit(cmd_spdc(sp), out_path);
    }
    return kOk;
  } catch (const NotConverged& e) {
    out << e.report.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kFormat;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kFormat;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cin, out, err);
}

}  // namespace oneway::cli
