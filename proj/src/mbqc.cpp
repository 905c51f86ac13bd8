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

#include "oneway/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oneway {

PureState MeasurementBasis::vector(int s, double theta) const {
  if (s != 0 && s != 1) throw InvalidArgument("measurement outcome must be 0 or 1");
  if (kind == Kind::Computational) return s == 0 ? ket::zero() : ket::one();
  return s == 0 ? ket::plus_alpha(theta) : ket::minus_alpha(theta);
}

std::string_view to_string(OutcomePolicy p) {
  switch (p) {
    case OutcomePolicy::PostSelectZeros:
      return "postselect";
    case OutcomePolicy::EnumerateAll:
      return "enumerate";
    case OutcomePolicy::Feedforward:
      return "feedforward";
  }
  return "?";
}

OutcomePolicy parse_policy(std::string_view name) {
  if (name == "postselect") return OutcomePolicy::PostSelectZeros;
  if (name == "enumerate") return OutcomePolicy::EnumerateAll;
  if (name == "feedforward") return OutcomePolicy::Feedforward;
  throw InvalidArgument("unknown outcome policy '" + std::string(name) + "'");
}

MeasurementPattern::MeasurementPattern(std::vector<MeasurementStep> steps, OutcomePolicy policy,
                                       PatternTopology topology)
    : steps_(std::move(steps)), policy_(policy), topology_(topology) {
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (steps_[i].qubit == steps_[j].qubit) {
        throw InvalidArgument("qubit " + std::to_string(steps_[i].qubit) + " measured twice");
      }
    }
  }
}

namespace {

struct Partial {
  double probability = 1.0;
  std::optional<PureState> state;
  std::vector<Qubit> labels;
};

Partial initial(const PureState& s) {
  Partial p{1.0, s, {}};
  for (Qubit q = 1; q <= s.n_qubits(); ++q) p.labels.push_back(q);
  return p;
}

Partial measure(const Partial& in, Qubit qubit, const PureState& vec) {
  Partial out = in;
  auto it = std::find(in.labels.begin(), in.labels.end(), qubit);
  if (it == in.labels.end()) {
    throw InvalidArgument("pattern measures qubit " + std::to_string(qubit) + " which is not present");
  }
  out.labels.erase(out.labels.begin() + (it - in.labels.begin()));
  if (!in.state) {
    out.probability = 0.0;
    return out;
  }
  const Qubit local = static_cast<Qubit>(it - in.labels.begin()) + 1;
  if (in.state->n_qubits() == 1) {
    const double p = std::norm(vec.amplitudes().dot(in.state->amplitudes()));
    out.probability *= p;
    out.state.reset();
    return out;
  }
  const Projection pr = project(*in.state, local, vec);
  out.probability *= pr.probability;
  out.state = pr.residual;
  return out;
}

OutcomeRecord to_record(const Partial& p, std::map<Qubit, int> bits, std::vector<double> angles) {
  OutcomeRecord r;
  r.bits = std::move(bits);
  r.probability = std::clamp(p.probability, 0.0, 1.0);
  r.residual = p.state;
  r.residual_qubits = p.labels;
  r.angles_used = std::move(angles);
  return r;
}

void check_in_range(const PureState& state, const MeasurementPattern& pattern) {
  for (const auto& st : pattern.steps()) {
    if (st.qubit < 1 || st.qubit > state.n_qubits()) {
      throw InvalidArgument("pattern qubit " + std::to_string(st.qubit) + " outside a " +
                            std::to_string(state.n_qubits()) + "-qubit state");
    }
  }
}

void enumerate_fixed(const MeasurementPattern& pattern, std::size_t i, const Partial& cur,
                     std::map<Qubit, int>& bits, std::vector<double>& angles, std::vector<OutcomeRecord>& out) {
  if (i == pattern.steps().size()) {
    out.push_back(to_record(cur, bits, angles));
    return;
  }
  const MeasurementStep& st = pattern.steps()[i];
  angles.push_back(st.basis.angle);
  for (int s = 0; s < 2; ++s) {
    bits[st.qubit] = s;
    enumerate_fixed(pattern, i + 1, measure(cur, st.qubit, st.basis.vector(s)), bits, angles, out);
  }
  bits.erase(st.qubit);
  angles.pop_back();
}

struct Byproduct {
  int x = 0;
  int z = 0;
};

// Running byproduct before step i is applied; returns the angle to use.
double adapted_angle(const MeasurementStep& st, const Byproduct& b) {
  if (st.basis.kind == MeasurementBasis::Kind::Computational) return 0.0;
  return b.x ? -st.basis.angle : st.basis.angle;
}

Byproduct advance(const MeasurementStep& st, const Byproduct& b, int s) {
  if (st.basis.kind == MeasurementBasis::Kind::Computational) return {b.x, b.z ^ s};
  return {s ^ b.z, b.x};
}

void enumerate_adapted(const MeasurementPattern& pattern, std::size_t i, const Partial& cur, Byproduct b,
                       std::map<Qubit, int>& bits, std::vector<double>& angles, std::vector<OutcomeRecord>& out) {
  if (i == pattern.steps().size()) {
    out.push_back(to_record(cur, bits, angles));
    return;
  }
  const MeasurementStep& st = pattern.steps()[i];
  const double theta = adapted_angle(st, b);
  angles.push_back(theta);
  for (int s = 0; s < 2; ++s) {
    bits[st.qubit] = s;
    enumerate_adapted(pattern, i + 1, measure(cur, st.qubit, st.basis.vector(s, theta)), advance(st, b, s), bits,
                      angles, out);
  }
  bits.erase(st.qubit);
  angles.pop_back();
}

double wrap(double a) {
  const double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  return a;
}

bool same_angle(double a, double b) {
  const double d = wrap(a - b);
  return d < 1e-9 || 2 * std::numbers::pi - d < 1e-9;
}

}  // namespace

std::vector<OutcomeRecord> enumerate_adaptive(const PureState& state, const MeasurementPattern& pattern) {
  if (pattern.topology() != PatternTopology::Chain) {
    throw Unsupported("adaptive measurement is implemented for 1D chain patterns only");
  }
  check_in_range(state, pattern);
  std::vector<OutcomeRecord> out;
  std::map<Qubit, int> bits;
  std::vector<double> angles;
  enumerate_adapted(pattern, 0, initial(state), {}, bits, angles, out);
  return out;
}

PureState apply_byproducts(const OutcomeRecord& branch, const MeasurementPattern& pattern) {
  if (pattern.topology() != PatternTopology::Chain) {
    throw Unsupported("byproduct correction is implemented for 1D chain patterns only");
  }
  if (!branch.residual) throw InvalidArgument("cannot correct a zero-probability branch");
  if (branch.residual->n_qubits() != 1) {
    throw InvalidArgument("a chain pattern must leave exactly one output qubit");
  }
  if (branch.angles_used.size() != pattern.steps().size()) {
    throw InvalidArgument("branch does not belong to this pattern");
  }
  Byproduct b;
  for (std::size_t i = 0; i < pattern.steps().size(); ++i) {
    const MeasurementStep& st = pattern.steps()[i];
    auto it = branch.bits.find(st.qubit);
    if (it == branch.bits.end()) throw InvalidArgument("branch lacks the outcome of qubit " + std::to_string(st.qubit));
    if (st.basis.kind == MeasurementBasis::Kind::Equatorial && !same_angle(branch.angles_used[i], adapted_angle(st, b))) {
      throw InvalidArgument("step on qubit " + std::to_string(st.qubit) +
                            " was not measured at the adapted angle; a Pauli cannot correct it");
    }
    b = advance(st, b, it->second);
  }
  PureState out = *branch.residual;
  if (b.x) out = apply(out, make_gate(GateKind::X), {1});
  if (b.z) out = apply(out, make_gate(GateKind::Z), {1});
  return out;
}

std::vector<OutcomeRecord> run_pattern(const PureState& state, const MeasurementPattern& pattern) {
  check_in_range(state, pattern);
  switch (pattern.policy()) {
    case OutcomePolicy::PostSelectZeros: {
      Partial cur = initial(state);
      std::map<Qubit, int> bits;
      std::vector<double> angles;
      for (const auto& st : pattern.steps()) {
        cur = measure(cur, st.qubit, st.basis.vector(0));
        bits[st.qubit] = 0;
        angles.push_back(st.basis.angle);
      }
      if (cur.probability < 1e-12) throw InvalidArgument("post-selected all-zeros branch has zero probability");
      return {to_record(cur, bits, angles)};
    }
    case OutcomePolicy::EnumerateAll: {
      std::vector<OutcomeRecord> out;
      std::map<Qubit, int> bits;
      std::vector<double> angles;
      enumerate_fixed(pattern, 0, initial(state), bits, angles, out);
      return out;
    }
    case OutcomePolicy::Feedforward: {
      const std::vector<OutcomeRecord> branches = enumerate_adaptive(state, pattern);
      double total = 0.0;
      for (const auto& b : branches) total += b.probability;
      const auto first = std::find_if(branches.begin(), branches.end(), [](const OutcomeRecord& r) { return r.residual.has_value(); });
      if (first == branches.end()) throw InvalidArgument("every branch has zero probability");
      OutcomeRecord r = *first;
      for (auto& [q, s] : r.bits) s = 0;
      r.probability = std::min(1.0, total);
      r.residual = apply_byproducts(*first, pattern);
      return {r};
    }
  }
  throw InvalidArgument("unknown policy");
}

// ------------------------------------------------------------------ circuits

namespace {

CircuitOutput finish(const OutcomeRecord& r, const Frame& frame) {
  if (!r.residual) throw InvalidArgument("circuit branch has zero probability");
  LabelledState lab = residual_to_lab(*r.residual, r.residual_qubits, frame);
  return CircuitOutput{*r.residual, r.residual_qubits, lab.state, lab.qubits, frame.tag, r.probability};
}

MeasurementStep eq(Qubit q, double a) { return {q, MeasurementBasis::equatorial(a)}; }

PureState two_qubit_plus() { return tensor(ket::plus(), ket::plus()); }

}  // namespace


PreparedPattern prepare_pattern(const PatternSpec& spec) {
  const Frame lab = Frame::make(FrameTag::Lab);
  auto in_frame = [&](FrameTag tag) {
    Frame f = Frame::make(tag);
    PureState st = to_frame(lab_cluster_state(), lab, f);
    return std::pair<PureState, Frame>(std::move(st), std::move(f));
  };
  if (spec.cluster == "lin3") {
    auto [st, f] = in_frame(FrameTag::LinearCluster);
    MeasurementPattern p({{1, MeasurementBasis::computational()}, eq(2, spec.alpha), eq(3, spec.beta)}, spec.policy,
                         PatternTopology::Chain);
    return {std::move(st), std::move(p), std::move(f)};
  }
  if (spec.cluster == "lin4") {
    if (!spec.gamma) throw InvalidArgument("lin4 needs three angles (gamma is missing)");
    std::vector<MeasurementStep> steps{eq(1, spec.alpha), eq(2, spec.beta), eq(3, *spec.gamma)};
    if (spec.settings == SettingsFrame::Lab) {
      return {lab_cluster_state(), MeasurementPattern(std::move(steps), spec.policy), lab};
    }
    auto [st, f] = in_frame(FrameTag::LinearCluster);
    return {std::move(st), MeasurementPattern(std::move(steps), spec.policy, PatternTopology::Chain), std::move(f)};
  }
  if (spec.cluster == "box") {
    auto [st, f] = in_frame(FrameTag::Box);
    return {std::move(st), MeasurementPattern({eq(1, spec.alpha), eq(4, spec.beta)}, spec.policy), std::move(f)};
  }
  if (spec.cluster == "horseshoe") {
    auto [st, f] = in_frame(FrameTag::LinearCluster);
    return {std::move(st), MeasurementPattern({eq(2, spec.alpha), eq(3, spec.beta)}, spec.policy), std::move(f)};
  }
  throw InvalidArgument("unknown circuit '" + spec.cluster + "' (expected lin3, lin4, box or horseshoe)");
}

namespace {

CircuitOutput run_named(const PatternSpec& spec) {
  const PreparedPattern p = prepare_pattern(spec);
  return finish(run_pattern(p.state, p.pattern).front(), p.frame);
}

}  // namespace

CircuitOutput circuit_lin3(double alpha, double beta) { return run_named({"lin3", alpha, beta, std::nullopt}); }

CircuitOutput circuit_lin4(double alpha, double beta, double gamma, SettingsFrame settings) {
  return run_named({"lin4", alpha, beta, gamma, OutcomePolicy::PostSelectZeros, settings});
}

CircuitOutput circuit_box(double alpha, double beta) { return run_named({"box", alpha, beta, std::nullopt}); }

CircuitOutput circuit_horseshoe(double alpha, double beta) { return run_named({"horseshoe", alpha, beta, std::nullopt}); }

PureState oracle_lin3(double alpha, double beta) {
  PureState s = ket::plus();
  s = apply(s, make_gate(GateKind::Rz, -alpha), {1});
  return apply(s, make_gate(GateKind::Rx, -beta), {1});
}

PureState oracle_lin4(double alpha, double beta, double gamma) {
  PureState s = oracle_lin3(alpha, beta);
  s = apply(s, make_gate(GateKind::Rz, -gamma), {1});
  return apply(s, make_gate(GateKind::H), {1});
}

PureState oracle_lin4_lab_settings(double alpha, double beta, double gamma) {
  PureState s = apply(ket::plus(), make_gate(GateKind::Rz, -(alpha + beta)), {1});
  s = apply(s, make_gate(GateKind::H), {1});
  return apply(s, make_gate(GateKind::Rz, -gamma), {1});
}

PureState oracle_horseshoe(double alpha, double beta) {
  PureState s = apply(two_qubit_plus(), make_gate(GateKind::CPhase), {1, 2});
  s = apply(s, make_gate(GateKind::Rz, -alpha), {1});
  s = apply(s, make_gate(GateKind::Rz, -beta), {2});
  s = apply(s, make_gate(GateKind::H), {1});
  return apply(s, make_gate(GateKind::H), {2});
}

PureState oracle_box(double alpha, double beta) {
  return apply(oracle_horseshoe(alpha, beta), make_gate(GateKind::CPhase), {1, 2});
}

}  // namespace oneway
