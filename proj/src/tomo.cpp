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

#include "oneway/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace oneway::tomo {

namespace {

PureState letter_vector(char c) {
  switch (c) {
    case 'H':
      return ket::horizontal();
    case 'V':
      return ket::vertical();
    case 'P':
      return ket::plus();
    case 'R':
      return ket::right();
    default:
      throw InvalidArgument(std::string("setting letter '") + c + "' is not one of H, V, P, R");
  }
}

std::size_t pow4(int n) { return std::size_t{1} << (2 * n); }

void check_n(int n) {
  if (n < 1 || n > 4) throw DimensionError("tomography supports 1 to 4 qubits");
}

}  // namespace

Setting::Setting(std::string labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("empty setting");
  for (char c : labels_) {
    if (kAlphabet.find(c) == std::string_view::npos) {
      throw InvalidArgument("setting '" + labels_ + "' has letter '" + std::string(1, c) + "' outside HVPR");
    }
  }
}

PureState Setting::vector() const {
  std::vector<PureState> f;
  for (char c : labels_) f.push_back(letter_vector(c));
  return PureState::product(f);
}

std::size_t Setting::index() const {
  std::size_t i = 0;
  for (char c : labels_) i = 4 * i + kAlphabet.find(c);
  return i;
}

std::vector<Setting> all_settings(int n_qubits) {
  check_n(n_qubits);
  std::vector<Setting> out;
  out.reserve(pow4(n_qubits));
  for (std::size_t i = 0; i < pow4(n_qubits); ++i) {
    std::string s(n_qubits, 'H');
    std::size_t r = i;
    for (int q = n_qubits - 1; q >= 0; --q) {
      s[q] = kAlphabet[r % 4];
      r /= 4;
    }
    out.emplace_back(std::move(s));
  }
  return out;
}

namespace {

// Column s holds |v_s> for every setting in canonical order.
Matrix setting_vectors(int n) {
  const auto settings = all_settings(n);
  Matrix v(Eigen::Index{1} << n, static_cast<Eigen::Index>(settings.size()));
  for (std::size_t s = 0; s < settings.size(); ++s) v.col(static_cast<Eigen::Index>(s)) = settings[s].vector().amplitudes();
  return v;
}

}  // namespace

int gram_rank(int n_qubits, double threshold) {
  const Matrix v = setting_vectors(n_qubits);
  const Eigen::MatrixXd g = (v.adjoint() * v).cwiseAbs2();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  return static_cast<int>((es.eigenvalues().array() > threshold).count());
}

double expected_probability(const DensityMatrix& rho, const Setting& s) {
  if (rho.n_qubits() != s.n_qubits()) {
    throw DimensionError("setting " + s.str() + " does not match a " + std::to_string(rho.n_qubits()) + "-qubit state");
  }
  return std::clamp(fidelity_pure(rho, s.vector()), 0.0, 1.0);
}

// --------------------------------------------------------------- counts

bool CountTable::complete() const {
  if (counts.size() != pow4(n_qubits)) return false;
  for (const auto& [k, v] : counts) {
    if (static_cast<int>(k.size()) != n_qubits || v < 0) return false;
  }
  return true;
}

std::int64_t CountTable::at(const std::string& setting) const {
  auto it = counts.find(setting);
  if (it == counts.end()) throw InvalidArgument("count table has no entry for setting " + setting);
  return it->second;
}

std::vector<double> CountTable::ordered() const {
  check_n(n_qubits);
  if (!complete()) {
    throw InvalidArgument("count table has " + std::to_string(counts.size()) + " entries, expected " +
                          std::to_string(pow4(n_qubits)));
  }
  std::vector<double> out(pow4(n_qubits));
  for (const auto& [k, v] : counts) out[Setting(k).index()] = static_cast<double>(v);
  return out;
}

CountTable simulate_counts(const DensityMatrix& rho, double n0, std::uint64_t seed, double duration_s) {
  if (!(n0 > 0)) throw InvalidArgument("n0 must be positive");
  std::mt19937_64 rng(seed);
  CountTable t;
  t.n_qubits = rho.n_qubits();
  t.duration_s = duration_s;
  t.seed = seed;
  t.n0 = n0;
  for (const Setting& s : all_settings(rho.n_qubits())) {
    const double mean = n0 * expected_probability(rho, s);
    std::int64_t c = 0;
    if (mean > 0) {
      std::poisson_distribution<std::int64_t> pd(mean);
      c = pd(rng);
    }
    t.counts[s.str()] = c;
  }
  return t;
}

CountTable expected_counts(const DensityMatrix& rho, double n0) {
  if (!(n0 > 0)) throw InvalidArgument("n0 must be positive");
  CountTable t;
  t.n_qubits = rho.n_qubits();
  t.n0 = n0;
  for (const Setting& s : all_settings(rho.n_qubits())) {
    t.counts[s.str()] = std::llround(n0 * expected_probability(rho, s));
  }
  return t;
}

// ------------------------------------------------------- linear inversion

namespace {

Matrix pauli_string(std::size_t p, int n) {
  Matrix m = Matrix::Ones(1, 1);
  for (int q = 0; q < n; ++q) {
    const int k = static_cast<int>((p >> (2 * (n - 1 - q))) & 3);
    const Eigen::Matrix2cd s = pauli(k);
    Matrix next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    }
    m = std::move(next);
  }
  return m;
}

}  // namespace

Matrix linear_inversion(const CountTable& counts) {
  const int n = counts.n_qubits;
  const std::vector<double> nvec = counts.ordered();
  const auto settings = all_settings(n);
  const std::size_t m = settings.size();

  double total = 0.0;
  for (std::size_t s = 0; s < m; ++s) {
    if (settings[s].str().find_first_not_of("HV") == std::string::npos) total += nvec[s];
  }
  if (total <= 0) throw InvalidArgument("linear inversion: no counts in the computational-basis settings");

  // Single-qubit Bloch components <v|sigma_k|v> for each letter.
  double bloch[4][4];
  for (int l = 0; l < 4; ++l) {
    const PureState v = letter_vector(kAlphabet[l]);
    for (int k = 0; k < 4; ++k) bloch[l][k] = v.amplitudes().dot(pauli(k) * v.amplitudes()).real();
  }
  const double d = static_cast<double>(Eigen::Index{1} << n);
  Eigen::MatrixXd a(m, m);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t p = 0; p < m; ++p) {
      double prod = 1.0;
      for (int q = 0; q < n; ++q) {
        const int sl = static_cast<int>((s >> (2 * (n - 1 - q))) & 3);
        const int pk = static_cast<int>((p >> (2 * (n - 1 - q))) & 3);
        prod *= bloch[sl][pk];
      }
      a(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p)) = prod / d;
    }
  }
  Eigen::VectorXd prob(m);
  for (std::size_t s = 0; s < m; ++s) prob[static_cast<Eigen::Index>(s)] = nvec[s] / total;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw InvalidArgument("linear inversion: settings do not span the operator space");
  const Eigen::VectorXd c = lu.solve(prob);

  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix rho = Matrix::Zero(dim, dim);
  for (std::size_t p = 0; p < m; ++p) rho += (c[static_cast<Eigen::Index>(p)] / d) * pauli_string(p, n);
  return 0.5 * (rho + rho.adjoint());
}

DensityMatrix project_to_physical(const Matrix& hermitian) {
  const Eigen::Index d = hermitian.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  const double tr = h.trace().real();
  if (!(tr > 0)) throw InvalidArgument("cannot project a matrix with non-positive trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h / tr);
  Eigen::VectorXd mu = es.eigenvalues();  // ascending
  double a = 0.0;
  Eigen::Index i = 0;
  // Zero the most negative eigenvalues while the shared deficit would still
  // leave them negative.
  while (i < d && mu[i] + a / static_cast<double>(d - i) < 0) {
    a += mu[i];
    mu[i] = 0.0;
    ++i;
  }
  for (Eigen::Index j = i; j < d; ++j) mu[j] += a / static_cast<double>(d - i);
  Matrix rho = es.eigenvectors() * mu.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n, 0.5 * (rho + rho.adjoint()));
}

// ------------------------------------------------------------ likelihood

double log_likelihood(const CountTable& counts, const DensityMatrix& rho, double scale) {
  if (counts.n_qubits != rho.n_qubits()) throw DimensionError("count table and state differ in qubit count");
  const std::vector<double> n = counts.ordered();
  const auto settings = all_settings(counts.n_qubits);
  double ll = 0.0;
  for (std::size_t s = 0; s < settings.size(); ++s) {
    const double mu = scale * expected_probability(rho, settings[s]);
    if (n[s] > 0) {
      if (mu <= 0) return -std::numeric_limits<double>::infinity();
      ll += n[s] * std::log(mu);
    }
    ll -= mu;
  }
  return ll;
}

double profile_log_likelihood(const CountTable& counts, const DensityMatrix& rho) {
  const std::vector<double> n = counts.ordered();
  double total_n = 0.0, total_q = 0.0;
  for (const Setting& s : all_settings(counts.n_qubits)) {
    total_q += expected_probability(rho, s);
    total_n += n[s.index()];
  }
  if (total_q <= 0) return total_n > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
  return log_likelihood(counts, rho, total_n / total_q);
}

// -------------------------------------------------------------- objective

namespace detail {

PoissonObjective::PoissonObjective(const CountTable& counts)
    : d_(1 << counts.n_qubits), v_(setting_vectors(counts.n_qubits)) {
  const std::vector<double> n = counts.ordered();
  n_ = Eigen::Map<const Eigen::VectorXd>(n.data(), static_cast<Eigen::Index>(n.size()));
  for (double c : n) {
    if (c > 0) constant_ += c * std::log(c) - c;
  }
}

Matrix PoissonObjective::unpack(const Eigen::VectorXd& x) const {
  Matrix t = Matrix::Zero(d_, d_);
  Eigen::Index k = 0;
  for (int i = 0; i < d_; ++i) {
    t(i, i) = x[k++];
    for (int j = 0; j < i; ++j) {
      t(i, j) = Complex(x[k], x[k + 1]);
      k += 2;
    }
  }
  return t;
}

Eigen::VectorXd PoissonObjective::pack(const Matrix& lower) const {
  Eigen::VectorXd x(n_params());
  Eigen::Index k = 0;
  for (int i = 0; i < d_; ++i) {
    x[k++] = lower(i, i).real();
    for (int j = 0; j < i; ++j) {
      x[k++] = lower(i, j).real();
      x[k++] = lower(i, j).imag();
    }
  }
  return x;
}

Matrix PoissonObjective::factor(const Matrix& m) {
  const Eigen::Index d = m.rows();
  const Matrix rev = m.reverse();  // J M J
  Eigen::LLT<Matrix> llt(rev);
  if (llt.info() != Eigen::Success) throw InvalidArgument("initial estimate is not positive definite");
  const Matrix l = llt.matrixL();
  Matrix t = l.adjoint().reverse();  // J L^dagger J, lower triangular
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) t(i, j) = 0.0;
  }
  return t;
}

double PoissonObjective::value(const Eigen::VectorXd& x, Eigen::VectorXd* grad) const {
  const Matrix t = unpack(x);
  const Matrix w = t * v_;
  const Eigen::VectorXd mu = w.colwise().squaredNorm().transpose();
  double f = -constant_;
  Eigen::VectorXd coef(mu.size());
  for (Eigen::Index s = 0; s < mu.size(); ++s) {
    if (n_[s] > 0) {
      if (!(mu[s] > 0)) return std::numeric_limits<double>::infinity();
      f += mu[s] - n_[s] * std::log(mu[s]);
      coef[s] = 1.0 - n_[s] / mu[s];
    } else {
      f += mu[s];
      coef[s] = 1.0;
    }
  }
  if (grad) {
    const Matrix g = (w * coef.cast<Complex>().asDiagonal()) * v_.adjoint();
    grad->resize(n_params());
    Eigen::Index k = 0;
    for (int i = 0; i < d_; ++i) {
      (*grad)[k++] = 2.0 * g(i, i).real();
      for (int j = 0; j < i; ++j) {
        (*grad)[k++] = 2.0 * g(i, j).real();
        (*grad)[k++] = 2.0 * g(i, j).imag();
      }
    }
  }
  return f;
}

}  // namespace detail

// -------------------------------------------------------------- optimizer

namespace {

struct LineResult {
  bool ok;
  double step;
  double f;
  Eigen::VectorXd x;
  Eigen::VectorXd g;
};

// Strong Wolfe line search (bracketing followed by safeguarded bisection).
LineResult wolfe_search(const detail::PoissonObjective& obj, const Eigen::VectorXd& x0, double f0,
                        const Eigen::VectorXd& g0, const Eigen::VectorXd& dir, double a_init) {
  constexpr double c1 = 1e-4, c2 = 0.9;
  const double dphi0 = g0.dot(dir);
  auto eval = [&](double a, LineResult& r) {
    r.step = a;
    r.x = x0 + a * dir;
    r.f = obj.value(r.x, &r.g);
    return std::isfinite(r.f) ? r.g.dot(dir) : std::numeric_limits<double>::infinity();
  };
  LineResult best{false, 0.0, f0, x0, g0};
  auto zoom = [&](double lo, double f_lo, double hi) -> LineResult {
    for (int it = 0; it < 40; ++it) {
      const double a = 0.5 * (lo + hi);
      LineResult r;
      const double dp = eval(a, r);
      if (!std::isfinite(r.f) || r.f > f0 + c1 * a * dphi0 || r.f >= f_lo) {
        hi = a;
      } else {
        if (r.f < best.f) {
          best = r;
          best.ok = true;
        }
        if (std::abs(dp) <= -c2 * dphi0) {
          r.ok = true;
          return r;
        }
        if (dp * (hi - lo) >= 0) hi = lo;
        lo = a;
        f_lo = r.f;
      }
    }
    return best;
  };
  double a_prev = 0.0, f_prev = f0;
  double a = a_init;
  for (int it = 0; it < 40; ++it) {
    LineResult r;
    const double dp = eval(a, r);
    if (!std::isfinite(r.f) || r.f > f0 + c1 * a * dphi0 || (it > 0 && r.f >= f_prev)) {
      return zoom(a_prev, f_prev, a);
    }
    if (r.f < best.f) {
          best = r;
          best.ok = true;
        }
    if (std::abs(dp) <= -c2 * dphi0) {
      r.ok = true;
      return r;
    }
    if (dp >= 0) return zoom(a, r.f, a_prev);
    a_prev = a;
    f_prev = r.f;
    a *= 2.0;
  }
  return best;
}

}  // namespace

ReconstructionReport mle_reconstruct(const CountTable& counts, const MleOptions& opts) {
  if (!(opts.tol > 0) || opts.max_iter < 1) throw InvalidArgument("mle: tol must be positive and max_iter >= 1");
  const std::vector<double> nvec = counts.ordered();
  double total = 0.0;
  for (double c : nvec) total += c;
  if (total <= 0) throw InvalidArgument("mle: every count is zero");

  const Matrix rho_lin = linear_inversion(counts);
  const int n = counts.n_qubits;
  const Eigen::Index d = Eigen::Index{1} << n;

  // Start strictly inside the cone so the factorization exists.
  const DensityMatrix proj = project_to_physical(rho_lin);
  constexpr double kMix = 1e-4;
  const Matrix rho0 = (1.0 - kMix) * proj.matrix() + kMix * Matrix::Identity(d, d) / static_cast<double>(d);
  const DensityMatrix start(n, rho0);
  double q_total = 0.0;
  for (const Setting& s : all_settings(n)) q_total += expected_probability(start, s);
  const double scale0 = total / q_total;

  const detail::PoissonObjective obj(counts);
  Eigen::VectorXd x = obj.pack(detail::PoissonObjective::factor(scale0 * rho0));
  Eigen::VectorXd g;
  double f = obj.value(x, &g);

  constexpr int kMemory = 20;
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  auto reset = [&] {
    s_hist.clear();
    y_hist.clear();
    rho_hist.clear();
  };
  auto first_step = [&] { return std::min(1.0, 1.0 / std::max(1e-300, g.lpNorm<Eigen::Infinity>())); };

  bool converged = false;
  int iter = 0;
  while (iter < opts.max_iter) {
    ++iter;
    // Two-loop recursion for the quasi-Newton direction.
    Eigen::VectorXd q = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t i = 0; i < s_hist.size(); ++i) q += s_hist[i] * (alpha[i] - rho_hist[i] * y_hist[i].dot(q));
    Eigen::VectorXd dir = -q;
    if (g.dot(dir) >= 0) {
      reset();
      dir = -g;
    }
    LineResult lr = wolfe_search(obj, x, f, g, dir, s_hist.empty() ? first_step() : 1.0);
    if (!lr.ok && !s_hist.empty()) {
      reset();
      lr = wolfe_search(obj, x, f, g, -g, first_step());
    }
    if (!lr.ok) {
      // Not even steepest descent lowers the objective: stationary to
      // machine precision, so the gain is zero.
      converged = true;
      break;
    }
    const Eigen::VectorXd sv = lr.x - x;
    const Eigen::VectorXd yv = lr.g - g;
    const double gain = f - lr.f;
    x = lr.x;
    g = lr.g;
    f = lr.f;
    const double sy = sv.dot(yv);
    if (sy > 1e-12 * sv.norm() * yv.norm()) {
      s_hist.push_back(sv);
      y_hist.push_back(yv);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    if (gain / std::max(1.0, std::abs(obj.log_likelihood_of(f))) < opts.tol) {
      converged = true;
      break;
    }
  }

  const Matrix t = obj.unpack(x);
  const Matrix m = t.adjoint() * t;
  const double scale = m.trace().real();
  Matrix rho = m / scale;
  rho = 0.5 * (rho + rho.adjoint());
  return ReconstructionReport{DensityMatrix(n, std::move(rho)), rho_lin, obj.log_likelihood_of(f), scale, iter,
                              converged};
}

// ------------------------------------------------------ conditioned tables

CountTable conditioned_table(const CountTable& counts, Qubit qubit, const Condition& condition) {
  const int n = counts.n_qubits;
  if (n < 2) throw DimensionError("conditioning needs at least two qubits");
  if (qubit < 1 || qubit > n) throw InvalidArgument("qubit " + std::to_string(qubit) + " out of range");
  if (condition.kind == ConditionKind::Project && kAlphabet.find(condition.label) == std::string_view::npos) {
    throw InvalidArgument(std::string("conditioning label '") + condition.label + "' is not one of H, V, P, R");
  }
  CountTable out;
  out.n_qubits = n - 1;
  out.duration_s = counts.duration_s;
  out.seed = counts.seed;
  for (const Setting& rest : all_settings(n - 1)) {
    auto full = [&](char c) {
      std::string s = rest.str();
      s.insert(s.begin() + (qubit - 1), c);
      auto it = counts.counts.find(s);
      if (it == counts.counts.end()) {
        throw InvalidArgument("conditioning needs setting " + s + ", which is missing from the table");
      }
      return it->second;
    };
    out.counts[rest.str()] =
        condition.kind == ConditionKind::Project ? full(condition.label) : full('H') + full('V');
  }
  return out;
}

ReconstructionReport conditioned_reduction(const CountTable& counts, Qubit qubit, const Condition& condition,
                                           const MleOptions& opts) {
  return mle_reconstruct(conditioned_table(counts, qubit, condition), opts);
}

}  // namespace oneway::tomo
