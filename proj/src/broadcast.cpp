// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qclone/broadcast.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qclone/cloners.hpp"
#include "qclone/measures.hpp"

namespace qclone {

namespace {

void check_alpha2(double alpha2) {
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) throw std::invalid_argument("alpha^2 must lie in [0,1]");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 0.5)) throw std::invalid_argument("lambda must lie in [0,1/2)");
}

Mat symmetric_from_upper(const double (&u)[4][4]) {
  Mat m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = i <= j ? u[i][j] : u[j][i];
  return m;
}

// Two-clone output of BH(lambda, 1 - 2 lambda) for the one-qubit input r.
Mat local_clone_matrix(const Mat& r, double lambda) {
  const double mu = 1.0 - 2.0 * lambda;
  Mat k = Mat::Zero(4, 4);
  k(0, 0) = (1.0 - 2.0 * lambda) * r(0, 0);
  k(3, 3) = (1.0 - 2.0 * lambda) * r(1, 1);
  k(1, 1) = k(2, 2) = k(1, 2) = k(2, 1) = lambda * (r(0, 0) + r(1, 1));
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}}) {
    k(i, j) = mu / 2.0 * r(0, 1);
    k(j, i) = mu / 2.0 * r(1, 0);
  }
  return k;
}

DensityOperator two_qubit(Mat m) { return {{2, 2}, std::move(m)}; }

Interval checked(double lo, double hi, IntervalKind kind) {
  return {std::max(0.0, lo), std::min(1.0, hi), kind};
}

BroadcastOutputs simulated_special(double alpha2, double lambda) {
  return broadcast_simulated(broadcast_state({std::sqrt(alpha2), std::sqrt(1.0 - alpha2), 0.0, 0.0}), lambda);
}

// Bisection for the sign change of `pred` between a (pred false) and b (pred true).
double bisect(const std::function<bool(double)>& pred, double a, double b, double tol) {
  while (std::abs(b - a) > tol) {
    const double m = 0.5 * (a + b);
    (pred(m) ? b : a) = m;
  }
  return 0.5 * (a + b);
}

int label_position(int label) {
  switch (label) {
    case 1: return 0;
    case 2: return 1;
    case 5: return 2;
    case 3: return 3;
    case 4: return 4;
    case 6: return 5;
    default: throw std::invalid_argument("protocol qubit labels are 1..6");
  }
}

bool npt(const DensityOperator& rho) { return min_pt_eigenvalue(rho, {0}) < -1e-12; }

const std::pair<int, int> kSeparablePairs[] = {{1, 2}, {1, 5}, {3, 4}, {3, 6}};
const std::pair<int, int> kEntangledPairs[] = {{2, 5}, {4, 6}, {2, 3}, {3, 5}, {1, 4}, {1, 6}};

SwapResult swap_impl(const DensityOperator& rho_325, BellLabel outcome, bool printed) {
  if (rho_325.dims != Dims{2, 2, 2}) throw std::invalid_argument("swap_extend: expected a three-qubit state");
  // order 3, 2, 5, 8, 7
  const DensityOperator full = tensor(rho_325, projector(bell_state(BellLabel::PsiMinus)));
  const BellOutcome m = bell_project(full, 1, 3, outcome);
  SwapResult r;
  r.probability = m.probability;
  r.valid = m.valid;
  if (!m.valid) {
    r.rho = {{2, 2, 2}, Mat::Zero(8, 8)};
    return r;
  }
  // remaining order 3, 5, 7
  Mat u = embed(swap_correction(outcome), m.state.dims, {2});
  if (printed && outcome == BellLabel::PhiPlus)
    u = embed(pauli_z(), m.state.dims, {1}) * embed(pauli_x(), m.state.dims, {2});
  const DensityOperator corrected{m.state.dims, u * m.state.mat * u.adjoint()};
  r.rho = permute(corrected, {0, 2, 1});
  return r;
}

}  // namespace

double sd_cloner_lambda_star(double alpha2) {
  check_alpha2(alpha2);
  return 0.75 * alpha2 * (1.0 - alpha2);
}

double sd_cloner_distortion(double alpha2, double lambda, double mu) {
  check_alpha2(alpha2);
  return 2.0 * lambda * lambda * (4.0 * alpha2 * alpha2 - 4.0 * alpha2 + 1.0) +
         2.0 * alpha2 * (1.0 - alpha2) * (mu - 1.0) * (mu - 1.0);
}

double sd_cloner_dab(double alpha2, double lambda) {
  check_alpha2(alpha2);
  const double a = alpha2, b = 1.0 - alpha2, mu = 1.0 - 2.0 * lambda;
  const auto sq = [](double x) { return x * x; };
  return sq(a * a - a * mu) + 4.0 * a * b * sq(a - mu / 2.0) + 2.0 * a * a * b * b + sq(2.0 * a * b - 2.0 * lambda) +
         4.0 * a * b * sq(b - mu / 2.0) + b * b * sq(2.0 * lambda - a);
}

StateVector broadcast_state(const BroadcastInput& in) {
  Vec v(4);
  v << in.alpha, in.delta, in.gamma, in.beta;
  return make_state({2, 2}, v);
}

BroadcastOutputs broadcast_outputs(const BroadcastInput& in, double lambda) {
  check_lambda(lambda);
  const double a = in.alpha, b = in.beta, c = in.gamma, d = in.delta, l = lambda, m = 1.0 - 2.0 * lambda;
  const double norm = a * a + b * b + c * c + d * d;
  if (std::abs(norm - 1.0) > kTol) throw std::invalid_argument("broadcast input must be normalized");
  // basis 00, 01, 10, 11; C14 is the |01><10| entry and C23 the |00><11| entry
  const double u[4][4] = {
      {a * a * (1 - l) * (1 - l) + b * b * l * l + l * (1 - l) * (d * d + c * c), b * c * l * m + d * a * m * (1 - l),
       b * d * l * m + a * c * m * (1 - l), m * m * a * b},
      {0, d * d * (1 - l) * (1 - l) + c * c * l * l + l * (1 - l) * (a * a + b * b), m * m * c * d,
       a * c * l * m + b * d * m * (1 - l)},
      {0, 0, c * c * (1 - l) * (1 - l) + d * d * l * l + l * (1 - l) * (a * a + b * b),
       a * d * l * m + b * c * m * (1 - l)},
      {0, 0, 0, a * a * l * l + b * b * (1 - l) * (1 - l) + l * (1 - l) * (d * d + c * c)}};
  const Mat cm = symmetric_from_upper(u);

  Mat ra(2, 2), rb(2, 2);
  ra << a * a + d * d, a * c + d * b, a * c + d * b, c * c + b * b;
  rb << a * a + c * c, a * d + c * b, a * d + c * b, d * d + b * b;
  return {two_qubit(cm), two_qubit(cm), two_qubit(local_clone_matrix(ra, lambda)),
          two_qubit(local_clone_matrix(rb, lambda))};
}

BroadcastOutputs broadcast_simulated(const StateVector& chi, double lambda) {
  check_lambda(lambda);
  if (chi.dims != Dims{2, 2}) throw std::invalid_argument("broadcast_simulated: expected a two-qubit state");
  const GramMachine bh = machine_model(MachineSpec::bh(lambda));
  // output order A, A', B, B'
  const DensityOperator out = formal_apply(formal_tensor(bh, bh), projector(chi));
  return {partial_trace(out, {0, 3}), partial_trace(out, {1, 2}), partial_trace(out, {0, 1}),
          partial_trace(out, {2, 3})};
}

Mat local_output_printed(const BroadcastInput& in, double lambda, bool bob_side) {
  const double a = in.alpha, b = in.beta, m = 1.0 - 2.0 * lambda;
  const double c = bob_side ? in.delta : in.gamma, d = bob_side ? in.gamma : in.delta;
  const double off = m / 2.0 * (a + d) * (b + c);
  const double mid = lambda + 2.0 * lambda * (a * d + b * c);
  const double u[4][4] = {{(1 - 2 * lambda) * (a + d) * (a + d), off, off, 0},
                          {0, mid, mid, off},
                          {0, 0, mid, off},
                          {0, 0, 0, (1 - 2 * lambda) * (b + c) * (b + c)}};
  return symmetric_from_upper(u);
}

std::string interval_kind_name(IntervalKind k) {
  switch (k) {
    case IntervalKind::Inseparable: return "inseparable";
    case IntervalKind::Separable: return "separable";
    case IntervalKind::Broadcastable: return "broadcastable";
  }
  return "?";
}

Interval insep_interval(double lambda) {
  check_lambda(lambda);
  const double mu2 = (1.0 - 2.0 * lambda) * (1.0 - 2.0 * lambda);
  const double disc = mu2 * mu2 - 4.0 * lambda * lambda * (1.0 - lambda) * (1.0 - lambda);
  if (disc < 0.0) {
    std::ostringstream m;
    m << "lambda = " << lambda << " exceeds (3 - sqrt3)/6: the nonlocal outputs are never entangled";
    throw std::invalid_argument(m.str());
  }
  const double w = std::sqrt(disc) / (2.0 * mu2);
  return checked(0.5 - w, 0.5 + w, IntervalKind::Inseparable);
}

Interval sep_interval(double lambda) {
  check_lambda(lambda);
  if (lambda > 0.25) throw std::invalid_argument("separability interval requires lambda <= 1/4");
  const double w = std::sqrt(1.0 - 4.0 * lambda) / (2.0 * (1.0 - 2.0 * lambda));
  return checked(0.5 - w, 0.5 + w, IntervalKind::Separable);
}

Interval broadcast_interval(double lambda) {
  const Interval a = insep_interval(lambda), b = sep_interval(lambda);
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi), IntervalKind::Broadcastable};
}

Interval interval_by_bisection(IntervalKind kind, double lambda, double tol) {
  check_lambda(lambda);
  if (lambda <= 0.0) throw std::invalid_argument("bisection needs lambda > 0");
  std::function<bool(double)> inside;
  if (kind == IntervalKind::Inseparable) {
    inside = [lambda](double x) { return min_pt_eigenvalue(simulated_special(x, lambda).rho_AB2, {0}) < 0.0; };
  } else if (kind == IntervalKind::Separable) {
    inside = [lambda](double x) { return w_determinants(simulated_special(x, lambda).rho_AA2).w4 >= 0.0; };
  } else {
    const Interval a = interval_by_bisection(IntervalKind::Inseparable, lambda, tol);
    const Interval b = interval_by_bisection(IntervalKind::Separable, lambda, tol);
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi), IntervalKind::Broadcastable};
  }
  if (!inside(0.5)) return {0.5, 0.5, kind};
  return {bisect(inside, 0.0, 0.5, tol), bisect(inside, 1.0, 0.5, tol), kind};
}

double broadcast_fidelity(double alpha2, double lambda) {
  check_alpha2(alpha2);
  return (1.0 - lambda) * (1.0 - lambda) - 4.0 * alpha2 * (1.0 - alpha2) * lambda * (1.0 - 2.0 * lambda);
}

double broadcast_fidelity_plus(double alpha2, double lambda) {
  check_alpha2(alpha2);
  return (1.0 - lambda) * (1.0 - lambda) + 4.0 * alpha2 * (1.0 - alpha2) * lambda * (1.0 - 2.0 * lambda);
}

double avg_broadcast_fidelity(const std::function<double(double)>& lambda_rule) {
  return integrate_unit([&](double x) { return broadcast_fidelity(x, lambda_rule(x)); });
}

std::string branch_name(ProtocolBranch b) {
  switch (b) {
    case ProtocolBranch::Q0Q0: return "Q0Q0";
    case ProtocolBranch::Q0Q1: return "Q0Q1";
    case ProtocolBranch::Q1Q0: return "Q1Q0";
    case ProtocolBranch::Q1Q1: return "Q1Q1";
  }
  return "?";
}

MachineIsometry protocol_copier() {
  // output order: copy a, copy b, machine
  const double p = std::sqrt(2.0 / 3.0), q = 1.0 / std::sqrt(6.0);
  Mat v = Mat::Zero(8, 2);
  v(0b000, 0) = p;  // |00>|Q0>
  v(0b011, 0) = q;  // |01>|Q1>
  v(0b101, 0) = q;  // |10>|Q1>
  v(0b111, 1) = p;  // |11>|Q1>
  v(0b010, 1) = q;  // |01>|Q0>
  v(0b100, 1) = q;  // |10>|Q0>
  return {{2}, {2, 2, 2}, v};
}

ProtocolResult three_qubit_protocol(double alpha2, ProtocolBranch branch, double beta_phase) {
  check_alpha2(alpha2);
  const MachineIsometry c = protocol_copier();
  Vec v = Vec::Zero(4);
  v(0) = std::sqrt(alpha2);
  v(3) = std::polar(std::sqrt(1.0 - alpha2), beta_phase);
  StateVector s{{2, 2}, v};                 // 1, 3
  s = apply_local_isometry(s, c, 0);         // 1, 2, mA, 3
  s = apply_local_isometry(s, c, 3);         // 1, 2, mA, 3, 4, mB
  s = permute(s, {0, 1, 3, 4, 2, 5});        // 1, 2, 3, 4, mA, mB
  const int ma = branch == ProtocolBranch::Q1Q0 || branch == ProtocolBranch::Q1Q1;
  const int mb = branch == ProtocolBranch::Q0Q1 || branch == ProtocolBranch::Q1Q1;
  Vec z(16);
  for (int i = 0; i < 16; ++i) z(i) = s.amps(i * 4 + ma * 2 + mb);
  ProtocolResult r;
  r.probability = z.squaredNorm();
  if (r.probability < 1e-14) throw std::domain_error("branch " + branch_name(branch) + " has zero probability");
  r.zeta_1234 = {{2, 2, 2, 2}, z / std::sqrt(r.probability)};
  StateVector t = apply_local_isometry(r.zeta_1234, c, 1);  // 1, 2, 5, m, 3, 4
  t = apply_local_isometry(t, c, 5);                         // 1, 2, 5, m, 3, 4, 6, m'
  r.rho_125346 = partial_trace(t, {0, 1, 2, 4, 5, 6});
  return r;
}

DensityOperator protocol_reduced(const ProtocolResult& r, const std::vector<int>& labels) {
  std::vector<int> pos;
  for (int l : labels) pos.push_back(label_position(l));
  std::vector<int> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  // partial_trace keeps ascending order; restore the requested one
  std::vector<int> order;
  for (int p : pos) order.push_back(static_cast<int>(std::find(sorted.begin(), sorted.end(), p) - sorted.begin()));
  return permute(partial_trace(r.rho_125346, sorted), order);
}

Mat protocol_rho146_closed(double alpha2) {
  check_alpha2(alpha2);
  const double a = std::sqrt(alpha2), b = std::sqrt(1.0 - alpha2), n = (3.0 * alpha2 + 1.0) / 9.0;
  const double s = 1.0 / std::sqrt(2.0);
  const auto ket = [](int i) { return Vec(Vec::Unit(8, i)); };
  const Vec k000 = ket(0), k011 = ket(3), k100 = ket(4), k111 = ket(7);
  const Vec k0p = s * (ket(1) + ket(2)), k1p = s * (ket(5) + ket(6));
  const auto op = [](const Vec& x, const Vec& y) { return Mat(x * y.adjoint()); };
  Mat m = 4.0 * alpha2 / 9.0 * (2.0 / 3.0 * op(k000, k000) + 1.0 / 3.0 * op(k0p, k0p));
  const Mat coh = a * b / 9.0 * std::sqrt(2.0) / 3.0 * (op(k000, k1p) + op(k0p, k111));
  m += coh + coh.adjoint();
  m += (1.0 - alpha2) / 36.0 * 2.0 / 3.0 *
       (op(k011, k011) + op(k0p, k0p) + op(k000, k000) + op(k111, k111) + op(k1p, k1p) + op(k100, k100));
  return m / n;
}

Mat protocol_rho16_closed(double alpha2) {
  check_alpha2(alpha2);
  const double a = std::sqrt(alpha2), b = std::sqrt(1.0 - alpha2), n = (3.0 * alpha2 + 1.0) / 9.0;
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 4.0 * alpha2 / 9.0 * 5.0 / 6.0;
  m(1, 1) = 4.0 * alpha2 / 9.0 / 6.0;
  m(0, 3) = m(3, 0) = 2.0 * a * b / 27.0;
  m += (1.0 - alpha2) / 36.0 * Mat::Identity(4, 4);
  return m / n;
}

Mat protocol_rho46_closed(double alpha2) {
  check_alpha2(alpha2);
  const double n = (3.0 * alpha2 + 1.0) / 9.0, b2 = 1.0 - alpha2;
  Mat sym = Mat::Zero(4, 4);
  sym(1, 1) = sym(1, 2) = sym(2, 1) = sym(2, 2) = 1.0;
  Mat m = 4.0 * alpha2 / 9.0 * (1.0 / 6.0) * sym + b2 / 36.0 * (2.0 / 3.0) * sym;
  m(0, 0) += 4.0 * alpha2 / 9.0 * 2.0 / 3.0 + b2 / 36.0 * 4.0 / 3.0;
  m(3, 3) += b2 / 36.0 * 4.0 / 3.0;
  return m / n;
}

Mat protocol_rho12_closed(double alpha2) {
  check_alpha2(alpha2);
  const double n = (3.0 * alpha2 + 1.0) / 9.0, b2 = 1.0 - alpha2;
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 4.0 * alpha2 / 9.0 * 5.0 / 6.0 + b2 / 36.0 / 3.0;
  m(1, 1) = 4.0 * alpha2 / 9.0 / 6.0 + b2 / 36.0 * 5.0 / 3.0;
  m(1, 2) = m(2, 1) = b2 / 36.0 * 4.0 / 3.0;
  m(2, 2) = b2 / 36.0 * 5.0 / 3.0;
  m(3, 3) = b2 / 36.0 / 3.0;
  return m / n;
}

ProtocolVerdict protocol_verdict(double alpha2, ProtocolBranch branch) {
  const ProtocolResult r = three_qubit_protocol(alpha2, branch);
  ProtocolVerdict v;
  v.broadcast = true;
  v.all_local_separable = true;
  for (const auto& [p, q] : kSeparablePairs) {
    const bool e = npt(protocol_reduced(r, {p, q}));
    v.entangled.emplace_back(std::to_string(p) + std::to_string(q), e);
    v.broadcast = v.broadcast && !e;
    v.all_local_separable = v.all_local_separable && !e;
  }
  for (const auto& [p, q] : kEntangledPairs) {
    const bool e = npt(protocol_reduced(r, {p, q}));
    const bool local = (p == 2 && q == 5) || (p == 4 && q == 6);
    v.entangled.emplace_back(std::to_string(p) + std::to_string(q), e);
    v.broadcast = v.broadcast && e;
    v.all_local_separable = v.all_local_separable && (local ? !e : e);
  }
  return v;
}

std::vector<std::pair<double, double>> scan_intervals(const std::function<bool(double)>& pred, int n, double tol) {
  if (n < 2) throw std::invalid_argument("scan_intervals needs at least two points");
  std::vector<double> xs;
  std::vector<bool> on;
  for (int i = 1; i < n; ++i) {
    xs.push_back(static_cast<double>(i) / n);
    on.push_back(pred(xs.back()));
  }
  std::vector<std::pair<double, double>> out;
  const size_t m = xs.size();
  for (size_t i = 0; i < m; ++i) {
    if (!on[i] || (i > 0 && on[i - 1])) continue;
    size_t j = i;
    while (j + 1 < m && on[j + 1]) ++j;
    const double lo = i == 0 ? 0.0 : bisect(pred, xs[i - 1], xs[i], tol);
    const double hi = j + 1 == m ? 1.0 : bisect(pred, xs[j + 1], xs[j], tol);
    out.emplace_back(lo, hi);
    i = j;
  }
  return out;
}

std::vector<std::pair<double, double>> pair_entangled_intervals(ProtocolBranch branch, int q1, int q2) {
  return scan_intervals(
      [=](double x) { return npt(protocol_reduced(three_qubit_protocol(x, branch), {q1, q2})); });
}

Mat swap_correction(BellLabel outcome) {
  switch (outcome) {
    case BellLabel::PhiPlus: return pauli_z() * pauli_x();
    case BellLabel::PhiMinus: return pauli_x();
    case BellLabel::PsiPlus: return pauli_z();
    case BellLabel::PsiMinus: return Mat::Identity(2, 2);
  }
  return Mat::Identity(2, 2);
}

SwapResult swap_extend(const DensityOperator& rho_325, BellLabel outcome) {
  return swap_impl(rho_325, outcome, false);
}

SwapResult swap_extend_printed(const DensityOperator& rho_325, BellLabel outcome) {
  return swap_impl(rho_325, outcome, true);
}

}  // namespace qclone
