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

#include "qclone/deleters.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qclone/measures.hpp"

namespace qclone {

namespace {

const double kS2 = std::sqrt(2.0);

Vec ket2(int a, int b) {
  Vec v = Vec::Zero(4);
  v[a * 2 + b] = 1.0;
  return v;
}

Vec bit(int b) {
  Vec v = Vec::Zero(2);
  v[b] = 1.0;
  return v;
}

// Branch matrix with the given columns set (input order 00, 01, 10, 11).
Mat branch4(std::initializer_list<std::pair<int, Vec>> cols) {
  Mat m = Mat::Zero(4, 4);
  for (const auto& [c, v] : cols) m.col(c) = v;
  return m;
}

int machine_state_index(const DeleterSpec& s) {
  // CONV keeps the initial state A last; the others list it first
  return s.family == DeleterFamily::CONV ? 6 : 0;
}

struct Realized {
  MachineIsometry v;
  Vec initial;  // initial machine state in the realized basis
};

Realized realize(const DeleterSpec& s) {
  validate(s);
  const GramMachine m = deleter_model(s);
  const Mat vecs = realize_gram(m.machine);
  return {realize_machine(m), vecs.col(machine_state_index(s))};
}

Mat transformer_power(int n) {
  Mat t = Mat::Identity(4, 4);
  for (int k = 0; k < n; ++k) t = transformer() * t;
  return t;
}

DeletionReport point(const DeleterSpec& s, const Realized& r, const StateVector& input, int n) {
  if (n < 0 || n > 2) throw std::invalid_argument("n_transformers must be 0, 1 or 2");
  StateVector in;
  const bool copies = input.dims == Dims{2};
  if (copies) {
    in = tensor(input, input);
  } else if (input.dims == Dims{2, 2}) {
    in = input;
  } else {
    throw std::invalid_argument("deletion input must be one qubit or two qubits");
  }
  StateVector out = apply_isometry(r.v, in);
  if (n > 0) out.amps = embed(transformer_power(n), out.dims, {0, 1}) * out.amps;

  DeletionReport rep;
  rep.rho_1 = partial_trace(out, {0});
  rep.rho_2 = partial_trace(out, {1});
  rep.rho_3 = partial_trace(out, {2});
  if (copies) {
    rep.F_1 = overlap(input, rep.rho_1);
    rep.D_1 = hs_distance(rep.rho_1, projector(input));
  } else {
    rep.F_1 = std::numeric_limits<double>::quiet_NaN();
    rep.D_1 = std::numeric_limits<double>::quiet_NaN();
  }
  rep.F_2 = overlap(deletion_target(s), rep.rho_2);
  rep.machine_overlap = (r.initial.adjoint() * rep.rho_3.mat * r.initial)(0, 0).real();
  return rep;
}

}  // namespace

std::string deleter_family_name(DeleterFamily f) {
  switch (f) {
    case DeleterFamily::PB: return "PB";
    case DeleterFamily::QIU: return "QIU";
    case DeleterFamily::CONV: return "CONV";
    case DeleterFamily::SDEP: return "SDEP";
  }
  return "?";
}

std::string describe(const DeleterSpec& s) {
  std::ostringstream o;
  o << deleter_family_name(s.family) << "(";
  const auto blank = [&] { o << "m1=" << s.blank.m1 << ",m2=" << s.blank.m2.real(); if (s.blank.m2.imag() != 0.0) o << "+" << s.blank.m2.imag() << "i"; };
  switch (s.family) {
    case DeleterFamily::PB: blank(); break;
    case DeleterFamily::QIU: o << "r1=" << s.r1; break;
    case DeleterFamily::CONV:
      o << "lambda=" << s.lambda << ",";
      blank();
      o << ",Y=";
      if (s.Y < 0.0) o << "max"; else o << s.Y;
      break;
    case DeleterFamily::SDEP:
      o << "a0=" << s.a0 << ",a1=" << s.a1 << ",b0=" << s.b0 << ",b1=" << s.b1 << ",";
      blank();
      break;
  }
  o << ")";
  return o.str();
}

void validate(const DeleterSpec& s) {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (std::abs(s.blank.m1 * s.blank.m1 + std::norm(s.blank.m2) - 1.0) > kTol)
    fail("blank state requires m1^2 + |m2|^2 = 1");
  switch (s.family) {
    case DeleterFamily::PB: break;
    case DeleterFamily::QIU:
      if (s.r1 * s.r1 > 1.0 + kTol) fail("QIU requires r1^2 <= 1");
      break;
    case DeleterFamily::CONV:
      if (s.lambda < 0.0 || s.lambda > 0.5) fail("CONV requires 0 <= lambda <= 1/2");
      break;
    case DeleterFamily::SDEP:
      if (std::abs(std::norm(s.a0) + std::norm(s.b0) - 1.0) > kTol ||
          std::abs(std::norm(s.a1) + std::norm(s.b1) - 1.0) > kTol)
        fail("SDEP requires |a_i|^2 + |b_i|^2 = 1");
      if (std::abs(s.a0 * std::conj(s.a1) + s.b0 * std::conj(s.b1)) > kTol)
        fail("SDEP requires a0 a1^* + b0 b1^* = 0");
      break;
  }
}

StateVector blank_ket(const BlankState& b) { return qubit(b.m1, b.m2); }

StateVector blank_perp_ket(const BlankState& b) { return qubit(-std::conj(b.m2), b.m1); }

StateVector deletion_target(const DeleterSpec& s) {
  if (s.family != DeleterFamily::CONV) return blank_ket(s.blank);
  return {{2}, (blank_ket(s.blank).amps + blank_perp_ket(s.blank).amps) / kS2};
}

GramMachine deleter_model(const DeleterSpec& s) {
  validate(s);
  const Vec sig = blank_ket(s.blank).amps, perp = blank_perp_ket(s.blank).amps;
  const Vec sym = ket2(0, 1) + ket2(1, 0);
  switch (s.family) {
    case DeleterFamily::PB:
      return {{2, 2}, {2, 2}, {{"A", "A0", "A1"}, Mat::Identity(3, 3)},
              {branch4({{1, ket2(0, 1)}, {2, ket2(1, 0)}}), branch4({{0, kron(bit(0), sig)}}),
               branch4({{3, kron(bit(1), sig)}})}};
    case DeleterFamily::QIU: {
      // Q' flags the |00>,|11> images so the columns stay orthogonal for every r1.
      const double r2 = std::sqrt(std::max(0.0, 1.0 - s.r1 * s.r1));
      Vec a(2), b(2);
      a << s.r1, r2;
      b << r2, -s.r1;
      const Vec x = kron(bit(0), a), y = kron(bit(1), b);
      const cplx i(0.0, 1.0);
      return {{2, 2}, {2, 2}, {{"Q", "Q'"}, Mat::Identity(2, 2)},
              {branch4({{1, ket2(0, 1)}, {2, ket2(1, 0)}}),
               branch4({{0, Vec((x + y) / kS2)}, {3, Vec(i * (y - x) / kS2)}})}};
    }
    case DeleterFamily::CONV: {
      const double l = s.lambda;
      const double Y = s.Y < 0.0 ? conv_y_max(l) : s.Y;
      Mat g = Mat::Zero(7, 7);  // A0, A1, B0, B1, C0, D0, A
      g.diagonal() << 1.0 - 2.0 * l, 1.0 - 2.0 * l, l, l, 2.0 * l, 1.0 - 2.0 * l, 1.0;
      for (int k : {0, 1, 5}) g(6, k) = g(k, 6) = Y;
      return {{2, 2}, {2, 2}, {{"A0", "A1", "B0", "B1", "C0", "D0", "A"}, g},
              {branch4({{0, kron(bit(0), sig)}}), branch4({{3, kron(bit(1), perp)}}),
               branch4({{0, sym}}), branch4({{3, sym}}),
               branch4({{1, ket2(1, 0)}, {2, ket2(0, 1)}}),
               branch4({{1, kron(bit(0), perp)}, {2, kron(bit(1), sig)}})}};
    }
    case DeleterFamily::SDEP:
      return {{2, 2}, {2, 2}, {{"Q", "A0", "A1"}, Mat::Identity(3, 3)},
              {branch4({{1, Vec(s.a0 * ket2(0, 1) + s.b0 * ket2(1, 0))},
                        {2, Vec(s.a1 * ket2(0, 1) + s.b1 * ket2(1, 0))}}),
               branch4({{0, kron(bit(0), sig)}}), branch4({{3, kron(bit(1), sig)}})}};
  }
  throw std::invalid_argument("unknown deleter family");
}

MachineIsometry build_deleter(const DeleterSpec& s) { return realize(s).v; }

Mat transformer() {
  Mat t = Mat::Zero(4, 4);
  t.col(0) = (ket2(0, 1) + ket2(1, 0)) / kS2;
  t.col(1) = ket2(1, 1);
  t.col(2) = (ket2(0, 1) - ket2(1, 0)) / kS2;
  t.col(3) = ket2(0, 0);
  return t;
}

double conv_y_max(double lambda) {
  if (lambda < 0.0 || lambda > 0.5) throw std::invalid_argument("CONV requires 0 <= lambda <= 1/2");
  const auto psd = [lambda](double y) {
    const Mat g = deleter_model(DeleterSpec::conv(lambda, {}, y)).machine.gram;
    // a zero-norm vector must have zero overlaps; drop it before the eigenvalue test
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < g.rows(); ++k) {
      if (g(k, k).real() > 0.0) {
        keep.push_back(k);
      } else if (g.row(k).cwiseAbs().maxCoeff() > 0.0) {
        return false;
      }
    }
    Mat sub(keep.size(), keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
      for (size_t j = 0; j < keep.size(); ++j) sub(i, j) = g(keep[i], keep[j]);
    return gram_min_eigenvalue(sub) >= -1e-15;
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (psd(mid) ? lo : hi) = mid;
  }
  return lo;
}

double conv_y_max_closed(double lambda) { return std::sqrt((1.0 - 2.0 * lambda) / 3.0); }

DeletionReport delete_point(const DeleterSpec& s, const StateVector& input, int n_transformers) {
  return point(s, realize(s), input, n_transformers);
}

DeletionReport delete_report(const DeleterSpec& s, const StateVector& input, int n_transformers) {
  const Realized r = realize(s);
  DeletionReport rep = point(s, r, input, n_transformers);
  rep.avg_F_1 = integrate_unit([&](double x) { return point(s, r, qubit_from_alpha2(x), n_transformers).F_1; });
  rep.avg_F_2 = integrate_unit([&](double x) { return point(s, r, qubit_from_alpha2(x), n_transformers).F_2; });
  return rep;
}

double pb_fidelity_a(double alpha2) { return 1.0 - 2.0 * alpha2 * (1.0 - alpha2); }

double pb_fidelity_b(double alpha2) { return 1.0 - alpha2 * (1.0 - alpha2); }

double conv_fidelity_1(double lambda, double alpha2) {
  return (1.0 - lambda) + 2.0 * alpha2 * (1.0 - alpha2) * (2.0 * lambda - 1.0);
}

double conv_retained_limit(cplx alpha, cplx beta) {
  return 0.75 - std::norm(alpha) / 2.0 + (std::conj(alpha) * beta).real() / kS2;
}

double conv_retained_limit_average() { return 0.5 + M_PI / (8.0 * kS2); }

Mat limiting_deleted_state(int n_transformers) {
  if (n_transformers < 0 || n_transformers > 2) throw std::invalid_argument("n_transformers must be 0, 1 or 2");
  // as lambda -> 1/2 the deleter output on modes (1,2) is |psi+> for every input
  const StateVector plus = bell_state(BellLabel::PsiPlus);
  const StateVector out{{2, 2}, transformer_power(n_transformers) * plus.amps};
  return partial_trace(out, {1}).mat;
}

double limiting_deletion_fidelity(int n_transformers, const BlankState& blank) {
  const Vec v = (blank_ket(blank).amps + blank_perp_ket(blank).amps) / kS2;
  return (v.adjoint() * limiting_deleted_state(n_transformers) * v)(0, 0).real();
}

PbTransformerResult pb_with_transformer(const BlankState& blank, const StateVector& psi) {
  const DeletionReport r = delete_point(DeleterSpec::pb(blank), psi, 1);
  return {r.rho_2, r.F_2};
}

double pb_transformer_fidelity_formula(double m1, double m2, double alpha2) {
  const double x = alpha2 * (1.0 - alpha2), b4 = (1.0 - alpha2) * (1.0 - alpha2), a4 = alpha2 * alpha2;
  const double p = m1 * m2;
  return m1 * m1 * (m1 * m1 / 2.0 + x * (1.0 - 2.0 * m1 * m1) / 2.0 + b4 * m2 * m2) +
         2.0 * p * (p / kS2 - x * (1.0 + 2.0 * p) / kS2) +
         m2 * m2 * (m1 * m1 / 2.0 + x * (3.0 - 2.0 * m1 * m1) / 2.0 + a4 * m2 * m2);
}

double song_optimal_fidelity(double eta1, double theta, double phi1, double phi2) {
  if (eta1 < 0.0 || eta1 > 1.0) throw std::invalid_argument("a priori probability must lie in [0,1]");
  const double s = std::sin(2.0 * theta - phi1 + phi2);
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * eta1 * (1.0 - eta1) * s * s)));
}

SdepAverages sdep_averages(cplx a0, cplx a1, cplx b0, cplx b1, double M) {
  validate(DeleterSpec::sdep(a0, a1, b0, b1));
  const double G = std::norm(a0 + a1), H = std::norm(b0 + b1);
  const double k = (G - 1.0) * (G - 1.0) + (H - 1.0) * (H - 1.0);
  return {(1.0 + k / 10.0) / 3.0, 2.0 / 3.0 + ((G - H) * M * M + H) / 6.0};
}

}  // namespace qclone
