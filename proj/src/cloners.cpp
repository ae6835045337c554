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

#include "qclone/cloners.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qclone/measures.hpp"

namespace qclone {

namespace {

using std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

Vec basis_vec(int dim, int index) {
  Vec v = Vec::Zero(dim);
  v[index] = 1.0;
  return v;
}

// |a b> for two d-level systems
Vec pair_ket(int d, int a, int b) { return basis_vec(d * d, a * d + b); }

Vec psi_plus() { return bell_state(BellLabel::PsiPlus).amps; }

// Branch matrix from per-input images.
Mat branch(const std::vector<Vec>& images) {
  Mat b(images.front().size(), static_cast<Eigen::Index>(images.size()));
  for (size_t i = 0; i < images.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = images[i];
  return b;
}

GramMachine orthonormal_machine(Dims in, Dims out, std::vector<std::string> labels,
                                std::vector<Mat> branches) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  return {std::move(in), std::move(out), {std::move(labels), Mat::Identity(n, n)}, std::move(branches)};
}

// |i> -> a|ii>Q_i + b sum_{j != i}(|ij> + |ji>)Q_j
GramMachine symmetric_d_machine(int d, double a, double b) {
  std::vector<std::string> labels;
  std::vector<Mat> branches;
  for (int j = 0; j < d; ++j) {
    std::vector<Vec> img;
    for (int i = 0; i < d; ++i)
      img.push_back(i == j ? Vec(a * pair_ket(d, i, i)) : Vec(b * (pair_ket(d, i, j) + pair_ket(d, j, i))));
    labels.push_back("Q" + std::to_string(j));
    branches.push_back(branch(img));
  }
  return orthonormal_machine({d}, {d, d}, labels, branches);
}

GramMachine bh_model(double xi, double eta) {
  const double s2 = std::sqrt(2.0);
  const Vec k00 = pair_ket(2, 0, 0), k11 = pair_ket(2, 1, 1), sym = s2 * psi_plus();
  const Vec zero = Vec::Zero(4);
  Mat g = Mat::Zero(4, 4);  // Q0, Q1, Y0, Y1
  g(0, 0) = g(1, 1) = 1.0 - 2.0 * xi;
  g(2, 2) = g(3, 3) = xi;
  g(0, 3) = g(3, 0) = g(1, 2) = g(2, 1) = eta / 2.0;
  return {{2}, {2, 2}, {{"Q0", "Q1", "Y0", "Y1"}, g},
          {branch({k00, zero}), branch({zero, k11}), branch({sym, zero}), branch({zero, sym})}};
}

double mixed_alpha(int M, int j, int k) {
  const double num = 6.0 * factorial(M - 2) * factorial(M - j - k) * factorial(j + k);
  const double den = factorial(2 - j) * factorial(M + 1) * factorial(M - 2 - k) * factorial(j) * factorial(k);
  return std::sqrt(num / den);
}

GramMachine mixed_model(int M) {
  const Vec singlet = bell_state(BellLabel::PsiMinus).amps;
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<std::string> labels;
  std::vector<Mat> branches;
  for (int k = 0; k <= M - 2; ++k) {
    const Vec up = mixed_alpha(M, 0, k) * dicke(M, k);
    const Vec down = mixed_alpha(M, 2, k) * dicke(M, 2 + k);
    const Vec plus = mixed_alpha(M, 1, k) * dicke(M, 1 + k);
    // antisymmetric in the first pair, symmetric on the rest, same excitation number
    const Vec minus = mixed_alpha(M, 1, k) * kron(singlet, dicke(M - 2, k));
    labels.push_back("R" + std::to_string(k));
    branches.push_back(branch({up, Vec(s * (plus + minus)), Vec(s * (plus - minus)), down}));
  }
  return orthonormal_machine({2, 2}, Dims(M, 2), labels, branches);
}

GramMachine gm_model(int M) {
  std::vector<std::string> labels;
  std::vector<Mat> branches;
  auto alpha = [M](int j) { return std::sqrt(2.0 * (M - j) / (M * (M + 1.0))); };
  for (int a = 0; a < M; ++a) {
    // ancilla with `a` excitations in its symmetric (M-1)-qubit space
    const Vec from0 = alpha(M - 1 - a) * dicke(M, M - 1 - a);
    const Vec from1 = alpha(a) * dicke(M, M - a);
    labels.push_back("R" + std::to_string(a));
    branches.push_back(branch({from0, from1}));
  }
  return orthonormal_machine({2}, Dims(M, 2), labels, branches);
}

GramMachine heis_model(int d, double p) {
  const double q = 1.0 - p;
  const double nrm = 1.0 / std::sqrt(1.0 + (d - 1) * (p * p + q * q));
  std::vector<std::string> labels;
  std::vector<Mat> branches;
  for (int c = 0; c < d; ++c) {
    std::vector<Vec> img;
    for (int j = 0; j < d; ++j) {
      Vec v = Vec::Zero(d * d);
      if (c == j)
        v += pair_ket(d, j, j);
      else
        v += p * pair_ket(d, j, c) + q * pair_ket(d, c, j);
      img.push_back(nrm * v);
    }
    labels.push_back("C" + std::to_string(c));
    branches.push_back(branch(img));
  }
  return orthonormal_machine({d}, {d, d}, labels, branches);
}

GramMachine anti_model() {
  const cplx e = std::polar(1.0, std::acos(1.0 / std::sqrt(3.0)));
  const double s6 = 1.0 / std::sqrt(6.0), s2 = 1.0 / std::sqrt(2.0);
  const Vec k00 = pair_ket(2, 0, 0), k01 = pair_ket(2, 0, 1), k10 = pair_ket(2, 1, 0), k11 = pair_ket(2, 1, 1);
  const Vec zero = Vec::Zero(4);
  const Vec up0 = s6 * k00, up1 = e * s2 * k10 - s6 * k01;
  const Vec down1 = s6 * k00;
  const Vec right0 = e * s2 * k01 - s6 * k10, right1 = s6 * k11;
  const Vec left0 = s6 * k11;
  return orthonormal_machine({2}, {2, 2}, {"up", "down", "right", "left"},
                             {branch({up0, up1}), branch({zero, down1}), branch({right0, right1}),
                              branch({left0, zero})});
}

}  // namespace

Vec dicke(int n, int ones) {
  const int dim = 1 << n;
  Vec v = Vec::Zero(dim);
  if (ones < 0 || ones > n) return v;
  const double amp = 1.0 / std::sqrt(binomial(n, ones));
  for (int i = 0; i < dim; ++i)
    if (std::popcount(static_cast<unsigned>(i)) == ones) v[i] = amp;
  return v;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::WZ: return "wz";
    case Family::WZ_N: return "wz-n";
    case Family::BH: return "bh";
    case Family::BH_OPT: return "bh-opt";
    case Family::GM_1M: return "gm";
    case Family::UQCM_D: return "uqcm";
    case Family::PC2: return "pc2";
    case Family::PC_D: return "pc-d";
    case Family::KR: return "kr";
    case Family::ECON: return "econ";
    case Family::PAULI_ASYM: return "pauli";
    case Family::HEIS_ASYM: return "heis";
    case Family::ANTI: return "anti";
    case Family::MIXED_23: return "mixed23";
    case Family::MIXED_2M: return "mixed2m";
  }
  return "?";
}

std::string describe(const MachineSpec& s) {
  std::ostringstream o;
  o << family_name(s.family);
  switch (s.family) {
    case Family::WZ_N: o << "(n=" << s.n << ")"; break;
    case Family::BH: o << "(xi=" << s.xi << ",eta=" << s.bh_eta() << ")"; break;
    case Family::GM_1M: case Family::MIXED_2M: o << "(M=" << s.M << ")"; break;
    case Family::UQCM_D: case Family::PC_D: o << "(d=" << s.d << ")"; break;
    case Family::KR: o << "(mu=" << s.mu << ")"; break;
    case Family::ECON: o << "(d=" << s.d << ",blank=" << s.blank << ")"; break;
    case Family::PAULI_ASYM: o << "(p=" << s.p << ")"; break;
    case Family::HEIS_ASYM: o << "(d=" << s.d << ",p=" << s.p << ")"; break;
    default: break;
  }
  return o.str();
}

void validate(const MachineSpec& s) {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  switch (s.family) {
    case Family::WZ_N: if (s.n < 2) fail("WZ_N requires n >= 2"); break;
    case Family::BH: if (s.xi < 0.0 || s.xi > 0.5) fail("BH requires 0 <= xi <= 1/2"); break;
    case Family::GM_1M: if (s.M < 2 || s.M > 6) fail("GM machine requires 2 <= M <= 6"); break;
    case Family::UQCM_D: case Family::PC_D: if (s.d < 2) fail("requires d >= 2"); break;
    case Family::KR: if (s.mu < 0.0 || s.mu * s.mu > 0.5 + 1e-15) fail("KR requires 0 <= mu, mu^2 <= 1/2"); break;
    case Family::ECON:
      if (s.d < 2) fail("ECON requires d >= 2");
      if (s.blank < 0 || s.blank >= s.d) fail("ECON blank index must lie in [0, d)");
      break;
    case Family::PAULI_ASYM: if (s.p < 0.0 || s.p > 1.0) fail("PAULI_ASYM requires 0 <= p <= 1"); break;
    case Family::HEIS_ASYM:
      if (s.d < 2) fail("HEIS_ASYM requires d >= 2");
      if (s.p < 0.0 || s.p > 1.0) fail("HEIS_ASYM requires 0 <= p <= 1");
      break;
    case Family::MIXED_23: if (s.M != 3) fail("MIXED_23 is the M = 3 member"); break;
    case Family::MIXED_2M: if (s.M < 2 || s.M > 6) fail("MIXED_2M requires 2 <= M <= 6"); break;
    default: break;
  }
}

int input_dim(const MachineSpec& s) {
  switch (s.family) {
    case Family::WZ_N: return s.n;
    case Family::UQCM_D: case Family::PC_D: case Family::ECON: case Family::HEIS_ASYM: return s.d;
    default: return 2;
  }
}

int input_copies(const MachineSpec& s) {
  return s.family == Family::MIXED_23 || s.family == Family::MIXED_2M ? 2 : 1;
}

GramMachine machine_model(const MachineSpec& s) {
  validate(s);
  const Vec k00 = pair_ket(2, 0, 0), k11 = pair_ket(2, 1, 1), pp = psi_plus();
  const Vec zero = Vec::Zero(4);
  switch (s.family) {
    case Family::WZ:
      return orthonormal_machine({2}, {2, 2}, {"Q0", "Q1"}, {branch({k00, zero}), branch({zero, k11})});
    case Family::WZ_N: {
      std::vector<std::string> labels;
      std::vector<Mat> branches;
      for (int k = 0; k < s.n; ++k) {
        Mat b = Mat::Zero(s.n * s.n, s.n);
        b(k * s.n + k, k) = 1.0;
        labels.push_back("Q" + std::to_string(k));
        branches.push_back(b);
      }
      return orthonormal_machine({s.n}, {s.n, s.n}, labels, branches);
    }
    case Family::BH: return bh_model(s.xi, s.bh_eta());
    case Family::BH_OPT: {
      const double a = std::sqrt(2.0 / 3.0), b = std::sqrt(1.0 / 3.0);
      return orthonormal_machine({2}, {2, 2}, {"up", "down"},
                                 {branch({Vec(a * k00), Vec(b * pp)}), branch({Vec(b * pp), Vec(a * k11)})});
    }
    case Family::GM_1M: return gm_model(s.M);
    case Family::UQCM_D:
      return symmetric_d_machine(s.d, std::sqrt(2.0 / (s.d + 1.0)), std::sqrt(1.0 / (2.0 * (s.d + 1.0))));
    case Family::PC2: {
      const double a = 0.5 + std::sqrt(0.125), b = 0.5 - std::sqrt(0.125);
      return orthonormal_machine({2}, {2, 2}, {"up", "down"},
                                 {branch({Vec(a * k00 + b * k11), Vec(0.5 * pp)}),
                                  branch({Vec(0.5 * pp), Vec(a * k11 + b * k00)})});
    }
    case Family::PC_D: {
      const double a2 = pc_d_alpha2(s.d);
      return symmetric_d_machine(s.d, std::sqrt(a2), std::sqrt((1.0 - a2) / (2.0 * (s.d - 1))));
    }
    case Family::KR: {
      const double nu = std::sqrt(std::max(0.0, 1.0 - 2.0 * s.mu * s.mu));
      const Vec sym = std::sqrt(2.0) * s.mu * pp;
      return orthonormal_machine({2}, {2, 2}, {"up", "down"},
                                 {branch({Vec(nu * k00), sym}), branch({sym, Vec(nu * k11)})});
    }
    case Family::ECON: {
      const int d = s.d, l = s.blank;
      std::vector<Vec> img;
      for (int k = 0; k < d; ++k)
        img.push_back(k == l ? pair_ket(d, l, l) : Vec((pair_ket(d, k, l) + pair_ket(d, l, k)) / std::sqrt(2.0)));
      return orthonormal_machine({d}, {d, d}, {"1"}, {branch(img)});
    }
    case Family::PAULI_ASYM: {
      const double p = s.p, q = 1.0 - p, nrm = 1.0 / std::sqrt(1.0 + p * p + q * q);
      const Vec k01 = pair_ket(2, 0, 1), k10 = pair_ket(2, 1, 0);
      return orthonormal_machine(
          {2}, {2, 2}, {"up", "down"},
          {branch({Vec(nrm * k00), Vec(nrm * (p * k10 + q * k01))}),
           branch({Vec(nrm * (p * k01 + q * k10)), Vec(nrm * k11)})});
    }
    case Family::HEIS_ASYM: return heis_model(s.d, s.p);
    case Family::ANTI: return anti_model();
    case Family::MIXED_23: return mixed_model(3);
    case Family::MIXED_2M: return mixed_model(s.M);
  }
  throw std::invalid_argument("unknown machine family");
}

MachineIsometry build_machine(const MachineSpec& s) {
  try {
    return realize_machine(machine_model(s));
  } catch (const UnrealizableSpec& e) {
    if (s.family != Family::BH) throw;
    std::ostringstream msg;
    msg << describe(s) << " violates the Schwarz bound (eta/2)^2 <= xi (1 - 2 xi): " << e.what();
    throw UnrealizableSpec(msg.str(), e.min_eigenvalue);
  }
}

CloneReport clone_report_from(const DensityOperator& rho_clones, const StateVector& psi) {
  CloneReport r;
  r.rho_out = rho_clones;
  r.rho_a = partial_trace(rho_clones, {0});
  r.rho_b = partial_trace(rho_clones, {1});
  const DensityOperator ideal = projector(psi);
  const DensityOperator ideal2 = tensor(ideal, ideal);
  const DensityOperator prod = tensor(r.rho_a, r.rho_b);
  r.F_a = overlap(psi, r.rho_a);
  r.F_b = overlap(psi, r.rho_b);
  r.D_a = hs_distance(r.rho_a, ideal);
  r.D_b = hs_distance(r.rho_b, ideal);
  r.D_ab1 = hs_distance(rho_clones, prod);
  r.D_ab2 = hs_distance(rho_clones, ideal2);
  r.D_ab3 = hs_distance(ideal2, prod);
  r.D_ab = r.D_ab2;
  return r;
}

CloneReport clone_report(const MachineSpec& s, const StateVector& psi, bool formal) {
  if (psi.dims != Dims{input_dim(s)}) throw std::invalid_argument("clone_report: input dimension mismatch");
  const StateVector in = input_copies(s) == 2 ? tensor(psi, psi) : psi;
  const GramMachine model = machine_model(s);
  DensityOperator out;
  if (formal) {
    out = formal_apply(model, projector(in));
  } else {
    const MachineIsometry v = build_machine(s);
    std::vector<int> sys;
    for (size_t k = 0; k < model.out_dims.size(); ++k) sys.push_back(static_cast<int>(k));
    out = partial_trace(apply_isometry(v, in), sys);
  }
  return clone_report_from(partial_trace(out, {0, 1}), psi);
}

double gm_fidelity(int N, int M) {
  if (N < 1 || M <= N) throw std::invalid_argument("GM fidelity requires M > N >= 1");
  return (M * (N + 1.0) + N) / (M * (N + 2.0));
}

double gm_fidelity_1m(int M) { return (2.0 * M + 1.0) / (3.0 * M); }

double uqcm_eta(int d) { return (d + 2.0) / (2.0 * (d + 1.0)); }

double uqcm_fidelity(int d) { return (uqcm_eta(d) * (d - 1) + 1.0) / d; }

double fan_fidelity(int N, int M, int d) {
  if (N < 1 || M <= N || d < 2) throw std::invalid_argument("FAN fidelity requires M > N >= 1, d >= 2");
  return (N * (d - 1.0) + M * (N + 1.0)) / ((d + N) * static_cast<double>(M));
}

double pc2_fidelity() { return 0.5 + std::sqrt(0.125); }

double pc_fidelity(int N, int M) {
  if (N < 1 || M <= N) throw std::invalid_argument("PC fidelity requires M > N >= 1");
  double sum = 0.0;
  const double m2 = 4.0 * M * M;
  for (int j = 0; j < N; ++j) {
    const double c = factorial(N) / (factorial(j) * factorial(N - j - 1));
    if ((M - N) % 2 == 0) {
      sum += c * std::sqrt((M - N + 2.0 * j + 2) * (M + N - 2.0 * j) / (m2 * (j + 1) * (N - j)));
    } else {
      sum += c / std::sqrt(m2 * (j + 1) * (N - j)) *
             (std::sqrt((M - N + 2.0 * j + 1) * (M + N - 2.0 * j + 1)) +
              std::sqrt((M - N + 2.0 * j + 3) * (M + N - 2.0 * j - 1)));
    }
  }
  const double scale = (M - N) % 2 == 0 ? std::ldexp(1.0, -N) : std::ldexp(1.0, -(N + 1));
  return 0.5 + scale * sum;
}

double pc_fidelity_1m(int M) {
  if (M < 2) throw std::invalid_argument("PC 1->M requires M >= 2");
  return M % 2 == 0 ? 0.5 + std::sqrt(M * (M + 2.0)) / (4.0 * M) : 0.5 + (M + 1.0) / (4.0 * M);
}

double pc_fidelity_limit(int N) {
  double sum = 0.0;
  for (int j = 0; j < N; ++j)
    sum += factorial(N) / (factorial(j) * factorial(N - j - 1)) * std::sqrt(1.0 / ((j + 1.0) * (N - j)));
  return 0.5 + std::ldexp(1.0, -(N + 1)) * sum;
}

double pc_d_alpha2(int d) { return 0.5 - (d - 2.0) / (2.0 * std::sqrt(d * d + 4.0 * d - 4.0)); }

double pc_d_fidelity(int d) { return 1.0 / d + (d - 2.0 + std::sqrt(d * d + 4.0 * d - 4.0)) / (4.0 * d); }

double kr_fidelity(double mu, double theta) {
  const double r = std::sqrt(std::max(0.0, 1.0 - 2.0 * mu * mu));
  const double c = std::cos(theta);
  return 0.5 + mu * r + ((1.0 - 2.0 * mu * mu) / 2.0 - mu * r) * c * c;
}

double kr_optimal_mu2(double theta) {
  const double t = std::tan(theta);
  return 0.25 * (1.0 - 1.0 / std::sqrt(1.0 + 2.0 * t * t * t * t));
}

double kr_dab2(double mu, double theta) {
  const double nu = std::sqrt(std::max(0.0, 1.0 - 2.0 * mu * mu));
  const double s = std::sin(theta);
  const double m2 = mu * mu;
  return 8.0 * m2 * m2 - (6.0 * m2 * m2 + m2 + 2.0 * mu * nu - 1.0) * s * s;
}

double econ_fidelity(int d) {
  const double a = d - 1.0 + std::sqrt(2.0);
  return (d - 1.0 + a * a) / (2.0 * d * d);
}

FidelityPair pauli_fidelities(double p) {
  const double den = 2.0 * (p * p - p + 1.0);
  return {(p * p + 1.0) / den, (p * p - 2.0 * p + 2.0) / den};
}

FidelityPair heis_fidelities(int d, double p) {
  const double q = 1.0 - p;
  const double den = 1.0 + (d - 1.0) * (p * p + q * q);
  return {(1.0 + (d - 1.0) * p * p) / den, (1.0 + (d - 1.0) * q * q) / den};
}

double heis_symmetric(int d) { return (d + 3.0) / (2.0 * (d + 1.0)); }

double bdefms_fidelity(double S) {
  const double r = std::sqrt(9.0 * S * S - 2.0 * S + 1.0);
  return 0.5 + std::sqrt(2.0) / (32.0 * S) * (1.0 + S) * (3.0 - 3.0 * S + r) *
                   std::sqrt(3.0 * S * S + 2.0 * S - 1.0 + (1.0 - S) * r);
}

double rastegin_bound(double f) {
  return 0.5 * (1.0 + f * f * f + (1.0 - f * f) * std::sqrt(1.0 + f * f));
}

double copier_entropy(int d) { return std::log(d + 1.0) - 2.0 * std::log(2.0) / (d + 1.0); }

double mixed_2m_eta(int M) { return (M + 2.0) / (2.0 * M); }

double gm3_then_mixed23_fidelity() {
  const double eta_gm = 2.0 * gm_fidelity_1m(3) - 1.0;
  return 0.5 * (1.0 + eta_gm * mixed_2m_eta(3));
}

double YingIndices::gap() const { return (n - 1.0) * (n - 2.0) / (static_cast<double>(n) * n); }

bool YingIndices::bounds_hold(double tol) const {
  const double g = gap();
  const double p = D_a * D_b, s = D_a + D_b, t = D_a + D_b - D_ab1;
  return D_ab1 >= p - g - tol && D_ab1 <= p + tol && D_ab2 >= s - g - tol && D_ab2 <= s + tol &&
         D_ab3 >= t - g - tol && D_ab3 <= t + tol;
}

YingIndices ying_indices(int n, const std::vector<double>& amplitudes) {
  if (n < 2 || static_cast<int>(amplitudes.size()) != n) throw std::invalid_argument("ying_indices: need n >= 2 amplitudes");
  Vec a(n);
  for (int k = 0; k < n; ++k) a[k] = amplitudes[k];
  const StateVector psi = make_state({n}, a);
  const CloneReport r = clone_report(MachineSpec::wz_n(n), psi);
  YingIndices y;
  y.n = n;
  y.D_a = r.D_a;
  y.D_b = r.D_b;
  y.D_ab1 = r.D_ab1;
  y.D_ab2 = r.D_ab2;
  y.D_ab3 = r.D_ab3;
  return y;
}

namespace {

void require_unit(const std::array<cplx, 4>& a) {
  double n = 0.0;
  for (const auto& c : a) n += std::norm(c);
  if (std::abs(n - 1.0) > kTol) throw std::invalid_argument("Bell amplitudes must be normalized");
}

std::array<cplx, 4> apply_rows(const double (&m)[4][4], const std::array<cplx, 4>& a) {
  std::array<cplx, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += 0.5 * m[i][j] * a[j];
  return out;
}

}  // namespace

std::array<cplx, 4> cerf_reparam(const std::array<cplx, 4>& amps, CerfTarget target) {
  require_unit(amps);
  // amplitude order (v, z, x, y) for (Phi+, Phi-, Psi+, Psi-)
  static const double rb[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  // obtained by projecting the regrouped four-qubit state on double Bell pairs
  static const double rc[4][4] = {{1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, 1}, {1, -1, -1, -1}};
  return apply_rows(target == CerfTarget::RB_AC ? rb : rc, amps);
}

std::array<cplx, 4> cerf_reparam_rc_printed(const std::array<cplx, 4>& amps) {
  static const double rc[4][4] = {{1, 1, 1, -1}, {1, 1, -1, 1}, {1, -1, 1, -1}, {1, -1, -1, -1}};
  return apply_rows(rc, amps);
}

Mat cerf_qudit(const Mat& alpha) {
  const Eigen::Index d = alpha.rows();
  if (alpha.cols() != d) throw std::invalid_argument("cerf_qudit: square amplitude table expected");
  Mat beta = Mat::Zero(d, d);
  for (Eigen::Index m = 0; m < d; ++m)
    for (Eigen::Index n = 0; n < d; ++n)
      for (Eigen::Index x = 0; x < d; ++x)
        for (Eigen::Index y = 0; y < d; ++y)
          beta(m, n) += std::polar(1.0, 2.0 * pi * static_cast<double>(n * x - m * y) / d) * alpha(x, y);
  return beta / static_cast<double>(d);
}

ProbCloneSuccess prob_clone_success(double overlap_psi, double overlap_phi, int m) {
  if (m < 2) throw std::invalid_argument("prob_clone_success requires m >= 2");
  const double s = std::abs(overlap_psi), t = std::abs(overlap_phi);
  if (s >= 1.0) throw std::invalid_argument("prob_clone_success: |<psi1|psi2>| must be < 1");
  if (t > 1.0) throw std::invalid_argument("prob_clone_success: |<phi1|phi2>| must be <= 1");
  ProbCloneSuccess r;
  r.gamma_a = (1.0 - s) / (1.0 - std::pow(s, m));
  r.gamma_b = (1.0 - t) / (1.0 - std::pow(s, m - 1));
  r.gamma_tot = r.gamma_b + (1.0 - r.gamma_b) * r.gamma_a;
  return r;
}

bool linearly_independent(const std::vector<StateVector>& states) {
  if (states.empty()) throw std::invalid_argument("linearly_independent: empty list");
  const Eigen::Index dim = states.front().amps.size();
  Mat m(dim, static_cast<Eigen::Index>(states.size()));
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].amps.size() != dim) throw std::invalid_argument("linearly_independent: dimension mismatch");
    m.col(static_cast<Eigen::Index>(i)) = states[i].amps;
  }
  if (m.cols() > dim) return false;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double largest = sv[0];
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-9 * largest) ++rank;
  return rank == m.cols();
}

}  // namespace qclone
