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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "qclone/qcore.hpp"

namespace qclone {

enum class Family {
  WZ,          // Wootters-Zurek copier
  WZ_N,        // n-level Wootters-Zurek copier
  BH,          // Buzek-Hillery with free xi (eta = 1 - 2 xi unless overridden)
  BH_OPT,      // universal optimal Buzek-Hillery
  GM_1M,       // Gisin-Massar 1 -> M
  UQCM_D,      // universal d-level 1 -> 2
  PC2,         // qubit phase-covariant 1 -> 2
  PC_D,        // d-level phase-covariant 1 -> 2
  KR,          // one-parameter family interpolating universal and phase-covariant
  ECON,        // economical copier, no ancilla
  PAULI_ASYM,  // asymmetric Pauli cloner
  HEIS_ASYM,   // asymmetric Heisenberg cloner in d dimensions
  ANTI,        // universal anti-cloner
  MIXED_23,    // 2 -> 3 cloner for mixed inputs
  MIXED_2M,    // 2 -> M cloner for mixed inputs
};

struct MachineSpec {
  Family family = Family::BH_OPT;
  double xi = 1.0 / 6.0;
  double eta = -1.0;  // BH cross term; negative means 1 - 2 xi
  double p = 0.5;
  double mu = 0.5;
  int n = 2;  // level count for WZ_N
  int d = 2;
  int M = 2;
  int blank = 0;  // ECON blank index

  static MachineSpec wz() { return {Family::WZ}; }
  static MachineSpec wz_n(int n) { MachineSpec s{Family::WZ_N}; s.n = n; return s; }
  static MachineSpec bh(double xi, double eta = -1.0) {
    MachineSpec s{Family::BH}; s.xi = xi; s.eta = eta; return s;
  }
  static MachineSpec bh_opt() { return {Family::BH_OPT}; }
  static MachineSpec gm(int M) { MachineSpec s{Family::GM_1M}; s.M = M; return s; }
  static MachineSpec uqcm(int d) { MachineSpec s{Family::UQCM_D}; s.d = d; return s; }
  static MachineSpec pc2() { return {Family::PC2}; }
  static MachineSpec pc_d(int d) { MachineSpec s{Family::PC_D}; s.d = d; return s; }
  static MachineSpec kr(double mu) { MachineSpec s{Family::KR}; s.mu = mu; return s; }
  static MachineSpec econ(int d, int blank = 0) {
    MachineSpec s{Family::ECON}; s.d = d; s.blank = blank; return s;
  }
  static MachineSpec pauli(double p) { MachineSpec s{Family::PAULI_ASYM}; s.p = p; return s; }
  static MachineSpec heis(int d, double p) {
    MachineSpec s{Family::HEIS_ASYM}; s.d = d; s.p = p; return s;
  }
  static MachineSpec anti() { return {Family::ANTI}; }
  static MachineSpec mixed23() { MachineSpec s{Family::MIXED_23}; s.M = 3; return s; }
  static MachineSpec mixed2m(int M) { MachineSpec s{Family::MIXED_2M}; s.M = M; return s; }

  double bh_eta() const { return eta < 0.0 ? 1.0 - 2.0 * xi : eta; }
};

std::string family_name(Family f);
std::string describe(const MachineSpec& s);
// Throws std::invalid_argument naming the violated range.
void validate(const MachineSpec& s);

// Input level count (qubit families return 2).
int input_dim(const MachineSpec& s);
// Number of input copies consumed (2 for the mixed-state cloners).
int input_copies(const MachineSpec& s);

GramMachine machine_model(const MachineSpec& s);
MachineIsometry build_machine(const MachineSpec& s);

struct CloneReport {
  DensityOperator rho_out;  // joint state of the first two clones
  DensityOperator rho_a;
  DensityOperator rho_b;
  double F_a = 0.0, F_b = 0.0;
  double D_a = 0.0, D_b = 0.0, D_ab = 0.0;
  double D_ab1 = 0.0, D_ab2 = 0.0, D_ab3 = 0.0;
};

// The input is the single-copy state; two-copy families receive psi (x) psi.
// With formal = true the machine is never realized, so Schwarz-violating
// parameters still produce the algebraic output.
CloneReport clone_report(const MachineSpec& s, const StateVector& psi, bool formal = false);
CloneReport clone_report_from(const DensityOperator& rho_clones, const StateVector& psi);

// Closed-form fidelities.
double gm_fidelity(int N, int M);
double gm_fidelity_1m(int M);
double uqcm_eta(int d);
double uqcm_fidelity(int d);
double fan_fidelity(int N, int M, int d);
double pc2_fidelity();
double pc_fidelity(int N, int M);
double pc_fidelity_1m(int M);
double pc_fidelity_limit(int N);
double pc_d_fidelity(int d);
double pc_d_alpha2(int d);
double kr_fidelity(double mu, double theta);
double kr_optimal_mu2(double theta);
double kr_dab2(double mu, double theta);
double econ_fidelity(int d);
struct FidelityPair {
  double first = 0.0;
  double second = 0.0;
};
FidelityPair pauli_fidelities(double p);
FidelityPair heis_fidelities(int d, double p);
double heis_symmetric(int d);
double bdefms_fidelity(double S);
double rastegin_bound(double f);
double copier_entropy(int d);
double mixed_2m_eta(int M);
// GM 1 -> 3 followed by the 2 -> 3 mixed-state cloner.
double gm3_then_mixed23_fidelity();

struct YingIndices {
  double D_a = 0.0, D_b = 0.0;
  double D_ab1 = 0.0, D_ab2 = 0.0, D_ab3 = 0.0;
  double gap() const;  // (n-1)(n-2)/n^2, filled by ying_indices
  int n = 2;
  // Lower/upper bounds on the three indices.
  bool bounds_hold(double tol = kTol) const;
};
YingIndices ying_indices(int n, const std::vector<double>& amplitudes);

enum class CerfTarget { RB_AC, RC_AB };
// Bell-amplitude reparametrization; RC_AB is the orthogonal variant, see README.
std::array<cplx, 4> cerf_reparam(const std::array<cplx, 4>& amps, CerfTarget target);
// As printed for RC_AB; not norm preserving, kept for the report.
std::array<cplx, 4> cerf_reparam_rc_printed(const std::array<cplx, 4>& amps);
// d-level form: beta_{m,n} = (1/d) sum_{x,y} exp(2 pi i (n x - m y)/d) alpha_{x,y}.
Mat cerf_qudit(const Mat& alpha);

struct ProbCloneSuccess {
  double gamma_a = 0.0, gamma_b = 0.0, gamma_tot = 0.0;
};
ProbCloneSuccess prob_clone_success(double overlap_psi, double overlap_phi, int m);

bool linearly_independent(const std::vector<StateVector>& states);

// Normalized Dicke state on `n` qubits with `ones` excitations.
Vec dicke(int n, int ones);

}  // namespace qclone
