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

#include <string>

#include "qclone/qcore.hpp"

namespace qclone {

enum class DeleterFamily {
  PB,    // Pati-Braunstein conditional deleter
  QIU,   // Qiu universal (non-optimal) deleter
  CONV,  // conventional deleter with free lambda and blank state
  SDEP,  // state-dependent deleter with amplitudes a_i, b_i
};

// lambda -> 1/2 limits are evaluated at lambda = 1/2 - kLimitEps.
inline constexpr double kLimitEps = 1e-6;

struct DeleterSpec {
  DeleterFamily family = DeleterFamily::PB;
  BlankState blank;
  double r1 = 1.0;
  double lambda = 0.25;
  double Y = -1.0;  // CONV <A|A0> = <A|A1> = <A|D0>; negative means maximal
  cplx a0 = 1.0, a1 = 0.0, b0 = 0.0, b1 = 1.0;

  static DeleterSpec pb(BlankState blank = {}) { return {DeleterFamily::PB, blank}; }
  static DeleterSpec qiu(double r1 = 1.0) {
    DeleterSpec s{DeleterFamily::QIU, {}}; s.r1 = r1; return s;
  }
  static DeleterSpec conv(double lambda, BlankState blank = {}, double Y = -1.0) {
    DeleterSpec s{DeleterFamily::CONV, blank}; s.lambda = lambda; s.Y = Y; return s;
  }
  static DeleterSpec sdep(cplx a0, cplx a1, cplx b0, cplx b1, BlankState blank = {}) {
    DeleterSpec s{DeleterFamily::SDEP, blank};
    s.a0 = a0; s.a1 = a1; s.b0 = b0; s.b1 = b1;
    return s;
  }
};

std::string deleter_family_name(DeleterFamily f);
std::string describe(const DeleterSpec& s);
// Throws std::invalid_argument naming the violated constraint.
void validate(const DeleterSpec& s);

StateVector blank_ket(const BlankState& b);
StateVector blank_perp_ket(const BlankState& b);
// Deletion target: (|Sigma> + |Sigma_perp>)/sqrt2 for CONV, |Sigma> otherwise.
StateVector deletion_target(const DeleterSpec& s);

// Output system is (retained qubit, deleted qubit); for CONV the Gram also
// carries the initial machine state A as a trailing, branch-free label.
GramMachine deleter_model(const DeleterSpec& s);
MachineIsometry build_deleter(const DeleterSpec& s);

// |00> -> |psi+>, |01> -> |11>, |10> -> |psi->, |11> -> |00>.
Mat transformer();

// Largest Y keeping the CONV Gram PSD, by bisection; closed form sqrt((1-2 lambda)/3).
double conv_y_max(double lambda);
double conv_y_max_closed(double lambda);

struct DeletionReport {
  DensityOperator rho_1;  // retained mode
  DensityOperator rho_2;  // deleted mode
  DensityOperator rho_3;  // machine
  double F_1 = 0.0;       // NaN for a two-qubit input that is not a product of copies
  double F_2 = 0.0;
  double D_1 = 0.0;       // Hilbert-Schmidt distortion of the retained mode
  double machine_overlap = 0.0;  // <A|rho_3|A> (CONV), <Q|rho_3|Q> otherwise
  double avg_F_1 = 0.0, avg_F_2 = 0.0;  // over alpha^2 with real amplitudes
};

// `input` is either one qubit (deleted from psi (x) psi) or a two-qubit state.
DeletionReport delete_report(const DeleterSpec& s, const StateVector& input, int n_transformers = 0);
// Single-input fidelities only (no averages); used by the averaging loops.
DeletionReport delete_point(const DeleterSpec& s, const StateVector& input, int n_transformers);

// Closed forms.
double pb_fidelity_a(double alpha2);
double pb_fidelity_b(double alpha2);
double conv_fidelity_1(double lambda, double alpha2);
// F_3 = 3/4 - alpha^2/2 + alpha (beta + beta^*)/(2 sqrt2), lambda -> 1/2, one transformer.
double conv_retained_limit(cplx alpha, cplx beta);
double conv_retained_limit_average();
// Deleted-mode state for lambda -> 1/2 after n transformers (input independent).
Mat limiting_deleted_state(int n_transformers);
double limiting_deletion_fidelity(int n_transformers, const BlankState& blank);

struct PbTransformerResult {
  DensityOperator rho_2;
  double F_2 = 0.0;
};
// Simulated PB deleter followed by the transformer.
PbTransformerResult pb_with_transformer(const BlankState& blank, const StateVector& psi);
// Displayed real-blank expression for the same fidelity.
double pb_transformer_fidelity_formula(double m1, double m2, double alpha2);

double song_optimal_fidelity(double eta1, double theta, double phi1, double phi2);

struct SdepAverages {
  double avg_D1 = 0.0;
  double avg_F1 = 0.0;
};
// M = |<Sigma|1>|; g = a0 + a1, h = b0 + b1.
SdepAverages sdep_averages(cplx a0, cplx a1, cplx b0, cplx b1, double M);

}  // namespace qclone
