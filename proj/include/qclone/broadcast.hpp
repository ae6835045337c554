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

#include <functional>
#include <string>
#include <vector>

#include "qclone/qcore.hpp"

namespace qclone {

// State-dependent BH copier: lambda = <Y_i|Y_i>, mu = 1 - 2 lambda.
double sd_cloner_lambda_star(double alpha2);
// Single-clone distortion for BH(lambda, mu); equals 2 lambda^2 when mu = 1 - 2 lambda.
double sd_cloner_distortion(double alpha2, double lambda, double mu);
// Two-clone distortion with mu = 1 - 2 lambda; minimal at lambda_star.
double sd_cloner_dab(double alpha2, double lambda);

// alpha|00> + beta|11> + gamma|10> + delta|01>, real amplitudes.
struct BroadcastInput {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};
StateVector broadcast_state(const BroadcastInput& in);

struct BroadcastOutputs {
  DensityOperator rho_AB2;  // A with B'
  DensityOperator rho_A2B;  // A' with B
  DensityOperator rho_AA2;  // A with A'
  DensityOperator rho_BB2;  // B with B'
};

// Closed-form coefficient matrices (nonlocal C, local K and K').
BroadcastOutputs broadcast_outputs(const BroadcastInput& in, double lambda);
// BH(lambda) applied to each half of `chi` through the formal Gram map.
BroadcastOutputs broadcast_simulated(const StateVector& chi, double lambda);
// Local K matrix as displayed (not trace one in general); kept for comparison.
Mat local_output_printed(const BroadcastInput& in, double lambda, bool bob_side);

enum class IntervalKind { Inseparable, Separable, Broadcastable };
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  IntervalKind kind = IntervalKind::Inseparable;
  bool empty() const { return lo >= hi; }
};
std::string interval_kind_name(IntervalKind k);

// Range of alpha1^2 in which the nonlocal outputs of alpha1|00> + beta1|11>
// are entangled; requires (1 - 2 lambda)^4 >= 4 lambda^2 (1 - lambda)^2.
Interval insep_interval(double lambda);
// Range in which the local outputs are separable; requires lambda <= 1/4.
Interval sep_interval(double lambda);
Interval broadcast_interval(double lambda);
// Same endpoints found by bisection on the simulated outputs: the minimum
// partial-transpose eigenvalue of rho_AB' (Inseparable) or W4 of rho_AA' (Separable).
Interval interval_by_bisection(IntervalKind kind, double lambda, double tol = 1e-9);

double broadcast_fidelity(double alpha2, double lambda);
// Variant with the opposite sign of the alpha^2 beta^2 term.
double broadcast_fidelity_plus(double alpha2, double lambda);
// Average over alpha^2 in [0,1] with lambda = rule(alpha^2).
double avg_broadcast_fidelity(const std::function<double(double)>& lambda_rule);

// Three-qubit protocol: BH copier with orthonormal machine states Q0/Q1 on
// qubits 1 and 3 of alpha|00> + beta|11>, machine measurement, then a
// second copier on qubits 2 and 4.
enum class ProtocolBranch { Q0Q0, Q0Q1, Q1Q0, Q1Q1 };  // (Alice, Bob)
std::string branch_name(ProtocolBranch b);

// 1 -> 2 copier with |0> -> sqrt(2/3)|00>|Q0> + |psi+>|Q1>/sqrt3 and its mirror.
MachineIsometry protocol_copier();

struct ProtocolResult {
  double probability = 0.0;  // of the branch
  StateVector zeta_1234;     // post-measurement four-qubit state
  DensityOperator rho_125346;  // qubits in the order 1,2,5,3,4,6
};
ProtocolResult three_qubit_protocol(double alpha2, ProtocolBranch branch, double beta_phase = 0.0);
// Reduced state on the listed qubit labels (1..6), in that order.
DensityOperator protocol_reduced(const ProtocolResult& r, const std::vector<int>& labels);

// Closed forms for the Q0Q0 branch (real alpha, beta >= 0).
Mat protocol_rho146_closed(double alpha2);
Mat protocol_rho16_closed(double alpha2);
Mat protocol_rho46_closed(double alpha2);
Mat protocol_rho12_closed(double alpha2);

// broadcast: rho12, rho15, rho34, rho36 separable and rho25, rho46, rho23,
// rho35, rho14, rho16 entangled. all_local_separable: every same-side pair
// (12, 15, 25, 34, 36, 46) separable and the cross pairs 14, 16, 23, 35 entangled.
struct ProtocolVerdict {
  bool broadcast = false;
  bool all_local_separable = false;
  std::vector<std::pair<std::string, bool>> entangled;  // pair label -> NPT
};
ProtocolVerdict protocol_verdict(double alpha2, ProtocolBranch branch);

// Sub-intervals of (0,1) where `pred` holds, from an n-point scan refined by
// bisection to `tol`.
std::vector<std::pair<double, double>> scan_intervals(const std::function<bool(double)>& pred,
                                                      int n = 400, double tol = 1e-6);
// Ranges of alpha^2 where the reduced state of qubits (q1, q2) is NPT.
std::vector<std::pair<double, double>> pair_entangled_intervals(ProtocolBranch branch, int q1, int q2);

// Entanglement swapping on qubit 2 of rho_325 with a singlet |psi->_87 and a
// Bell measurement on (2, 8).
struct SwapResult {
  double probability = 0.0;
  bool valid = false;
  DensityOperator rho;  // qubits 3, 7, 5 after correction
};
// Correction on qubit 7 for each outcome; Phi+ needs sigma_z sigma_x.
Mat swap_correction(BellLabel outcome);
SwapResult swap_extend(const DensityOperator& rho_325, BellLabel outcome);
// Same with the displayed operators, sigma_z for Phi+ acting on qubit 5.
SwapResult swap_extend_printed(const DensityOperator& rho_325, BellLabel outcome);

}  // namespace qclone
