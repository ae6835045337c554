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

#include "qclone/cloners.hpp"

namespace qclone {

// m1 runs with probability lambda (flag |0>), m2 with 1 - lambda (flag |1>).
struct HybridSpec {
  MachineSpec m1;
  MachineSpec m2;
  double lambda = 0.5;
};

// Realized isometry; output = clones, machine zero-padded to the larger
// component rank, then the flag qubit as the least significant factor.
MachineIsometry hybrid_machine(const HybridSpec& s);
// Same transformation with block-diagonal machine Gram; usable when a
// component is not realizable.
GramMachine hybrid_model(const HybridSpec& s);
CloneReport hybrid_report(const HybridSpec& s, const StateVector& psi, bool formal = false);

// BH optimal (xi' = 1/6) mixed with a state-dependent BH(xi) component.
struct BhbhResult {
  double xi_star = 0.0;
  double D_min = 0.0;
  double F_hcm = 0.0;
  double lambda_lo = 0.0;  // admissible lambda lies in (lambda_lo, 1]
  double xi_hi = 0.0;      // xi_star at lambda = 1
};
BhbhResult bhbh_state_dependent(double alpha2, double lambda);
// Component xi that the BH(xi) + BH_OPT hybrid uses at weight lambda.
HybridSpec bhbh_spec(double xi, double lambda);

struct UniversalHybrid {
  double lambda = 0.0;
  double F = 0.0;
};
// lambda = (6 xi' - 1) / (6 (xi' - xi)); BH(xi) runs with probability lambda.
UniversalHybrid universal_hybrid_lambda(double xi, double xi_prime);
// Closed-form two-clone distortion for the BH(xi)/BH(xi') hybrid with eta = 1 - 2 xi.
double bhbh_distortion(double alpha2, double lambda, double xi, double xi_prime);

// F1 = (1/2 + 1/sqrt8) + lambda (1/2 - 1/sqrt8 - xi); BH-type weight lambda.
double bh_pc_hybrid(double lambda, double xi);
// Same with the state-dependent xi(alpha^2) = 3 alpha^2 (1 - alpha^2) / 4.
double bh_pc_hybrid_state_dependent(double lambda, double alpha2);

// Pauli cloner with probability lambda, BH optimal with 1 - lambda.
FidelityPair bh_pauli_table(double p, double lambda);
// BH optimal with probability lambda, anti-cloner with 1 - lambda; both
// fidelities are overlaps with the input state.
FidelityPair bh_anti_hybrid(double lambda);

}  // namespace qclone
