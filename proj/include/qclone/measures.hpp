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

#include <vector>

#include "qclone/qcore.hpp"

namespace qclone {

enum class EntropyBase { Natural, Two };
enum class Verdict { Separable, Inseparable, Unknown };

struct WDeterminants {
  double w2 = 0.0;
  double w3 = 0.0;
  double w4 = 0.0;
  // (W3 < 0 or W4 < 0) and W2 >= 0
  bool signals_inseparable(double tol = kTol) const;
};

struct SeparabilityVerdict {
  Verdict verdict = Verdict::Unknown;
  double min_pt_eigenvalue = 0.0;
  WDeterminants w;  // only filled for two qubits
};

// Tr sqrt(sqrt(rho) sigma sqrt(rho))
double fidelity_mixed(const DensityOperator& rho, const DensityOperator& sigma);
// <psi|rho|psi>, the working fidelity of every table.
double overlap(const StateVector& psi, const DensityOperator& rho);
// sqrt(<psi|rho|psi>)
double fidelity_pure(const StateVector& psi, const DensityOperator& rho);
// Tr[(a - b)^2]
double hs_distance(const Mat& a, const Mat& b);
double hs_distance(const DensityOperator& a, const DensityOperator& b);

double von_neumann_entropy(const DensityOperator& rho, EntropyBase base);
double entropy_of_entanglement(const StateVector& psi, const std::vector<int>& side_a,
                               EntropyBase base);
double binary_entropy(double x);

double concurrence_2q(const DensityOperator& rho);
double concurrence_pure(const StateVector& psi);
double eof_from_concurrence(double c);

// Partial transpose taken over every subsystem in side_a.
Mat partial_transpose_side(const DensityOperator& rho, const std::vector<int>& side_a);
double min_pt_eigenvalue(const DensityOperator& rho, const std::vector<int>& side_a);
double negativity(const DensityOperator& rho, const std::vector<int>& side_a);
SeparabilityVerdict ppt_verdict(const DensityOperator& rho, const std::vector<int>& side_a,
                                double tol = kTol);
// Leading principal minors of the partial transpose on the second qubit.
WDeterminants w_determinants(const DensityOperator& rho);

struct HerbertResult {
  DensityOperator rho_x;
  DensityOperator rho_z;
  double hs_gap = 0.0;
};
// Singlet shared by Alice and Bob, Bob's half fed to a perfect copier.
HerbertResult herbert_ensembles();
// Same construction with a physical copier acting on Bob's qubit; returns the
// Hilbert-Schmidt gap between Bob's two ensembles (zero by linearity).
double herbert_gap_with(const MachineIsometry& cloner);

}  // namespace qclone
