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
#include "qclone/deleters.hpp"

namespace qclone {

struct PipelineSpec {
  MachineSpec cloner;
  DeleterSpec deleter;
};

// Weighted: the cloner's machine labels are kept as orthogonal tags, Q
// labels with unit weight and the others with sqrt(<m|m>); the deleter acts on
// each tagged term and the sum is renormalized by its trace (1 + 2 xi for BH).
// Physical: the cloner machine is traced out and the deleter acts on the mixed
// clone pair.
enum class PipelinePath { Weighted, Physical };

struct PipelineResult {
  double D = 0.0;  // Tr[(rho_x - |psi><psi|)^2]
  double F = 0.0;  // <Sigma|rho_y|Sigma>
  DensityOperator rho_x;  // retained qubit
  DensityOperator rho_y;  // deleted qubit
  double trace_before = 1.0;  // trace before renormalization
};

// Throws std::invalid_argument unless the cloner maps one qubit to two.
void validate(const PipelineSpec& s);
PipelineResult run_pipeline(const PipelineSpec& s, double alpha2,
                            PipelinePath path = PipelinePath::Weighted);

struct PipelineAverages {
  double avg_D = 0.0;
  double avg_F = 0.0;
};
// Averages over alpha^2 in [0,1] (real amplitudes) by Gauss-Legendre.
PipelineAverages pipeline_averages(const PipelineSpec& s, PipelinePath path = PipelinePath::Weighted,
                                   int nodes = 64);

// Closed forms for BH(xi) followed by PB or by SDEP(a0, a1, b0, b1).
struct ConcatClosed {
  Mat rho_x;
  Mat rho_y;
  double D = 0.0;
  double F = 0.0;
};
ConcatClosed bh_pb_closed(double alpha2, double xi, const BlankState& blank = {});
double bh_pb_avg_distortion(double xi);  // (6 xi^2 + 4 xi + 1) / (3 (1 + 2 xi)^2)
double bh_pb_fidelity(double xi);        // (1 + xi) / (1 + 2 xi)

// g = a0 + a1, h = b0 + b1, G = |g|^2, H = |h|^2, M = |<Sigma|1>|.
ConcatClosed bh_sdep_closed(double alpha2, double xi, cplx a0, cplx a1, cplx b0, cplx b1,
                            const BlankState& blank = {});
double bh_sdep_avg_distortion(double xi, double G, double H);
double bh_sdep_fidelity(double xi, double G, double H, double M);
// Displayed form of the distortion, which leaves out the 2 alpha^2 beta^2
// contribution of the off-diagonal entries.
double bh_sdep_distortion_printed(double alpha2, double xi, double G, double H);

}  // namespace qclone
