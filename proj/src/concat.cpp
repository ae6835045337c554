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

#include "qclone/concat.hpp"

#include <cmath>
#include <sstream>

#include "qclone/measures.hpp"

namespace qclone {

namespace {

void check_alpha2(double alpha2) {
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) throw std::invalid_argument("alpha^2 must lie in [0,1]");
}

void check_xi(double xi) {
  if (!(xi >= 0.0 && xi <= 0.5)) throw std::invalid_argument("xi must lie in [0,1/2]");
}

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Mat ket_bra(const Vec& v) { return v * v.adjoint(); }

ConcatClosed finish(double alpha2, Mat rho_x, Mat rho_y, const BlankState& blank) {
  const StateVector psi = qubit_from_alpha2(alpha2);
  const Vec sig = blank_ket(blank).amps;
  ConcatClosed c{std::move(rho_x), std::move(rho_y), 0.0, 0.0};
  c.D = hs_distance(c.rho_x, ket_bra(psi.amps));
  c.F = (sig.adjoint() * c.rho_y * sig)(0, 0).real();
  return c;
}

}  // namespace

void validate(const PipelineSpec& s) {
  validate(s.cloner);
  validate(s.deleter);
  if (input_copies(s.cloner) != 1 || input_dim(s.cloner) != 2) {
    std::ostringstream m;
    m << "pipeline cloner " << describe(s.cloner) << " must take one qubit to two qubits";
    throw std::invalid_argument(m.str());
  }
  const GramMachine g = machine_model(s.cloner);
  if (g.out_dims != Dims{2, 2})
    throw std::invalid_argument("pipeline cloner " + describe(s.cloner) + " does not output two qubits");
}

PipelineResult run_pipeline(const PipelineSpec& s, double alpha2, PipelinePath path) {
  check_alpha2(alpha2);
  validate(s);
  const StateVector psi = qubit_from_alpha2(alpha2);
  const GramMachine cl = machine_model(s.cloner);
  const MachineIsometry del = build_deleter(s.deleter);
  const Dims out_dims = del.out_dims;

  Mat rho = Mat::Zero(total_dim(out_dims), total_dim(out_dims));
  if (path == PipelinePath::Weighted) {
    for (std::size_t r = 0; r < cl.branches.size(); ++r) {
      const bool q_label = !cl.machine.labels[r].empty() && cl.machine.labels[r][0] == 'Q';
      const double w = q_label ? 1.0 : std::sqrt(std::max(0.0, cl.machine.gram(r, r).real()));
      const Vec out = del.v * (w * (cl.branches[r] * psi.amps));
      rho += ket_bra(out);
    }
  } else {
    const DensityOperator clones = partial_trace(formal_apply(cl, projector(psi)), {0, 1});
    rho = del.v * clones.mat * del.v.adjoint();
  }

  PipelineResult res;
  res.trace_before = rho.trace().real();
  const DensityOperator full{out_dims, rho / res.trace_before};
  res.rho_x = partial_trace(full, {0});
  res.rho_y = partial_trace(full, {1});
  res.D = hs_distance(res.rho_x, projector(psi));
  res.F = overlap(blank_ket(s.deleter.blank), res.rho_y);
  return res;
}

PipelineAverages pipeline_averages(const PipelineSpec& s, PipelinePath path, int nodes) {
  const Quadrature& q = gauss_legendre_unit(nodes);
  PipelineAverages a;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const PipelineResult r = run_pipeline(s, q.nodes[i], path);
    a.avg_D += q.weights[i] * r.D;
    a.avg_F += q.weights[i] * r.F;
  }
  return a;
}

ConcatClosed bh_pb_closed(double alpha2, double xi, const BlankState& blank) {
  check_alpha2(alpha2);
  check_xi(xi);
  const double n = 1.0 + 2.0 * xi;
  const Vec sig = blank_ket(blank).amps;
  return finish(alpha2, diag2((alpha2 + xi) / n, (1.0 - alpha2 + xi) / n),
                (ket_bra(sig) + xi * Mat::Identity(2, 2)) / n, blank);
}

double bh_pb_avg_distortion(double xi) {
  check_xi(xi);
  return (6.0 * xi * xi + 4.0 * xi + 1.0) / (3.0 * (1.0 + 2.0 * xi) * (1.0 + 2.0 * xi));
}

double bh_pb_fidelity(double xi) {
  check_xi(xi);
  return (1.0 + xi) / (1.0 + 2.0 * xi);
}

ConcatClosed bh_sdep_closed(double alpha2, double xi, cplx a0, cplx a1, cplx b0, cplx b1,
                            const BlankState& blank) {
  check_alpha2(alpha2);
  check_xi(xi);
  const double G = std::norm(a0 + a1), H = std::norm(b0 + b1);
  const double n = 1.0 + (G + H) * xi;
  const Vec sig = blank_ket(blank).amps;
  return finish(alpha2, diag2((alpha2 + xi * G) / n, (1.0 - alpha2 + xi * H) / n),
                (ket_bra(sig) + diag2(xi * H, xi * G)) / n, blank);
}

double bh_sdep_avg_distortion(double xi, double G, double H) {
  check_xi(xi);
  const double n = 1.0 + (G + H) * xi;
  return 1.0 / 3.0 + 2.0 * xi * xi * (G * G + H * H - G * H) / (3.0 * n * n);
}

double bh_sdep_fidelity(double xi, double G, double H, double M) {
  check_xi(xi);
  return (1.0 + xi * M * M * (G - H) + xi * H) / (1.0 + (G + H) * xi);
}

double bh_sdep_distortion_printed(double alpha2, double xi, double G, double H) {
  check_alpha2(alpha2);
  const double n = 1.0 + (G + H) * xi;
  const double d = G * (1.0 - alpha2) - H * alpha2;
  return 2.0 * xi * xi * d * d / (n * n);
}

}  // namespace qclone
