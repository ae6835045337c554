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

#include "qclone/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qclone/measures.hpp"

namespace qclone {

namespace {

void check_compatible(const HybridSpec& s, const GramMachine& a, const GramMachine& b) {
  if (s.lambda < 0.0 || s.lambda > 1.0) throw std::invalid_argument("hybrid weight lambda must lie in [0,1]");
  if (a.in_dims != b.in_dims || a.out_dims != b.out_dims || input_copies(s.m1) != input_copies(s.m2))
    throw std::invalid_argument("hybrid components " + describe(s.m1) + " and " + describe(s.m2) +
                                " have different input or clone dimensions");
}

// Zero-pads the trailing machine factor of `v` from its rank to `dim`.
Mat pad_machine(const MachineIsometry& v, int dim) {
  const int rank = v.out_dims.back();
  const int clones = static_cast<int>(v.v.rows()) / rank;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(clones) * dim, v.v.cols());
  for (int c = 0; c < clones; ++c) out.middleRows(c * dim, rank) = v.v.middleRows(c * rank, rank);
  return out;
}

void check_bhbh(double alpha2, double lambda) {
  if (alpha2 < 0.0 || alpha2 > 1.0) throw std::invalid_argument("alpha^2 must lie in [0,1]");
  if (lambda <= 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in (0,1]");
}

}  // namespace

MachineIsometry hybrid_machine(const HybridSpec& s) {
  const GramMachine a = machine_model(s.m1), b = machine_model(s.m2);
  check_compatible(s, a, b);
  const MachineIsometry va = build_machine(s.m1), vb = build_machine(s.m2);
  const int dim = std::max(va.out_dims.back(), vb.out_dims.back());
  const Mat pa = pad_machine(va, dim), pb = pad_machine(vb, dim);
  Mat v = Mat::Zero(pa.rows() * 2, pa.cols());
  for (Eigen::Index r = 0; r < pa.rows(); ++r) {
    v.row(2 * r) = std::sqrt(s.lambda) * pa.row(r);
    v.row(2 * r + 1) = std::sqrt(1.0 - s.lambda) * pb.row(r);
  }
  Dims out = a.out_dims;
  out.push_back(dim);
  out.push_back(2);
  return {a.in_dims, out, v};
}

GramMachine hybrid_model(const HybridSpec& s) {
  const GramMachine a = machine_model(s.m1), b = machine_model(s.m2);
  check_compatible(s, a, b);
  GramMachine h{a.in_dims, a.out_dims, {}, {}};
  const auto na = a.machine.gram.rows(), nb = b.machine.gram.rows();
  h.machine.gram = Mat::Zero(na + nb, na + nb);
  h.machine.gram.topLeftCorner(na, na) = a.machine.gram;
  h.machine.gram.bottomRightCorner(nb, nb) = b.machine.gram;
  for (const auto& l : a.machine.labels) h.machine.labels.push_back(l + "|i");
  for (const auto& l : b.machine.labels) h.machine.labels.push_back(l + "|j");
  for (const Mat& m : a.branches) h.branches.push_back(std::sqrt(s.lambda) * m);
  for (const Mat& m : b.branches) h.branches.push_back(std::sqrt(1.0 - s.lambda) * m);
  return h;
}

CloneReport hybrid_report(const HybridSpec& s, const StateVector& psi, bool formal) {
  if (psi.dims != Dims{input_dim(s.m1)}) throw std::invalid_argument("hybrid_report: input dimension mismatch");
  const StateVector in = input_copies(s.m1) == 2 ? tensor(psi, psi) : psi;
  DensityOperator clones;
  if (formal) {
    clones = partial_trace(formal_apply(hybrid_model(s), projector(in)), {0, 1});
  } else {
    clones = partial_trace(apply_isometry(hybrid_machine(s), in), {0, 1});
  }
  return clone_report_from(clones, psi);
}

BhbhResult bhbh_state_dependent(double alpha2, double lambda) {
  check_bhbh(alpha2, lambda);
  const double s = alpha2 * (1.0 - alpha2);
  BhbhResult r;
  r.lambda_lo = std::max(0.0, 1.0 - 4.5 * s);
  r.xi_hi = 0.75 * s;
  r.xi_star = (9.0 * s - 2.0 * (1.0 - lambda)) / (12.0 * lambda);
  if (r.xi_star < 0.0) {
    std::ostringstream m;
    m << "lambda = " << lambda << " is below the admissible bound 1 - 9 alpha^2 (1 - alpha^2)/2 = " << r.lambda_lo;
    throw std::invalid_argument(m.str());
  }
  r.D_min = 2.0 * s - 4.5 * s * s;
  r.F_hcm = 1.0 - 0.75 * s;
  return r;
}

HybridSpec bhbh_spec(double xi, double lambda) { return {MachineSpec::bh(xi), MachineSpec::bh_opt(), lambda}; }

UniversalHybrid universal_hybrid_lambda(double xi, double xi_prime) {
  if (std::abs(xi - xi_prime) < 1e-15) throw std::invalid_argument("universal hybrid requires xi != xi'");
  if (std::abs(6.0 * xi_prime - 1.0) < 1e-15) throw std::invalid_argument("universal hybrid requires xi' != 1/6");
  const double lambda = (6.0 * xi_prime - 1.0) / (6.0 * (xi_prime - xi));
  if (lambda <= 0.0 || lambda >= 1.0) {
    std::ostringstream m;
    m << "lambda = " << lambda << " for (xi, xi') = (" << xi << ", " << xi_prime << ") is outside (0,1)";
    throw std::invalid_argument(m.str());
  }
  return {lambda, (1.0 - xi_prime) - lambda * (xi - xi_prime)};
}

double bhbh_distortion(double alpha2, double lambda, double xi, double xi_prime) {
  const double a = std::sqrt(alpha2), b = std::sqrt(1.0 - alpha2), b2 = 1.0 - alpha2;
  const double s2 = std::sqrt(2.0);
  const double eta = 1.0 - 2.0 * xi, etap = 1.0 - 2.0 * xi_prime;
  const double keep = lambda * (1.0 - 2.0 * xi) + (1.0 - lambda) * (1.0 - 2.0 * xi_prime);
  const double cross = eta * lambda / 2.0 + (1.0 - lambda) * etap / 2.0;
  const double u11 = alpha2 * alpha2 - alpha2 * keep;
  const double u12 = s2 * a * a * a * b - s2 * a * b * cross;
  const double u13 = alpha2 * b2;
  const double u22 = 2.0 * alpha2 * b2 - (2.0 * xi * lambda + 2.0 * xi_prime * (1.0 - lambda));
  const double u23 = s2 * a * b * b * b - s2 * a * b * cross;
  const double u33 = b2 * b2 - b2 * keep;
  return u11 * u11 + 2 * u12 * u12 + 2 * u13 * u13 + u22 * u22 + 2 * u23 * u23 + u33 * u33;
}

double bh_pc_hybrid(double lambda, double xi) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0,1]");
  if (xi < 0.0 || xi > 0.5) throw std::invalid_argument("xi must lie in [0,1/2]");
  const double r = 1.0 / std::sqrt(8.0);
  return (0.5 + r) + lambda * (0.5 - r - xi);
}

double bh_pc_hybrid_state_dependent(double lambda, double alpha2) {
  return bh_pc_hybrid(lambda, 0.75 * alpha2 * (1.0 - alpha2));
}

FidelityPair bh_pauli_table(double p, double lambda) {
  if (p < 0.0 || p > 1.0 || lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("p and lambda must lie in [0,1]");
  const double den = p * p - p + 1.0;
  return {5.0 / 6.0 + lambda / 2.0 * ((p * p + 1.0) / den - 5.0 / 3.0),
          5.0 / 6.0 + lambda / 2.0 * ((p * p - 2.0 * p + 2.0) / den - 5.0 / 3.0)};
}

FidelityPair bh_anti_hybrid(double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in [0,1]");
  return {5.0 * lambda / 6.0 + 2.0 * (1.0 - lambda) / 3.0, 5.0 * lambda / 6.0 + (1.0 - lambda) / 3.0};
}

}  // namespace qclone
