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

#include "qclone/measures.hpp"

#include <algorithm>
#include <cmath>

namespace qclone {

namespace {

void require_same_dims(const DensityOperator& a, const DensityOperator& b) {
  if (a.mat.rows() != b.mat.rows() || a.mat.cols() != b.mat.cols())
    throw std::invalid_argument("dimension mismatch");
}

void require_two_qubits(const Dims& dims) {
  if (dims != Dims{2, 2}) throw std::invalid_argument("expected a two-qubit operator");
}

double entropy_of_eigs(const std::vector<double>& ev, EntropyBase base) {
  double s = 0.0;
  for (double e : ev)
    if (e > 1e-15) s -= e * std::log(e);
  return base == EntropyBase::Two ? s / std::log(2.0) : s;
}

}  // namespace

bool WDeterminants::signals_inseparable(double tol) const {
  return (w3 < -tol || w4 < -tol) && w2 >= -tol;
}

double fidelity_mixed(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dims(rho, sigma);
  const Mat s = psd_sqrt(rho.mat);
  const Mat inner = s * sigma.mat * s;
  double f = 0.0;
  for (double e : hermitian_eigvals(0.5 * (inner + inner.adjoint()), 1e-6))
    if (e > 1e-12) f += std::sqrt(e);
  return std::min(f, 1.0);
}

double overlap(const StateVector& psi, const DensityOperator& rho) {
  if (psi.amps.size() != rho.mat.rows()) throw std::invalid_argument("overlap: dimension mismatch");
  return (psi.amps.adjoint() * rho.mat * psi.amps)(0, 0).real();
}

double fidelity_pure(const StateVector& psi, const DensityOperator& rho) {
  return std::sqrt(std::max(0.0, overlap(psi, rho)));
}

double hs_distance(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("hs_distance: dimension mismatch");
  const Mat d = a - b;
  return (d * d).trace().real();
}

double hs_distance(const DensityOperator& a, const DensityOperator& b) {
  return hs_distance(a.mat, b.mat);
}

double von_neumann_entropy(const DensityOperator& rho, EntropyBase base) {
  return entropy_of_eigs(hermitian_eigvals(rho.mat), base);
}

double entropy_of_entanglement(const StateVector& psi, const std::vector<int>& side_a,
                               EntropyBase base) {
  return entropy_of_eigs(schmidt(psi, side_a), base);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

double concurrence_2q(const DensityOperator& rho) {
  require_two_qubits(rho.dims);
  const Mat yy = kron(pauli_y(), pauli_y());
  const Mat tilde = yy * rho.mat.conjugate() * yy;
  const Mat s = psd_sqrt(rho.mat);
  const Mat r = s * tilde * s;
  auto ev = hermitian_eigvals(0.5 * (r + r.adjoint()), 1e-6);
  std::vector<double> l;
  for (double e : ev) l.push_back(std::sqrt(std::max(0.0, e)));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence_pure(const StateVector& psi) {
  require_two_qubits(psi.dims);
  const auto lam = schmidt(psi, {0});
  if (lam.size() < 2) return 0.0;
  return 2.0 * std::sqrt(lam[0] * lam[1]);
}

double eof_from_concurrence(double c) {
  if (c < -1e-12 || c > 1.0 + 1e-12) throw std::invalid_argument("concurrence must lie in [0,1]");
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

Mat partial_transpose_side(const DensityOperator& rho, const std::vector<int>& side_a) {
  Mat m = rho.mat;
  for (int k : side_a) m = partial_transpose(m, rho.dims, k);
  return m;
}

double min_pt_eigenvalue(const DensityOperator& rho, const std::vector<int>& side_a) {
  return hermitian_eigvals(partial_transpose_side(rho, side_a), 1e-6).back();
}

double negativity(const DensityOperator& rho, const std::vector<int>& side_a) {
  int da = 1;
  for (int k : side_a) da *= rho.dims.at(k);
  const int db = total_dim(rho.dims) / da;
  const int d = std::min(da, db);
  if (d < 2) return 0.0;
  double trace_norm = 0.0;
  for (double e : hermitian_eigvals(partial_transpose_side(rho, side_a), 1e-6)) trace_norm += std::abs(e);
  return std::max(0.0, (trace_norm - 1.0) / (d - 1));
}

SeparabilityVerdict ppt_verdict(const DensityOperator& rho, const std::vector<int>& side_a, double tol) {
  SeparabilityVerdict v;
  v.min_pt_eigenvalue = min_pt_eigenvalue(rho, side_a);
  int da = 1;
  for (int k : side_a) da *= rho.dims.at(k);
  const int db = total_dim(rho.dims) / da;
  if (v.min_pt_eigenvalue < -tol)
    v.verdict = Verdict::Inseparable;
  else
    v.verdict = da * db <= 6 ? Verdict::Separable : Verdict::Unknown;
  if (rho.dims == Dims{2, 2}) v.w = w_determinants(rho);
  return v;
}

WDeterminants w_determinants(const DensityOperator& rho) {
  require_two_qubits(rho.dims);
  const Mat pt = partial_transpose(rho.mat, rho.dims, 1);
  WDeterminants w;
  w.w2 = pt.topLeftCorner(2, 2).determinant().real();
  w.w3 = pt.topLeftCorner(3, 3).determinant().real();
  w.w4 = pt.determinant().real();
  return w;
}

HerbertResult herbert_ensembles() {
  const double s = 1.0 / std::sqrt(2.0);
  const StateVector k00 = basis_state({2, 2}, 0), k11 = basis_state({2, 2}, 3);
  const StateVector pp = tensor(qubit(s, s), qubit(s, s));
  const StateVector mm = tensor(qubit(s, -s), qubit(s, -s));
  HerbertResult r;
  r.rho_z = {{2, 2}, 0.5 * (projector(k00).mat + projector(k11).mat)};
  r.rho_x = {{2, 2}, 0.5 * (projector(pp).mat + projector(mm).mat)};
  r.hs_gap = hs_distance(r.rho_x, r.rho_z);
  return r;
}

double herbert_gap_with(const MachineIsometry& cloner) {
  if (cloner.in_dims != Dims{2}) throw std::invalid_argument("herbert_gap_with: expects a qubit cloner");
  const StateVector singlet = bell_state(BellLabel::PsiMinus);
  const StateVector out = apply_local_isometry(singlet, cloner, 1);
  const DensityOperator rho = projector(out);
  const double s = 1.0 / std::sqrt(2.0);
  auto bob_ensemble = [&](const StateVector& e0, const StateVector& e1) {
    Mat acc = Mat::Zero(4, 4);
    for (const StateVector* e : {&e0, &e1}) {
      const Mat p = embed(projector(*e).mat, rho.dims, {0});
      const DensityOperator branch{rho.dims, p * rho.mat * p};
      acc += partial_trace(branch, {1, 2}).mat;
    }
    return acc;
  };
  const Mat rz = bob_ensemble(qubit(1, 0), qubit(0, 1));
  const Mat rx = bob_ensemble(qubit(s, s), qubit(s, -s));
  return hs_distance(rx, rz);
}

}  // namespace qclone
