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

#include "qclone/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qclone {

namespace {

std::vector<int> strides_of(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

void check_dims(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("empty subsystem list");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("subsystem dimension must be positive");
}

// old flat index for every new flat index under a subsystem permutation
std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int o : order) {
    if (o < 0 || o >= n || seen[o]) throw std::invalid_argument("invalid permutation");
    seen[o] = true;
  }
  Dims new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = dims[order[k]];
  const auto old_strides = strides_of(dims);
  const int total = total_dim(dims);
  std::vector<int> map(total);
  for (int idx = 0; idx < total; ++idx) {
    int rem = idx, old = 0;
    for (int k = n - 1; k >= 0; --k) {
      const int digit = rem % new_dims[k];
      rem /= new_dims[k];
      old += digit * old_strides[order[k]];
    }
    map[idx] = old;
  }
  return map;
}

// keep (sorted, original order) followed by the traced subsystems
std::vector<int> keep_first_order(const Dims& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("partial_trace: duplicate subsystem index");
  for (int k : sorted)
    if (k < 0 || k >= n) throw std::out_of_range("partial_trace: subsystem index out of range");
  std::vector<int> order = sorted;
  for (int k = 0; k < n; ++k)
    if (!std::binary_search(sorted.begin(), sorted.end(), k)) order.push_back(k);
  return order;
}

}  // namespace

int total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

StateVector make_state(Dims dims, Vec amps, double tol) {
  check_dims(dims);
  if (amps.size() != total_dim(dims)) throw std::invalid_argument("amplitude count does not match dims");
  if (!amps.allFinite()) throw std::invalid_argument("non-finite amplitude");
  if (std::abs(amps.squaredNorm() - 1.0) > tol) throw std::invalid_argument("state is not normalized");
  return {std::move(dims), std::move(amps)};
}

StateVector basis_state(Dims dims, int index) {
  check_dims(dims);
  Vec v = Vec::Zero(total_dim(dims));
  if (index < 0 || index >= v.size()) throw std::out_of_range("basis index out of range");
  v[index] = 1.0;
  return {std::move(dims), std::move(v)};
}

StateVector qubit(cplx alpha, cplx beta) {
  Vec v(2);
  v << alpha, beta;
  return make_state({2}, v);
}

StateVector qubit_from_alpha2(double alpha2, double phase) {
  if (alpha2 < 0.0 || alpha2 > 1.0) throw std::invalid_argument("alpha^2 must lie in [0,1]");
  return qubit(std::sqrt(alpha2), std::polar(std::sqrt(1.0 - alpha2), phase));
}

DensityOperator projector(const StateVector& psi) {
  return {psi.dims, psi.amps * psi.amps.adjoint()};
}

DensityOperator make_density(Dims dims, Mat mat, double tol) {
  check_dims(dims);
  const int n = total_dim(dims);
  if (mat.rows() != n || mat.cols() != n) throw std::invalid_argument("matrix size does not match dims");
  if (!is_hermitian(mat, tol)) throw std::invalid_argument("density operator is not Hermitian");
  if (std::abs(mat.trace() - cplx(1.0)) > tol) throw std::invalid_argument("density operator trace is not 1");
  if (hermitian_eigvals(mat, tol).back() < -tol) throw std::invalid_argument("density operator is not PSD");
  return {std::move(dims), std::move(mat)};
}

DensityOperator maximally_mixed(Dims dims) {
  const int n = total_dim(dims);
  return {std::move(dims), Mat::Identity(n, n) / static_cast<double>(n)};
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

Vec kron(const Vec& a, const Vec& b) {
  Vec r(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a[i] * b;
  return r;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Dims d = a.dims;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  return {std::move(d), kron(a.amps, b.amps)};
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Dims d = a.dims;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  return {std::move(d), kron(a.mat, b.mat)};
}

StateVector permute(const StateVector& psi, const std::vector<int>& order) {
  const auto map = permutation_map(psi.dims, order);
  StateVector out;
  for (int k : order) out.dims.push_back(psi.dims[k]);
  out.amps.resize(psi.amps.size());
  for (size_t i = 0; i < map.size(); ++i) out.amps[i] = psi.amps[map[i]];
  return out;
}

DensityOperator permute(const DensityOperator& rho, const std::vector<int>& order) {
  const auto map = permutation_map(rho.dims, order);
  DensityOperator out;
  for (int k : order) out.dims.push_back(rho.dims[k]);
  const int n = static_cast<int>(map.size());
  out.mat.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.mat(i, j) = rho.mat(map[i], map[j]);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  const auto order = keep_first_order(rho.dims, keep);
  const DensityOperator p = permute(rho, order);
  Dims kept(p.dims.begin(), p.dims.begin() + keep.size());
  const int dk = total_dim(kept);
  const int dr = static_cast<int>(p.mat.rows()) / dk;
  Mat r = Mat::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      cplx s = 0.0;
      for (int t = 0; t < dr; ++t) s += p.mat(i * dr + t, j * dr + t);
      r(i, j) = s;
    }
  return {std::move(kept), std::move(r)};
}

DensityOperator partial_trace(const StateVector& psi, const std::vector<int>& keep) {
  const auto order = keep_first_order(psi.dims, keep);
  const StateVector p = permute(psi, order);
  Dims kept(p.dims.begin(), p.dims.begin() + keep.size());
  const int dk = total_dim(kept);
  const int dr = static_cast<int>(p.amps.size()) / dk;
  // column-major dr x dk view: m(t, i) = amp[i*dr + t]
  Eigen::Map<const Mat> m(p.amps.data(), dr, dk);
  Mat r = m.transpose() * m.conjugate();
  return {std::move(kept), std::move(r)};
}

Mat partial_transpose(const Mat& rho, const Dims& dims, int subsystem) {
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw std::out_of_range("partial_transpose: subsystem index out of range");
  const int stride = strides_of(dims)[subsystem];
  const int d = dims[subsystem];
  const int n = static_cast<int>(rho.rows());
  Mat out(n, n);
  for (int a = 0; a < n; ++a) {
    const int da = (a / stride) % d;
    for (int b = 0; b < n; ++b) {
      const int db = (b / stride) % d;
      out(a, b) = rho(a + (db - da) * stride, b + (da - db) * stride);
    }
  }
  return out;
}

Mat partial_transpose(const DensityOperator& rho, int subsystem) {
  return partial_transpose(rho.mat, rho.dims, subsystem);
}

bool is_hermitian(const Mat& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<double> hermitian_eigvals(const Mat& m, double tol) {
  if (!is_hermitian(m, tol)) throw std::invalid_argument("hermitian_eigvals: matrix is not Hermitian");
  const Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::reverse(ev.begin(), ev.end());
  return ev;
}

Mat psd_sqrt(const Mat& m, double clamp) {
  const Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = ev[i] > clamp ? std::sqrt(ev[i]) : 0.0;
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double gram_min_eigenvalue(const Mat& gram) {
  const Mat h = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

Mat realize_gram(const GramSpec& spec, double tol) {
  const Mat& g = spec.gram;
  if (g.rows() != g.cols()) throw std::invalid_argument("Gram matrix must be square");
  if (!spec.labels.empty() && static_cast<Eigen::Index>(spec.labels.size()) != g.rows())
    throw std::invalid_argument("Gram label count does not match matrix size");
  if (!is_hermitian(g, tol)) throw std::invalid_argument("Gram matrix is not Hermitian");
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    if (std::abs(g(i, i).imag()) > tol || g(i, i).real() < -tol)
      throw std::invalid_argument("Gram diagonal must be real and non-negative");
  const Mat h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev[0] < -tol) {
    std::ostringstream msg;
    msg << "Gram matrix is not positive semidefinite (min eigenvalue " << ev[0] << ")";
    throw UnrealizableSpec(msg.str(), ev[0]);
  }
  const double scale = std::max(1.0, ev[ev.size() - 1]);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index r = ev.size() - 1; r >= 0; --r)
    if (ev[r] > tol * scale) cols.push_back(r);
  const Eigen::Index n = g.rows();
  Mat vecs = Mat::Zero(std::max<Eigen::Index>(1, static_cast<Eigen::Index>(cols.size())), n);
  for (size_t k = 0; k < cols.size(); ++k) {
    Vec u = es.eigenvectors().col(cols[k]);
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(u[i]) > 1e-12) {
        u *= std::conj(u[i]) / std::abs(u[i]);
        break;
      }
    // vector i gets component sqrt(ev) * conj(u_i) so that <v_j|v_i> = G_ji
    vecs.row(static_cast<Eigen::Index>(k)) = std::sqrt(ev[cols[k]]) * u.conjugate().transpose();
  }
  return vecs;
}

double isometry_defect(const MachineIsometry& v) {
  const Eigen::Index n = v.v.cols();
  return max_abs(v.v.adjoint() * v.v - Mat::Identity(n, n));
}

bool is_isometry(const MachineIsometry& v, double tol) {
  return v.v.rows() == total_dim(v.out_dims) && v.v.cols() == total_dim(v.in_dims) &&
         v.v.rows() >= v.v.cols() && isometry_defect(v) <= tol;
}

DensityOperator apply_isometry(const MachineIsometry& v, const DensityOperator& rho_in) {
  if (rho_in.dims != v.in_dims) throw std::invalid_argument("apply_isometry: input dims mismatch");
  return {v.out_dims, v.v * rho_in.mat * v.v.adjoint()};
}

StateVector apply_isometry(const MachineIsometry& v, const StateVector& psi) {
  if (psi.dims != v.in_dims) throw std::invalid_argument("apply_isometry: input dims mismatch");
  return {v.out_dims, v.v * psi.amps};
}

namespace {

Mat local_operator(const Dims& dims, const MachineIsometry& v, int first, Dims* out_dims) {
  const int k = static_cast<int>(v.in_dims.size());
  if (first < 0 || first + k > static_cast<int>(dims.size()))
    throw std::out_of_range("apply_local_isometry: target out of range");
  for (int i = 0; i < k; ++i)
    if (dims[first + i] != v.in_dims[i]) throw std::invalid_argument("apply_local_isometry: dims mismatch");
  const int left = total_dim(Dims(dims.begin(), dims.begin() + first));
  const int right = total_dim(Dims(dims.begin() + first + k, dims.end()));
  out_dims->assign(dims.begin(), dims.begin() + first);
  out_dims->insert(out_dims->end(), v.out_dims.begin(), v.out_dims.end());
  out_dims->insert(out_dims->end(), dims.begin() + first + k, dims.end());
  return kron(Mat::Identity(left, left), kron(v.v, Mat::Identity(right, right)));
}

}  // namespace

StateVector apply_local_isometry(const StateVector& psi, const MachineIsometry& v, int first) {
  Dims out;
  const Mat op = local_operator(psi.dims, v, first, &out);
  return {std::move(out), op * psi.amps};
}

DensityOperator apply_local_isometry(const DensityOperator& rho, const MachineIsometry& v, int first) {
  Dims out;
  const Mat op = local_operator(rho.dims, v, first, &out);
  return {std::move(out), op * rho.mat * op.adjoint()};
}

Mat embed(const Mat& op, const Dims& dims, const std::vector<int>& targets) {
  const int n = static_cast<int>(dims.size());
  Dims tdims;
  std::vector<bool> is_target(n, false);
  for (int t : targets) {
    if (t < 0 || t >= n || is_target[t]) throw std::invalid_argument("embed: invalid target list");
    is_target[t] = true;
    tdims.push_back(dims[t]);
  }
  if (op.rows() != total_dim(tdims) || op.cols() != op.rows())
    throw std::invalid_argument("embed: operator size mismatch");
  const auto strides = strides_of(dims);
  const auto tstrides = strides_of(tdims);
  const int total = total_dim(dims);
  // split each index into (target sub-index, rest-only flat index)
  std::vector<int> tidx(total), rest(total);
  for (int a = 0; a < total; ++a) {
    int ti = 0;
    int r = a;
    for (size_t k = 0; k < targets.size(); ++k) {
      const int digit = (a / strides[targets[k]]) % dims[targets[k]];
      ti += digit * tstrides[k];
      r -= digit * strides[targets[k]];
    }
    tidx[a] = ti;
    rest[a] = r;
  }
  Mat full = Mat::Zero(total, total);
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b)
      if (rest[a] == rest[b]) full(a, b) = op(tidx[a], tidx[b]);
  return full;
}

std::vector<double> schmidt(const StateVector& psi, const std::vector<int>& side_a) {
  const DensityOperator ra = partial_trace(psi, side_a);
  auto ev = hermitian_eigvals(ra.mat);
  const int da = total_dim(ra.dims);
  const int db = static_cast<int>(psi.amps.size()) / da;
  ev.resize(std::min(da, db));
  std::vector<double> out;
  for (double e : ev)
    if (e > 1e-14) out.push_back(e);
  if (out.empty()) out.push_back(0.0);
  return out;
}

StateVector bell_state(BellLabel b) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(4);
  switch (b) {
    case BellLabel::PhiPlus: v[0] = s; v[3] = s; break;
    case BellLabel::PhiMinus: v[0] = s; v[3] = -s; break;
    case BellLabel::PsiPlus: v[1] = s; v[2] = s; break;
    case BellLabel::PsiMinus: v[1] = s; v[2] = -s; break;
  }
  return {{2, 2}, v};
}

const char* bell_name(BellLabel b) {
  switch (b) {
    case BellLabel::PhiPlus: return "phi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
  }
  return "?";
}

BellOutcome bell_project(const DensityOperator& rho, int q1, int q2, BellLabel outcome) {
  const int n = static_cast<int>(rho.dims.size());
  if (q1 == q2) throw std::invalid_argument("bell_project: qubit indices must be distinct");
  if (q1 < 0 || q2 < 0 || q1 >= n || q2 >= n) throw std::out_of_range("bell_project: index out of range");
  if (rho.dims[q1] != 2 || rho.dims[q2] != 2) throw std::invalid_argument("bell_project: targets must be qubits");
  const Mat p = embed(projector(bell_state(outcome)).mat, rho.dims, {q1, q2});
  const Mat post = p * rho.mat * p;
  BellOutcome out;
  out.probability = std::max(0.0, post.trace().real());
  std::vector<int> keep;
  for (int k = 0; k < n; ++k)
    if (k != q1 && k != q2) keep.push_back(k);
  if (keep.empty()) throw std::invalid_argument("bell_project: nothing left after measurement");
  if (out.probability < 1e-14) {
    Dims kd;
    for (int k : keep) kd.push_back(rho.dims[k]);
    out.state = {kd, Mat::Zero(total_dim(kd), total_dim(kd))};
    return out;
  }
  out.valid = true;
  out.state = partial_trace(DensityOperator{rho.dims, post / out.probability}, keep);
  return out;
}

DensityOperator gram_reduce(const Dims& dims, const Mat& outs, const Mat& gram) {
  if (outs.rows() != total_dim(dims) || outs.cols() != gram.rows() || gram.rows() != gram.cols())
    throw std::invalid_argument("gram_reduce: size mismatch");
  return {dims, outs * gram.transpose() * outs.adjoint()};
}

MachineIsometry realize_machine(const GramMachine& m, double tol) {
  const Mat vecs = realize_gram(m.machine, tol);
  const int n_out = total_dim(m.out_dims);
  const int n_in = total_dim(m.in_dims);
  const int rank = static_cast<int>(vecs.rows());
  Mat v = Mat::Zero(static_cast<Eigen::Index>(n_out) * rank, n_in);
  for (size_t r = 0; r < m.branches.size(); ++r) v += kron(m.branches[r], Mat(vecs.col(r)));
  MachineIsometry out{m.in_dims, m.out_dims, std::move(v)};
  out.out_dims.push_back(rank);
  return out;
}

DensityOperator formal_apply(const GramMachine& m, const DensityOperator& rho) {
  if (rho.dims != m.in_dims) throw std::invalid_argument("formal_apply: input dims mismatch");
  const int n_out = total_dim(m.out_dims);
  Mat acc = Mat::Zero(n_out, n_out);
  const Mat& g = m.machine.gram;
  for (size_t r = 0; r < m.branches.size(); ++r) {
    const Mat left = m.branches[r] * rho.mat;
    for (size_t s = 0; s < m.branches.size(); ++s) {
      const cplx w = g(s, r);
      if (w != cplx(0.0)) acc += w * left * m.branches[s].adjoint();
    }
  }
  return {m.out_dims, acc};
}

GramMachine formal_tensor(const GramMachine& a, const GramMachine& b) {
  GramMachine t;
  t.in_dims = a.in_dims;
  t.in_dims.insert(t.in_dims.end(), b.in_dims.begin(), b.in_dims.end());
  t.out_dims = a.out_dims;
  t.out_dims.insert(t.out_dims.end(), b.out_dims.begin(), b.out_dims.end());
  t.machine.gram = kron(a.machine.gram, b.machine.gram);
  for (size_t r = 0; r < a.branches.size(); ++r)
    for (size_t s = 0; s < b.branches.size(); ++s) {
      const std::string la = r < a.machine.labels.size() ? a.machine.labels[r] : std::to_string(r);
      const std::string lb = s < b.machine.labels.size() ? b.machine.labels[s] : std::to_string(s);
      t.machine.labels.push_back(la + "*" + lb);
      t.branches.push_back(kron(a.branches[r], b.branches[s]));
    }
  return t;
}

GramMachine identity_machine(const Dims& dims) {
  const int n = total_dim(dims);
  return {dims, dims, {{"1"}, Mat::Identity(1, 1)}, {Mat::Identity(n, n)}};
}

double formal_isometry_defect(const GramMachine& m) {
  const int n_in = total_dim(m.in_dims);
  Mat acc = Mat::Zero(n_in, n_in);
  for (size_t r = 0; r < m.branches.size(); ++r)
    for (size_t s = 0; s < m.branches.size(); ++s)
      acc += m.machine.gram(s, r) * m.branches[s].adjoint() * m.branches[r];
  return max_abs(acc - Mat::Identity(n_in, n_in));
}

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

namespace {

Quadrature compute_gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // map [-1, 1] -> [0, 1]; x descends with i
    q.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    q.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

}  // namespace

const Quadrature& gauss_legendre_unit(int n) {
  if (n < 1) throw std::invalid_argument("quadrature needs at least one node");
  static std::mutex mu;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double integrate_unit(const std::function<double(double)>& f) {
  const Quadrature& q = gauss_legendre_unit(64);
  double sum = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * f(q.nodes[i]);
  return sum;
}

}  // namespace qclone
