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

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qclone {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Dims = std::vector<int>;

inline constexpr double kTol = 1e-9;

// Basis ordering everywhere: row-major, leftmost subsystem most significant.

struct StateVector {
  Dims dims;
  Vec amps;
};

struct DensityOperator {
  Dims dims;
  Mat mat;
};

// Columns of `v` are the images of the input basis vectors.
struct MachineIsometry {
  Dims in_dims;
  Dims out_dims;
  Mat v;
};

struct GramSpec {
  std::vector<std::string> labels;
  Mat gram;
};

struct BlankState {
  double m1 = 1.0;
  cplx m2 = 0.0;
};

class UnrealizableSpec : public std::runtime_error {
 public:
  UnrealizableSpec(const std::string& what, double min_eig)
      : std::runtime_error(what), min_eigenvalue(min_eig) {}
  double min_eigenvalue;
};

int total_dim(const Dims& dims);

StateVector make_state(Dims dims, Vec amps, double tol = kTol);
StateVector basis_state(Dims dims, int index);
StateVector qubit(cplx alpha, cplx beta);
// alpha = sqrt(alpha2), beta = sqrt(1 - alpha2) * e^{i phase}.
StateVector qubit_from_alpha2(double alpha2, double phase = 0.0);
DensityOperator projector(const StateVector& psi);
DensityOperator make_density(Dims dims, Mat mat, double tol = kTol);
DensityOperator maximally_mixed(Dims dims);

Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);
StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

// Kept subsystems stay in ascending order whatever the order of `keep`.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);
// Reduced state of a pure ket without forming the full projector.
DensityOperator partial_trace(const StateVector& psi, const std::vector<int>& keep);
Mat partial_transpose(const Mat& rho, const Dims& dims, int subsystem);
Mat partial_transpose(const DensityOperator& rho, int subsystem);

// Reorders subsystems: new subsystem k is old subsystem order[k].
StateVector permute(const StateVector& psi, const std::vector<int>& order);
DensityOperator permute(const DensityOperator& rho, const std::vector<int>& order);

// Descending real eigenvalues; throws on non-Hermitian input.
std::vector<double> hermitian_eigvals(const Mat& m, double tol = kTol);
// Hermitian square root with eigenvalues clamped at zero.
Mat psd_sqrt(const Mat& m, double clamp = 1e-12);

bool is_hermitian(const Mat& m, double tol = kTol);
double max_abs(const Mat& m);

// Columns of the returned matrix are the realized vectors, of dimension rank(gram).
Mat realize_gram(const GramSpec& spec, double tol = kTol);
// Smallest eigenvalue of the Gram; negative means unrealizable.
double gram_min_eigenvalue(const Mat& gram);

bool is_isometry(const MachineIsometry& v, double tol = kTol);
double isometry_defect(const MachineIsometry& v);
DensityOperator apply_isometry(const MachineIsometry& v, const DensityOperator& rho_in);
StateVector apply_isometry(const MachineIsometry& v, const StateVector& psi);
// Applies `v` to the contiguous subsystems [first, first + v.in_dims.size()),
// splicing v.out_dims in their place.
StateVector apply_local_isometry(const StateVector& psi, const MachineIsometry& v, int first);
DensityOperator apply_local_isometry(const DensityOperator& rho, const MachineIsometry& v,
                                     int first);
// Full operator acting as `op` on the listed subsystems (in that order).
Mat embed(const Mat& op, const Dims& dims, const std::vector<int>& targets);

// Schmidt coefficients lambda_i (squares of singular values), descending.
std::vector<double> schmidt(const StateVector& psi, const std::vector<int>& side_a);

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
StateVector bell_state(BellLabel b);
const char* bell_name(BellLabel b);

struct BellOutcome {
  double probability = 0.0;
  bool valid = false;
  DensityOperator state;  // remaining subsystems, original order
};
BellOutcome bell_project(const DensityOperator& rho, int q1, int q2, BellLabel outcome);

// Output state when the ket carries non-orthogonal machine labels:
// |Psi> = sum_i |out_i>|m_i>, rho = sum_ij <m_j|m_i> |out_i><out_j|.
// The Gram need not be realizable; the formula is applied formally.
DensityOperator gram_reduce(const Dims& dims, const Mat& outs, const Mat& gram);

// A machine written the way transformations are usually displayed:
// |in> -> sum_r B_r|in> (x) |m_r>, with the machine vectors known only through
// their Gram matrix. branches[r] maps the input space into the output system.
struct GramMachine {
  Dims in_dims;
  Dims out_dims;  // output system only, machine excluded
  GramSpec machine;
  std::vector<Mat> branches;
};

// Concrete isometry; the machine becomes one trailing subsystem of dimension
// rank(gram). Throws UnrealizableSpec when the Gram is not PSD.
MachineIsometry realize_machine(const GramMachine& m, double tol = kTol);
// sum_rs <m_s|m_r> B_r rho B_s^dagger, evaluated without realizing the vectors.
DensityOperator formal_apply(const GramMachine& m, const DensityOperator& rho);
// Independent machines acting side by side; the Gram is the Kronecker product.
GramMachine formal_tensor(const GramMachine& a, const GramMachine& b);
// Trivial machine used to leave subsystems untouched inside formal_tensor.
GramMachine identity_machine(const Dims& dims);
// Largest deviation of sum_rs G_sr B_s^dagger B_r from the identity.
double formal_isometry_defect(const GramMachine& m);

// Gauss-Legendre rule mapped to [0, 1]; nodes ascending.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Quadrature& gauss_legendre_unit(int n = 64);
// Integral of f over [0, 1] with the 64-node rule.
double integrate_unit(const std::function<double(double)>& f);

Mat pauli_x();
Mat pauli_y();
Mat pauli_z();

}  // namespace qclone
